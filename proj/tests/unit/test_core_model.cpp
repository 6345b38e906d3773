#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>

#include "adx/cochange.hpp"
#include "adx/error.hpp"
#include "adx/snapshot.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace adx;
using namespace adx::testing;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("core-model") {
  TEST_CASE("two files and one edge") {
    SnapshotBuilder b(2);
    b.edge(0, 1);
    const auto s = b.build();
    CHECK(s.size() == 2);
    CHECK(s.graph().edges().size() == 1);
    CHECK(s.files()[0].id == 0);
    CHECK(s.files()[1].id == 1);
  }

  TEST_CASE("self dependency is rejected") {
    SnapshotBuilder b(2);
    b.edge(0, 0);
    CHECK(code_of([&] { b.build(); }) == ErrorCode::SelfDependency);
  }

  TEST_CASE("duplicate paths and dangling edges are rejected") {
    SnapshotBuilder b(2);
    b.files.push_back(b.files[0]);
    CHECK(code_of([&] { b.build(); }) == ErrorCode::DuplicatePath);

    SnapshotBuilder c(2);
    c.deps.push_back({SnapshotBuilder::name(0), "missing.java", "Call", 1});
    CHECK(code_of([&] { c.build(); }) == ErrorCode::DanglingEdgeEndpoint);
  }

  TEST_CASE("history-only paths become files") {
    SnapshotBuilder b(3);
    b.edge(0, 1);
    auto& c = b.commit({0});
    c.numstat.push_back({2, 1, false, "deleted/Gone.java", std::nullopt});
    c.numstat.push_back({0, 0, true, "img/logo.png", std::nullopt});
    const auto s = b.build();
    CHECK(s.size() == 3 + 2);
    REQUIRE(s.find("deleted/Gone.java"));
    CHECK(s.file(*s.find("deleted/Gone.java")).package == "deleted");
    CHECK(s.file(*s.find("img/logo.png")).creator == "dev");
  }

  TEST_CASE("duplicate typed edges merge their weights") {
    SnapshotBuilder b(2);
    b.edge(0, 1, "Call", 2);
    b.edge(0, 1, "Call", 3);
    b.edge(0, 1, "Use", 1);
    const auto s = b.build();
    REQUIRE(s.graph().edges().size() == 2);
    CHECK(s.graph().edges()[0].weight == 5);
  }

  TEST_CASE("unknown dependency kinds map to Other") {
    SnapshotBuilder b(2);
    b.edge(0, 1, "Annotate");
    CHECK(b.build().graph().edges()[0].kind == DependencyKind::Other);
  }

  TEST_CASE("package defaults to the directory") {
    CHECK(default_package("src/a/B.java") == "src/a");
    CHECK(default_package("Top.java") == ".");
    const std::vector<FileSpec> files{{"x/y/Z.java", std::nullopt}, {"x/W.java", "explicit"}};
    const auto s = build_snapshot(files, {}, {}, {}, {}, "t");
    CHECK(s.file(*s.find("x/y/Z.java")).package == "x/y");
    CHECK(s.file(*s.find("x/W.java")).package == "explicit");
  }

  TEST_CASE("ids follow sorted paths whatever the input order") {
    Rng rng(7);
    SnapshotBuilder b(30);
    const auto g = random_digraph(rng, 30, 0.1);
    for (auto [s, t] : g.edges) b.edge(s, t);
    random_history(rng, b, 40, 4);
    const auto reference = b.build();

    for (int round = 0; round < 5; ++round) {
      auto shuffled = b;
      std::shuffle(shuffled.files.begin(), shuffled.files.end(), rng);
      std::shuffle(shuffled.deps.begin(), shuffled.deps.end(), rng);
      const auto s = shuffled.build();
      CHECK(s.files() == reference.files());
      CHECK(s.graph() == reference.graph());
      CHECK(s.commits() == reference.commits());
    }
  }

  TEST_CASE("renames unify to the newest path") {
    SnapshotBuilder b(1);
    RawCommitRecord c1{"h1", "ann", kEpoch, "add", {{10, 0, false, "src/old/A.java", {}}}, {}};
    RawCommitRecord c2{"h2", "bob", kEpoch + 10, "move",
                       {{1, 1, false, "src/new/A.java", "src/old/A.java"}}, {}};
    RawCommitRecord c3{"h3", "bob", kEpoch + 20, "edit", {{4, 0, false, "src/new/A.java", {}}}, {}};
    // Input order differs from time order.
    b.commits = {c3, c1, c2};
    const auto s = b.build();
    CHECK(s.size() == 2);
    CHECK_FALSE(s.find("src/old/A.java"));
    const auto id = *s.find("src/new/A.java");
    std::uint64_t churn = 0;
    for (const auto& c : s.commits())
      for (const auto& ch : c.changes)
        if (ch.file == id) churn += ch.churn();
    CHECK(churn == 16);
    CHECK(s.file(id).creator == "ann");
  }

  TEST_CASE("total churn is the sum over commits") {
    Rng rng(3);
    SnapshotBuilder b(20);
    random_history(rng, b, 100, 5);
    const auto s = b.build();
    std::uint64_t sum = 0;
    for (const auto& c : b.commits)
      for (const auto& e : c.numstat) sum += e.added + e.deleted;
    CHECK(s.total_churn() == sum);
  }

  TEST_CASE("co-change counts the commits sharing both files") {
    SnapshotBuilder b(3);
    b.commit({0, 1});
    b.commit({0, 1});
    b.commit({0, 2});
    const auto m = cochange_matrix(b.build());
    CHECK(m.count(0, 1) == 2);
    CHECK(m.count(0, 2) == 1);
    CHECK(m.count(1, 2) == 0);
    CHECK(m.count(1, 0) == 2);
    CHECK(m.count(1, 1) == 0);
    CHECK(m.pair_count() == 2);
  }

  TEST_CASE("empty history gives an empty matrix") {
    const auto m = cochange_matrix(SnapshotBuilder(4).build());
    CHECK(m.empty());
  }

  TEST_CASE("co-change equals pair enumeration on 500 random commits") {
    Rng rng(11);
    SnapshotBuilder b(60);
    random_history(rng, b, 500, 8);
    const auto s = b.build();
    const auto m = cochange_matrix(s);
    CHECK(m == cochange_matrix_serial(s));
    const auto oracle = oracle::cochange_pairs(s);
    std::size_t stored = 0;
    for (FileId f = 0; f < s.size(); ++f) {
      for (const auto& p : m.partners(f)) {
        CHECK(p.count == oracle::pair_count(oracle, f, p.file));
        CHECK(m.count(p.file, f) == p.count);
        ++stored;
      }
    }
    CHECK(stored == 2 * oracle.size());
  }

  TEST_CASE("commit size cap drops large commits") {
    SnapshotBuilder b(5);
    b.commit({0, 1});
    b.commit({0, 1, 2, 3, 4});
    const auto s = b.build();
    CHECK(cochange_matrix(s).count(0, 1) == 2);
    CHECK(cochange_matrix(s, 4).count(0, 1) == 1);
    CHECK(cochange_matrix(s, 4).count(2, 3) == 0);
    CHECK(code_of([&] { cochange_matrix(s, 1); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("snapshot JSON round trip") {
    Rng rng(5);
    SnapshotBuilder b(15);
    for (auto [s, t] : random_digraph(rng, 15, 0.2).edges) b.edge(s, t, "Use", 2);
    random_history(rng, b, 30, 3);
    b.issue("SM-1", IssueKind::Bug, kEpoch, kEpoch + kDay, IssueStatus::Fixed);
    b.issue("SM-2", IssueKind::Feature, kEpoch, std::nullopt, IssueStatus::Open);
    b.commits[0].message = "SM-1 fix";
    b.link_by_message();
    b.releases = {{"v1", kEpoch}, {"v2", kEpoch + 10 * kDay}};
    const auto s = b.build("round");

    const auto doc = snapshot_to_json(s);
    CHECK(doc["schema_version"] == "1");
    CHECK(snapshot_from_json(nlohmann::json::parse(doc.dump())) == s);

    const auto path = (std::filesystem::temp_directory_path() / "adx_roundtrip.json").string();
    save_snapshot(s, path);
    CHECK(load_snapshot(path) == s);
    std::filesystem::remove(path);
  }

  TEST_CASE("malformed snapshot documents are rejected") {
    CHECK(code_of([] { snapshot_from_json(nlohmann::json::parse(R"({"files": 3})")); }) ==
          ErrorCode::InvalidSnapshot);
    auto doc = nlohmann::json::parse(snapshot_to_json(SnapshotBuilder(2).build()).dump());
    doc["schema_version"] = "99";
    CHECK(code_of([&] { snapshot_from_json(doc); }) == ErrorCode::InvalidSnapshot);
  }
}
