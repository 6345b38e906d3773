#include <cmath>
#include <limits>

#include "adx/error.hpp"
#include "adx/history.hpp"
#include "adx/timeutil.hpp"
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

TEST_SUITE("history") {
  TEST_CASE("a single commit") {
    SnapshotBuilder b(10);
    b.commit({4});
    const auto s = b.build();
    const auto c = churn_stats(s);
    for (auto [p, frac] : c.concentration) CHECK(frac == 0.1);
    CHECK(churn_concentration(s, 0.01) == 0.1);
    CHECK(c.files_touched == 1);
    CHECK(c.never_changed == 10);
  }

  TEST_CASE("creator-only files") {
    SnapshotBuilder b(4);
    b.commit({0, 1}, "ann");
    b.commit({0}, "ann");
    b.commit({2, 3}, "bob");
    const auto c = churn_stats(b.build());
    CHECK(c.single_contributor_fraction == 1.0);
    CHECK(c.files_with_history == 4);
    b.commit({3}, "cid");
    CHECK(churn_stats(b.build()).single_contributor_fraction == 0.75);
  }

  TEST_CASE("no history") {
    CHECK(code_of([] { churn_stats(SnapshotBuilder(3).build()); }) == ErrorCode::EmptyHistory);
  }

  TEST_CASE("per-file and per-commit churn") {
    SnapshotBuilder b(3);
    b.commit({0, 1}, "dev", std::nullopt, "x", 5, 2);
    b.commit({1}, "dev", std::nullopt, "x", 1, 1);
    const auto c = churn_stats(b.build());
    CHECK(c.file_churn == std::vector<std::uint64_t>{7, 9, 0});
    CHECK(c.commit_churn == std::vector<std::uint64_t>{14, 2});
  }

  TEST_CASE("churn statistics equal the sort-and-scan oracle") {
    Rng rng(1);
    const auto s = history_fixture(rng).build();
    REQUIRE(s.commits().size() == 1000);
    const auto c = churn_stats(s);
    double last = 0.0;
    for (auto [p, frac] : c.concentration) {
      CHECK(frac == oracle::concentration(s, p));
      CHECK(frac >= last);
      last = frac;
    }
    CHECK(c.concentration.back().second == double(c.files_touched) / double(s.size()));
    for (double p : {0.003, 0.1, 0.333, 0.9}) CHECK(churn_concentration(s, p) == oracle::concentration(s, p));
    CHECK(c.never_changed_fraction == oracle::never_changed_fraction(s));
    CHECK(c.single_contributor_fraction == oracle::single_contributor_fraction(s));
    CHECK(c.never_changed_fraction >= 0.0);
    CHECK(c.never_changed_fraction <= 1.0);
  }

  TEST_CASE("identical and disjoint windows") {
    SnapshotBuilder b(4);
    b.releases = {{"r1", kEpoch}, {"r2", kEpoch + 10 * kDay}, {"r3", kEpoch + 20 * kDay},
                  {"r4", kEpoch + 30 * kDay}};
    b.commit({0, 1}, "dev", kEpoch + 1 * kDay);
    b.commit({0, 1}, "dev", kEpoch + 11 * kDay);
    b.commit({2, 3}, "dev", kEpoch + 21 * kDay);
    const auto o = release_overlap(b.build());
    REQUIRE(o.windows.size() == 3);
    CHECK(o.window_names[0] == "r1..r2");
    CHECK(o.jaccard[0][1] == 1.0);
    CHECK(o.jaccard[0][2] == 0.0);
    CHECK(o.jaccard[1][1] == 1.0);
    CHECK(o.min_normalized[1][2] == 0.0);
    CHECK(*o.mean_nonconsecutive_jaccard == 0.0);
    CHECK(*o.mean_all_jaccard == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("window bounds are (release, next release]") {
    SnapshotBuilder b(3);
    b.releases = {{"a", kEpoch}, {"b", kEpoch + kDay}};
    b.commit({0}, "dev", kEpoch);
    b.commit({1}, "dev", kEpoch + kDay);
    b.commit({2}, "dev", kEpoch + kDay + 1);
    const auto o = release_overlap(b.build());
    CHECK(o.windows[0] == std::vector<FileId>{1});
    CHECK_FALSE(o.mean_all_jaccard);
  }

  TEST_CASE("fewer than two releases") {
    SnapshotBuilder b(2);
    b.commit({0});
    b.releases = {{"only", kEpoch}};
    CHECK(code_of([&] { release_overlap(b.build()); }) == ErrorCode::InsufficientReleases);
  }

  TEST_CASE("overlap equals the set-intersection oracle") {
    Rng rng(2);
    const auto s = history_fixture(rng).build();
    const auto o = release_overlap(s);
    const auto ref = oracle::release_overlap(s);
    REQUIRE(o.jaccard.size() == ref.jaccard.size());
    for (std::size_t i = 0; i < o.jaccard.size(); ++i) {
      for (std::size_t j = 0; j < o.jaccard.size(); ++j) {
        CHECK(o.jaccard[i][j] == ref.jaccard[i][j]);
        CHECK(o.jaccard[i][j] == o.jaccard[j][i]);
        CHECK(o.min_normalized[i][j] == o.min_normalized[j][i]);
        CHECK(o.min_normalized[i][j] >= o.jaccard[i][j]);
      }
      if (!o.windows[i].empty()) CHECK(o.jaccard[i][i] == 1.0);
    }
    CHECK(*o.mean_nonconsecutive_jaccard == doctest::Approx(ref.mean_nonconsecutive).epsilon(1e-12));
    CHECK(*o.mean_all_jaccard == doctest::Approx(ref.mean_all).epsilon(1e-12));
  }

  TEST_CASE("a ten-day bug") {
    SnapshotBuilder b(2);
    b.issue("SM-1", IssueKind::Bug, kEpoch, kEpoch + 10 * kDay, IssueStatus::Fixed);
    b.commit({0}, "dev", kEpoch + kDay, "SM-1 fix", 102, 0);
    b.link_by_message();
    const auto st = issue_stats(b.build());
    REQUIRE(st.fixed_samples.size() == 1);
    CHECK(st.fixed_samples[0].churn == 102);
    CHECK(*st.fixed_samples[0].duration_days == 10.0);
    CHECK(*st.mean_churn == 102.0);
    CHECK(*st.mean_duration_days == 10.0);
  }

  TEST_CASE("an unlinked issue") {
    SnapshotBuilder b(2);
    b.issue("SM-1", IssueKind::Bug, kEpoch, kEpoch + 2 * kDay, IssueStatus::Fixed);
    b.commit({0}, "dev", kEpoch + kDay, "unrelated", 5, 0);
    b.link_by_message();
    const auto st = issue_stats(b.build());
    CHECK(st.opened == 1);
    CHECK(st.fixed == 1);
    CHECK(st.fixed_samples[0].churn == 0);
    CHECK(st.changed_code == 0);
    CHECK_FALSE(st.mean_churn);
    CHECK(st.churn_sample().empty());
    CHECK(st.duration_sample() == std::vector<double>{2.0});
  }

  TEST_CASE("empty window") {
    Rng rng(3);
    const auto s = history_fixture(rng, 30, 50, 40).build();
    TimeWindow w{kEpoch - 10 * kDay, kEpoch - 5 * kDay};
    const auto st = issue_stats(s, w);
    CHECK(st.opened == 0);
    CHECK(st.fixed == 0);
    CHECK_FALSE(st.mean_duration_days);
  }

  TEST_CASE("issue statistics equal the join oracle") {
    Rng rng(4);
    const auto s = history_fixture(rng).build();
    const std::vector<std::pair<UnixSeconds, UnixSeconds>> windows{
        {kEpoch, kEpoch + 120 * kDay},
        {kEpoch + 100 * kDay, kEpoch + 400 * kDay},
        {std::numeric_limits<UnixSeconds>::min(), std::numeric_limits<UnixSeconds>::max()}};
    for (auto [from, to] : windows) {
      for (bool bugs : {false, true}) {
        std::set<IssueKind> kinds;
        if (bugs) kinds = {IssueKind::Bug};
        const auto st = issue_stats(s, TimeWindow{from, to}, kinds);
        const auto ref = oracle::issue_join(s, from, to, bugs);
        CHECK(st.opened == ref.opened);
        CHECK(st.fixed == ref.fixed);
        CHECK(st.changed_code == ref.changed);
        CHECK(st.mean_churn.value_or(0.0) == doctest::Approx(ref.mean_churn).epsilon(1e-12));
        CHECK(st.mean_duration_days.value_or(0.0) ==
              doctest::Approx(ref.mean_days).epsilon(1e-12));
        for (const auto& sample : st.fixed_samples)
          if (sample.duration_days) CHECK(*sample.duration_days >= 0.0);
      }
    }
  }

  TEST_CASE("time windows") {
    const auto w = parse_time_window("2017-07-01..2017-08-01");
    CHECK(w.from == parse_iso8601("2017-07-01"));
    CHECK(w.contains(kEpoch));
    CHECK_FALSE(w.contains(*parse_iso8601("2017-08-01")));
    CHECK_FALSE(parse_time_window("..2017-08-01").from);
    CHECK_FALSE(parse_time_window("2017-07-01..").to);
    CHECK(code_of([] { parse_time_window("2017-07-01"); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { parse_time_window("x..y"); }) == ErrorCode::InvalidArgument);
  }
}
