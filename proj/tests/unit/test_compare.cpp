#include <cmath>

#include "adx/compare.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace adx;
using namespace adx::testing;

TEST_SUITE("compare") {
  TEST_CASE("percent change") {
    const auto m = compare_values("x", "x", MetricUnit::Lines, 102.0, 33.9);
    CHECK(*m.delta == doctest::Approx(-68.1));
    CHECK(*m.percent == doctest::Approx(-66.7647).epsilon(1e-4));
    CHECK(*compare_values("x", "x", MetricUnit::Days, 10.74, 7.31).percent ==
          doctest::Approx(-31.9367).epsilon(1e-4));
    CHECK_FALSE(compare_values("x", "x", MetricUnit::Count, 0.0, 3.0).percent);
    CHECK(*compare_values("x", "x", MetricUnit::Count, 0.0, 3.0).delta == 3.0);
    CHECK_FALSE(compare_values("x", "x", MetricUnit::Count, std::nullopt, 3.0).delta);
  }

  TEST_CASE("seeded maintainability figures") {
    const auto r = compare_snapshots(seeded_before(), seeded_after());
    CHECK(r.before_label == "before");
    const auto* churn = r.find("churn_per_bug");
    REQUIRE(churn);
    CHECK(*churn->before == 102.0);
    CHECK(*churn->after == doctest::Approx(33.9));
    CHECK(std::abs(*churn->percent - -66.8) <= 0.1);
    const auto* days = r.find("bug_fix_days");
    REQUIRE(days);
    CHECK(*days->before == doctest::Approx(10.74));
    CHECK(*days->after == doctest::Approx(7.31));
    CHECK(std::abs(*days->percent - -31.9) <= 0.1);
    REQUIRE(churn->test);
    CHECK(churn->test->method == UTestMethod::NormalApproximation);
    CHECK(churn->test->n_a == 2);
    CHECK(churn->test->n_b == 10);
    CHECK(*r.find("bugs_fixed")->before == 2.0);
    CHECK(*r.find("bugs_fixed")->after == 10.0);
  }

  TEST_CASE("metric inventory") {
    const auto r = compare_snapshots(seeded_before(), seeded_after());
    for (const char* id : {"files", "issues_opened", "issues_fixed", "bugs_opened", "bugs_fixed",
                           "churn_per_issue", "days_per_issue", "churn_per_bug", "bug_fix_days",
                           "dl", "pc", "roots", "clique_count", "clique_files",
                           "package_cycle_count", "unstable_interface_files"}) {
      CAPTURE(id);
      CHECK(r.find(id));
    }
    CHECK_FALSE(r.find("nonsense"));
    CHECK(r.find("pc")->unit == MetricUnit::Percent);
    CHECK(r.find("clique_count")->label == "# of cliques");
  }

  TEST_CASE("identical snapshots") {
    Rng rng(1);
    const auto s = history_fixture(rng, 60, 300, 80).build();
    const auto r = compare_snapshots(s, s);
    for (const auto& m : r.metrics) {
      CAPTURE(m.id);
      if (m.delta) CHECK(*m.delta == 0.0);
      if (m.percent) CHECK(*m.percent == 0.0);
      if (m.test) CHECK(m.test->p_value == 1.0);
    }
    CHECK(r.find("churn_per_issue")->test);
  }
}
