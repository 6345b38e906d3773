#include <random>

#include "adx/error.hpp"
#include "adx/stats.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace adx;

namespace {

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> d(0, levels - 1);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("identical samples") {
    const std::vector<double> a{3, 1, 4, 1, 5};
    const auto r = mann_whitney_u(a, a);
    CHECK(r.p_value == 1.0);
    CHECK(r.method == UTestMethod::Exact);
    std::vector<double> big(30);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = double(i % 7);
    const auto approx = mann_whitney_u(big, big);
    CHECK(approx.method == UTestMethod::NormalApproximation);
    CHECK(approx.p_value == 1.0);
  }

  TEST_CASE("fully separated samples of three") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    const auto r = mann_whitney_u(a, b);
    CHECK(r.u == 0.0);
    CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.n_a == 3);
    CHECK(r.n_b == 3);
  }

  TEST_CASE("empty sample") {
    const std::vector<double> a{1.0}, none;
    CHECK_THROWS_AS(mann_whitney_u(a, none), Error);
    CHECK_THROWS_AS(mann_whitney_u(none, a), Error);
  }

  TEST_CASE("method selection") {
    std::vector<double> eight(8, 1.0), nine(9, 2.0);
    CHECK(mann_whitney_u(eight, eight).method == UTestMethod::Exact);
    CHECK(mann_whitney_u(eight, nine).method == UTestMethod::NormalApproximation);
  }

  TEST_CASE("exact p equals full enumeration") {
    std::mt19937_64 rng(1);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t m = 1; m <= 6; ++m) {
        for (int rep = 0; rep < 6; ++rep) {
          const auto a = draw(rng, n, rep % 2 ? 4 : 100);
          const auto b = draw(rng, m, rep % 2 ? 4 : 100);
          const auto r = mann_whitney_u(a, b);
          CHECK(r.u == oracle::u_statistic(a, b));
          CHECK(std::abs(r.p_value - oracle::exact_u_p(a, b)) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("swapping samples") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 50; ++rep) {
      const auto a = draw(rng, 1 + rep % 15, 10);
      const auto b = draw(rng, 1 + rep % 11, 10);
      const auto ab = mann_whitney_u(a, b);
      const auto ba = mann_whitney_u(b, a);
      CHECK(ab.u + ba.u == double(a.size() * b.size()));
      CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
      CHECK(ab.p_value > 0.0);
      CHECK(ab.p_value <= 1.0);
    }
  }

  TEST_CASE("approximation tracks a permutation reference") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> x(0.0, 1.0), y(0.6, 1.0);
    std::vector<double> a(20), b(20);
    for (auto& v : a) v = x(rng);
    for (auto& v : b) v = y(rng);
    const auto r = mann_whitney_u(a, b);
    CHECK(r.method == UTestMethod::NormalApproximation);
    CHECK(std::abs(r.p_value - oracle::permutation_u_p(a, b, 200000, 9)) < 0.01);
  }
}
