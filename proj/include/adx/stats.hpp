#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace adx {

enum class UTestMethod { Exact, NormalApproximation };

std::string_view to_string(UTestMethod method);

struct UTestResult {
  double u = 0.0;  // U statistic of sample_a (midranks for ties)
  double p_value = 1.0;  // two-sided
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  UTestMethod method = UTestMethod::Exact;
};

inline constexpr std::size_t kExactUTestLimit = 8;

// Two-sided Mann-Whitney U test. Exact permutation distribution (ties
// handled through midranks) when both samples have at most
// kExactUTestLimit values; otherwise the normal approximation with tie and
// continuity corrections. Throws EmptySample.
UTestResult mann_whitney_u(std::span<const double> sample_a,
                           std::span<const double> sample_b);

// Forces a method regardless of sample sizes.
UTestResult mann_whitney_u(std::span<const double> sample_a,
                           std::span<const double> sample_b,
                           UTestMethod method);

}  // namespace adx
