#include "adx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

#include "adx/error.hpp"

namespace adx {
namespace {

struct Ranked {
  // Twice the midrank of each pooled value (integers), sample a first.
  std::vector<std::int64_t> doubled_ranks;
  // Sum over tie groups of t^3 - t.
  double tie_term = 0.0;
};

Ranked midranks(std::span<const double> a, std::span<const double> b) {
  const std::size_t total = a.size() + b.size();
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(total);
  for (std::size_t i = 0; i < a.size(); ++i) pooled.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], a.size() + i);
  std::sort(pooled.begin(), pooled.end());

  Ranked r;
  r.doubled_ranks.resize(total);
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j + 1 < total && pooled[j + 1].first == pooled[i].first) ++j;
    const auto doubled = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) r.doubled_ranks[pooled[k].second] = doubled;
    const double t = static_cast<double>(j - i + 1);
    r.tie_term += t * t * t - t;
    i = j + 1;
  }
  return r;
}

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::EmptySample, "Mann-Whitney U needs two non-empty samples");
  }
  for (double v : a) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "NaN in sample");
  }
  for (double v : b) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "NaN in sample");
  }
}

// Permutation distribution of the doubled rank sum of a size-n subset,
// counted by dynamic programming over the pooled values.
double exact_p(const Ranked& r, std::size_t n, std::int64_t observed) {
  const std::size_t total = r.doubled_ranks.size();
  const std::int64_t max_sum =
      std::accumulate(r.doubled_ranks.begin(), r.doubled_ranks.end(), std::int64_t{0});
  std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t i = 0; i < total; ++i) {
    const auto v = r.doubled_ranks[i];
    for (std::size_t k = std::min(n, i + 1); k >= 1; --k) {
      auto& dst = ways[k];
      const auto& src = ways[k - 1];
      for (std::int64_t s = max_sum; s >= v; --s) dst[s] += src[s - v];
    }
  }
  const auto center = static_cast<std::int64_t>(n * (total + 1));
  const auto deviation = std::llabs(observed - center);
  double extreme = 0.0;
  double all = 0.0;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    all += ways[n][s];
    if (std::llabs(s - center) >= deviation) extreme += ways[n][s];
  }
  return std::min(1.0, extreme / all);
}

}  // namespace

std::string_view to_string(UTestMethod method) {
  return method == UTestMethod::Exact ? "exact" : "normal-approximation";
}

UTestResult mann_whitney_u(std::span<const double> sample_a,
                           std::span<const double> sample_b) {
  const bool small =
      sample_a.size() <= kExactUTestLimit && sample_b.size() <= kExactUTestLimit;
  return mann_whitney_u(sample_a, sample_b,
                        small ? UTestMethod::Exact : UTestMethod::NormalApproximation);
}

UTestResult mann_whitney_u(std::span<const double> sample_a,
                           std::span<const double> sample_b, UTestMethod method) {
  check_samples(sample_a, sample_b);
  const std::size_t n = sample_a.size();
  const std::size_t m = sample_b.size();
  const auto ranked = midranks(sample_a, sample_b);
  std::int64_t doubled_sum = 0;
  for (std::size_t i = 0; i < n; ++i) doubled_sum += ranked.doubled_ranks[i];

  UTestResult result;
  result.n_a = n;
  result.n_b = m;
  result.method = method;
  result.u = static_cast<double>(doubled_sum - static_cast<std::int64_t>(n * (n + 1))) / 2.0;

  if (method == UTestMethod::Exact) {
    result.p_value = exact_p(ranked, n, doubled_sum);
    return result;
  }

  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double total = nd + md;
  const double mean = nd * md / 2.0;
  const double variance =
      nd * md / 12.0 * ((total + 1.0) - ranked.tie_term / (total * (total - 1.0)));
  if (variance <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double z = (std::abs(result.u - mean) - 0.5) / std::sqrt(variance);
  if (z <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  result.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)),
                              std::numeric_limits<double>::min(), 1.0);
  return result;
}

}  // namespace adx
