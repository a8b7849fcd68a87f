// Extremal and expected crossing numbers, the instance constructions that
// attain them, and seeded random instance generation.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "panelcross/crossings.hpp"
#include "panelcross/model.hpp"
#include "panelcross/rational.hpp"
#include "panelcross/rng.hpp"

namespace panelcross {

// Decompositions shared by the extremal formulas: n = x*k + y with
// 0 <= y < k, and the consistent variant over k' = max(ceil(k/(m+1)), 2).
struct ExtremalParams {
  int n = 0, k = 0, m = 0;
  int x = 0, y = 0;
  int k_prime = 0, xc = 0, yc = 0;

  ExtremalParams(int n_, int k_, int m_) : n(n_), k(k_), m(m_) {
    if (n < 0 || k < 1 || m < 1) throw DataError("extremal parameters need n >= 0, k >= 1, m >= 1");
    x = n / k;
    y = n % k;
    k_prime = (k + m) / (m + 1);
    if (k_prime < 2) k_prime = 2;
    xc = n / k_prime;
    yc = n % k_prime;
  }

  // Number of bundle-reversal intervals that fit inside k categories.
  // Equals m unless the clamp k' = 2 kicked in with k <= m + 1.
  int realizable_intervals() const {
    const long long fit = (k - k_prime) / (k_prime - 1);
    const long long capped = fit < 0 ? 0 : fit;
    return static_cast<int>(capped < m ? capped : m);
  }
};

namespace detail {

inline std::vector<std::string> default_subject_labels(int n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back("s" + std::to_string(j));
  return out;
}

inline std::vector<std::string> default_category_labels(int k) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) out.push_back("c" + std::to_string(c + 1));
  return out;
}

inline OpdInstance blank_instance(int n, int k, int m) {
  OpdInstance inst;
  inst.subjects = default_subject_labels(n);
  inst.categories.labels = default_category_labels(k);
  inst.tests.assign(static_cast<std::size_t>(m) + 1, std::vector<int>(static_cast<std::size_t>(n), 0));
  inst.has_sigma = true;
  inst.sigma = SigmaOrdering::identity(k);
  return inst;
}

}  // namespace detail

// Maximum crossings between two tests when test 1 partitions the subjects
// into parts a_1..a_k: half of sum a_i * (n - a_i), attained by reversing
// the parts on test 2.
inline long long ecr_two_tests(const std::vector<long long>& partition) {
  long long n = 0;
  for (long long a : partition) {
    if (a < 0) throw DataError("ecr_two_tests: negative part");
    n += a;
  }
  long long twice = 0;
  for (long long a : partition) twice += a * (n - a);
  if (twice % 2 != 0) throw DataError("ecr_two_tests: odd pair total");
  return twice / 2;
}

inline std::vector<long long> balanced_partition(int n, int k) {
  ExtremalParams p(n, k, 1);
  std::vector<long long> parts(static_cast<std::size_t>(k), p.x);
  for (int i = 0; i < p.y; ++i) parts[static_cast<std::size_t>(i)] += 1;
  return parts;
}

// Maximum pcr over all test sequences with n subjects, k categories and m
// intervals: (m/2) * (k*x*(n-x) + y*(n-2x-1)) with n = x*k + y.
inline long long ecr_general(int n, int k, int m) {
  ExtremalParams p(n, k, m);
  const long long inner = static_cast<long long>(k) * p.x * (n - p.x) + static_cast<long long>(p.y) * (n - 2LL * p.x - 1);
  if (inner % 2 != 0) throw DataError("ecr_general: odd pair total");
  return static_cast<long long>(m) * (inner / 2);
}

// Balanced first test, each following test sends the category ranked r to
// rank k-1-r. Attains ecr_general.
inline OpdInstance extremal_instance_general(int n, int k, int m) {
  ExtremalParams p(n, k, m);
  OpdInstance inst = detail::blank_instance(n, k, m);
  const std::vector<long long> parts = balanced_partition(n, k);
  int next = 0;
  for (int c = 0; c < k; ++c)
    for (long long r = 0; r < parts[static_cast<std::size_t>(c)]; ++r) inst.tests[0][static_cast<std::size_t>(next++)] = c;
  for (int i = 1; i <= m; ++i)
    for (int j = 0; j < n; ++j) inst.tests[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k - 1 - inst.tests[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
  return inst;
}

// True iff no subject's sigma rank ever decreases.
inline bool instance_is_consistent(const OpdInstance& inst) {
  if (!inst.has_sigma) throw DataError("instance_is_consistent: instance has no sigma");
  for (int i = 1; i <= inst.m(); ++i)
    for (int j = 0; j < inst.n(); ++j)
      if (inst.rank_at(i, j) < inst.rank_at(i - 1, j)) return false;
  return true;
}

// Sandwich for consistency-restricted extremal crossings. upper counts one
// crossing per pair per interval, capped at k-2 per pair overall. lower is
// what the bundle-reversal construction realizes: per reversal interval,
// half of sum a_i*(n-a_i) over the balanced k'-partition, for as many
// intervals as fit inside k categories.
inline std::pair<long long, long long> consistent_bounds(int n, int k, int m) {
  if (k < 2) throw DataError("consistent_bounds: need k >= 2");
  ExtremalParams p(n, k, m);
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const long long upper = static_cast<long long>(std::min(k - 2, m)) * pairs;
  const long long stated = static_cast<long long>(p.yc) * (n - static_cast<long long>(p.xc) * p.xc + static_cast<long long>(p.xc) * (n - 2) - 1) +
                           static_cast<long long>(p.k_prime - p.yc) * p.xc * (n - p.xc);
  const long long expanded = static_cast<long long>(p.yc) * (p.xc + 1) * (n - p.xc - 1) + static_cast<long long>(p.k_prime - p.yc) * p.xc * (n - p.xc);
  if (stated != expanded) throw DataError("consistent_bounds: expansion mismatch");
  if (expanded % 2 != 0) throw DataError("consistent_bounds: odd pair total");
  const long long lower = static_cast<long long>(p.realizable_intervals()) * (expanded / 2);
  if (k >= 3 && 2 * lower < upper) throw DataError("consistent_bounds: sandwich violated");
  return {lower, upper};
}

// Consistent instance attaining the lower bound: subjects start balanced in
// the first k' categories and each reversal interval flips them into the
// next overlapping bundle of k' categories, never decreasing any subject.
inline OpdInstance consistent_extremal_instance(int n, int k, int m) {
  if (k < 2) throw DataError("consistent_extremal_instance: need k >= 2");
  ExtremalParams p(n, k, m);
  OpdInstance inst = detail::blank_instance(n, k, m);
  const std::vector<long long> parts = balanced_partition(n, p.k_prime);
  int next = 0;
  for (int c = 0; c < p.k_prime; ++c)
    for (long long r = 0; r < parts[static_cast<std::size_t>(c)]; ++r) inst.tests[0][static_cast<std::size_t>(next++)] = c;
  const int active = p.realizable_intervals();
  for (int i = 1; i <= m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int prev = inst.tests[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
      int cur = prev;
      if (i <= active) {
        // Bundle l covers categories [g_l, h_l] = [l*(k'-1), l*(k'-1)+k'-1]
        // (0-based); the reversal maps category j of bundle l-1 to
        // g_l + h_{l-1} - j = 2*g_l - j.
        const int g = i * (p.k_prime - 1);
        cur = 2 * g - prev;
      }
      inst.tests[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur;
    }
  }
  return inst;
}

// Expected pcr of a uniformly random instance:
// C(n,2) * ((1/k)^m + m(k-1) - 1) / (2k), exact.
inline Rational expected_pcr(int n, int k, int m) {
  if (k < 2) throw DataError("expected_pcr: need k >= 2");
  if (m < 1) throw DataError("expected_pcr: need m >= 1");
  if (n < 0) throw DataError("expected_pcr: need n >= 0");
  const Rational pairs(static_cast<std::int64_t>(n) * (n - 1) / 2);
  const Rational inv_k(1, k);
  const Rational inner = Rational::pow(inv_k, m) + Rational(static_cast<std::int64_t>(m) * (k - 1) - 1);
  return pairs * inner / Rational(2LL * k);
}

// The same expectation as the interval-by-interval series
// C(n,2) * sum_{i=0}^{m-1} ((1-1/k)^2 / 2) (1/k)^i (m-i).
inline Rational expected_pcr_series(int n, int k, int m) {
  if (k < 2) throw DataError("expected_pcr_series: need k >= 2");
  const Rational pairs(static_cast<std::int64_t>(n) * (n - 1) / 2);
  const Rational q = Rational(1) - Rational(1, k);
  const Rational coeff = q * q / Rational(2);
  Rational sum(0);
  for (int i = 0; i < m; ++i) sum = sum + coeff * Rational::pow(Rational(1, k), i) * Rational(m - i);
  return pairs * sum;
}

namespace detail {

inline void fill_uniform_tests(OpdInstance& inst, Pcg32& gen) {
  const std::uint32_t k = static_cast<std::uint32_t>(inst.k());
  for (auto& row : inst.tests)
    for (int& cell : row) cell = static_cast<int>(gen.next_below(k));
}

}  // namespace detail

// Every cell independently uniform over the k categories; identical seeds
// give identical instances on every platform.
inline OpdInstance random_instance(int n, int k, int m, std::uint64_t seed) {
  if (n < 0 || k < 1 || m < 1) throw DataError("random_instance: need n >= 0, k >= 1, m >= 1");
  OpdInstance inst = detail::blank_instance(n, k, m);
  Pcg32 gen(seed, 0);
  detail::fill_uniform_tests(inst, gen);
  return inst;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long long samples = 0;
};

// Sample mean and standard error of pcr over independent random instances.
// Sample j draws from substream (seed, stream j), so the estimate does not
// depend on how samples are scheduled.
inline MonteCarloEstimate monte_carlo_expected_pcr(int n, int k, int m, long long samples, std::uint64_t seed) {
  if (samples < 1) throw DataError("monte_carlo_expected_pcr: need samples >= 1");
  OpdInstance inst = detail::blank_instance(n, k, m);
  unsigned long long sum = 0, sum_sq = 0;
  for (long long j = 0; j < samples; ++j) {
    Pcg32 gen(seed, static_cast<std::uint64_t>(j));
    detail::fill_uniform_tests(inst, gen);
    const unsigned long long value = static_cast<unsigned long long>(pcr(inst));
    sum += value;
    sum_sq += value * value;
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = static_cast<double>(sum) / static_cast<double>(samples);
  if (samples == 1) {
    est.stderr_of_mean = std::numeric_limits<double>::infinity();
  } else {
    const double ns = static_cast<double>(samples);
    const double variance = (static_cast<double>(sum_sq) - ns * est.mean * est.mean) / (ns - 1.0);
    est.stderr_of_mean = std::sqrt((variance < 0 ? 0 : variance) / ns);
  }
  return est;
}

}  // namespace panelcross
