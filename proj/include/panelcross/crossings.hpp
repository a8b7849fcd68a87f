// Crossing counts, forced-crossing classification, the two-pass optimal
// layout algorithm, and an exhaustive minimum-crossing oracle.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "panelcross/model.hpp"

namespace panelcross {

struct CrossingReport {
  long long total = 0;
  long long strong = 0;
  long long weak = 0;
  std::vector<long long> per_interval;
};

namespace detail {

// Counts inversions of `seq` by merge sort. seq is consumed as scratch.
inline long long merge_count_inversions(std::vector<int>& seq, std::vector<int>& buf) {
  const std::size_t n = seq.size();
  buf.resize(n);
  long long inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (seq[a] <= seq[b]) {
          buf[out++] = seq[a++];
        } else {
          inversions += static_cast<long long>(mid - a);
          buf[out++] = seq[b++];
        }
      }
      while (a < mid) buf[out++] = seq[a++];
      while (b < hi) buf[out++] = seq[b++];
      std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi), seq.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inversions;
}

// Pairs ordered differently by `from` and `to`.
inline long long inversions_between(const std::vector<int>& from, const std::vector<int>& to) {
  const std::size_t n = from.size();
  std::vector<int> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[static_cast<std::size_t>(to[p])] = static_cast<int>(p);
  std::vector<int> seq(n), buf;
  for (std::size_t p = 0; p < n; ++p) seq[p] = pos[static_cast<std::size_t>(from[p])];
  return merge_count_inversions(seq, buf);
}

// Stable-buckets the subjects listed by `order` into categories of the given
// timestamp, then concatenates the buckets lowest sigma rank first.
inline std::vector<int> rebucket(const OpdInstance& inst, const std::vector<int>& order, int timestamp) {
  const int k = inst.k();
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(k));
  for (int s : order) buckets[static_cast<std::size_t>(inst.category_at(timestamp, s))].push_back(s);
  std::vector<int> out;
  out.reserve(order.size());
  for (int c : inst.sigma.order())
    for (int s : buckets[static_cast<std::size_t>(c)]) out.push_back(s);
  return out;
}

}  // namespace detail

inline long long count_strongly_forced(const OpdInstance& inst);
inline long long count_weakly_forced(const OpdInstance& inst);

inline CrossingReport count_layout_crossings(const OpdInstance& inst, const CombinatorialLayout& layout) {
  if (inst.has_sigma && !layout_is_valid(inst, layout)) throw DataError("count_layout_crossings: layout violates the category ordering");
  CrossingReport report;
  for (std::size_t i = 0; i + 1 < layout.pis.size(); ++i) {
    const long long c = detail::inversions_between(layout.pis[i], layout.pis[i + 1]);
    report.per_interval.push_back(c);
    report.total += c;
  }
  if (inst.has_sigma) {
    report.strong = count_strongly_forced(inst);
    report.weak = count_weakly_forced(inst);
  }
  return report;
}

// Crossings no layout can avoid: one subject passes the other between two
// consecutive tests on which both hold distinct categories.
inline long long count_strongly_forced(const OpdInstance& inst) {
  if (!inst.has_sigma) throw DataError("count_strongly_forced: instance has no sigma");
  const int n = inst.n();
  const int m = inst.m();
  long long count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int i = 1; i <= m; ++i) {
        const int before = inst.rank_at(i - 1, a) - inst.rank_at(i - 1, b);
        const int after = inst.rank_at(i, a) - inst.rank_at(i, b);
        if ((before < 0 && after > 0) || (before > 0 && after < 0)) ++count;
      }
  return count;
}

// Crossings forced by a catch-up, a maximal stretch of shared categories,
// then a break-away on the other side. One count per pair and stretch.
inline long long count_weakly_forced(const OpdInstance& inst) {
  if (!inst.has_sigma) throw DataError("count_weakly_forced: instance has no sigma");
  const int n = inst.n();
  const int t_count = inst.m() + 1;
  long long count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int prev_test = -1, prev_sign = 0;
      for (int i = 0; i < t_count; ++i) {
        const int d = inst.rank_at(i, a) - inst.rank_at(i, b);
        if (d == 0) continue;
        const int sign = d < 0 ? -1 : 1;
        if (prev_test >= 0 && sign != prev_sign && i > prev_test + 1) ++count;
        prev_test = i;
        prev_sign = sign;
      }
    }
  return count;
}

// Layout that places each subject by subject-index order within its t_0
// category and lets later tests inherit the running order.
inline CombinatorialLayout forward_layout(const OpdInstance& inst) {
  if (!inst.has_sigma) throw DataError("forward_layout: instance has no sigma");
  const int m = inst.m();
  CombinatorialLayout layout;
  layout.pis.resize(static_cast<std::size_t>(m) + 1);
  std::vector<int> initial(static_cast<std::size_t>(inst.n()));
  std::iota(initial.begin(), initial.end(), 0);
  layout.pis[0] = detail::rebucket(inst, initial, 0);
  for (int i = 0; i < m; ++i) layout.pis[static_cast<std::size_t>(i) + 1] = detail::rebucket(inst, layout.pis[static_cast<std::size_t>(i)], i + 1);
  return layout;
}

// Forward pass followed by a backward pass. The forward pass removes
// crossings between subjects merging into a category; the backward pass
// reorders earlier timestamps to match where subjects are headed. The
// result attains the strongly + weakly forced minimum.
inline CombinatorialLayout optimal_layout(const OpdInstance& inst) {
  CombinatorialLayout layout = forward_layout(inst);
  for (int i = inst.m() - 1; i >= 0; --i) layout.pis[static_cast<std::size_t>(i)] = detail::rebucket(inst, layout.pis[static_cast<std::size_t>(i) + 1], i);
  return layout;
}

inline long long pcr(const OpdInstance& inst) {
  return count_layout_crossings(inst, optimal_layout(inst)).total;
}

// True when the layout pays more crossings than the instance forces, i.e.
// some pair of subjects trades places more often than their category
// trajectories require.
inline bool has_redundant_crossings(const OpdInstance& inst, const CombinatorialLayout& layout) {
  const CrossingReport report = count_layout_crossings(inst, layout);
  return report.total > report.strong + report.weak;
}

// Exact minimum over every valid layout, found by enumerating all
// per-category subject orderings at each timestamp. Crossings couple only
// consecutive timestamps, so the minimum is taken with a layer-by-layer
// dynamic program instead of materializing the full product space.
inline long long brute_force_pcr(const OpdInstance& inst, long long budget = 10'000'000) {
  if (!inst.has_sigma) throw DataError("brute_force_pcr: instance has no sigma");
  const int m = inst.m();
  const int n = inst.n();

  long long work = 0;
  std::vector<long long> layer_sizes;
  for (int i = 0; i <= m; ++i) {
    long long layer = 1;
    for (int c = 0; c < inst.k(); ++c) {
      const long long sz = static_cast<long long>(subjects_in_category(inst, i, c).size());
      for (long long f = 2; f <= sz; ++f) {
        layer *= f;
        if (layer > budget) throw BudgetError("too large for oracle");
      }
    }
    if (i > 0) {
      if (layer_sizes.back() > budget / layer) throw BudgetError("too large for oracle");
      work += layer_sizes.back() * layer;
      if (work > budget) throw BudgetError("too large for oracle");
    }
    layer_sizes.push_back(layer);
  }

  // All orderings of one timestamp: sigma-ordered buckets, each bucket
  // running through its permutations odometer-style.
  auto enumerate_layer = [&](int timestamp, auto&& visit) {
    std::vector<std::vector<int>> buckets;
    for (int c : inst.sigma.order()) {
      std::vector<int> g = subjects_in_category(inst, timestamp, c);
      if (!g.empty()) buckets.push_back(std::move(g));
    }
    std::vector<int> flat;
    auto rebuild = [&]() {
      flat.clear();
      for (const auto& g : buckets) flat.insert(flat.end(), g.begin(), g.end());
    };
    rebuild();
    if (n == 0) {
      visit(flat);
      return;
    }
    while (true) {
      visit(flat);
      std::size_t b = 0;
      while (b < buckets.size() && !std::next_permutation(buckets[b].begin(), buckets[b].end())) ++b;
      if (b == buckets.size()) break;
      rebuild();
    }
  };

  std::vector<long long> best(static_cast<std::size_t>(layer_sizes[0]), 0);
  for (int i = 1; i <= m; ++i) {
    std::vector<long long> next;
    next.reserve(static_cast<std::size_t>(layer_sizes[static_cast<std::size_t>(i)]));
    enumerate_layer(i, [&](const std::vector<int>& q) {
      long long bq = -1;
      std::size_t idx = 0;
      enumerate_layer(i - 1, [&](const std::vector<int>& p) {
        const long long cost = best[idx++] + detail::inversions_between(p, q);
        if (bq < 0 || cost < bq) bq = cost;
      });
      next.push_back(bq);
    });
    best = std::move(next);
  }
  return *std::min_element(best.begin(), best.end());
}

}  // namespace panelcross
