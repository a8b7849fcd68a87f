// Category-ordering optimization: responsibility tables over pairs of
// ordered category pairs, exact branch-and-bound search, LP-format export
// of the equivalent integer program, and the bipartite-graph reduction.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "panelcross/crossings.hpp"
#include "panelcross/model.hpp"

namespace panelcross {

// Two ordered category pairs, canonicalized so that the first pair is
// ascending and the pair of pairs is lexicographically smallest among the
// crossing-preserving rewrites (flipping both pairs, swapping the pairs).
struct PairKey {
  int a = 0, b = 0, c = 0, d = 0;

  auto tie() const { return std::array<int, 4>{a, b, c, d}; }
  bool operator<(const PairKey& o) const { return tie() < o.tie(); }
  bool operator==(const PairKey& o) const { return tie() == o.tie(); }
};

enum class KeyKind { Table, AlwaysCross, NeverCross };

struct KeyCounts {
  long long sc = 0;
  long long wc = 0;
};

struct ResponsibilityTables {
  std::map<PairKey, KeyCounts> entries;
  long long constant = 0;
};

namespace detail {

inline KeyKind classify_key(int a, int b, int c, int d, PairKey& out) {
  if (a == c && b == d) return KeyKind::NeverCross;
  if (a == d && b == c) {
    out = a < b ? PairKey{a, b, b, a} : PairKey{b, a, a, b};
    return KeyKind::AlwaysCross;
  }
  PairKey best;
  bool have = false;
  const std::array<PairKey, 4> variants{PairKey{a, b, c, d}, PairKey{b, a, d, c}, PairKey{c, d, a, b}, PairKey{d, c, b, a}};
  for (const PairKey& v : variants) {
    if (v.a >= v.b) continue;
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }
  out = best;
  return KeyKind::Table;
}

}  // namespace detail

// One table entry counts the unavoidable crossing events (strong: adjacent
// tests; weak: across a shared-category stretch) attributed to its two
// category pairs. The event becomes a crossing under sigma exactly when the
// sigma orders of the two pairs disagree; keys of shape ((A,B),(B,A)) cross
// under every sigma and accrue to the constant.
inline ResponsibilityTables compute_tables(const OpdInstance& inst) {
  ResponsibilityTables tables;
  const int n = inst.n();
  const int t_count = inst.m() + 1;
  for (int s = 0; s < n; ++s)
    for (int s2 = s + 1; s2 < n; ++s2) {
      int prev_test = -1;
      int prev_cs = -1, prev_cs2 = -1;
      for (int i = 0; i < t_count; ++i) {
        const int cs = inst.category_at(i, s);
        const int cs2 = inst.category_at(i, s2);
        if (cs == cs2) continue;
        if (prev_test >= 0) {
          PairKey key;
          const KeyKind kind = detail::classify_key(prev_cs, prev_cs2, cs, cs2, key);
          const bool strong = (i == prev_test + 1);
          if (kind == KeyKind::AlwaysCross) {
            tables.constant += 1;
          } else if (kind == KeyKind::Table) {
            KeyCounts& counts = tables.entries[key];
            (strong ? counts.sc : counts.wc) += 1;
          }
        }
        prev_test = i;
        prev_cs = cs;
        prev_cs2 = cs2;
      }
    }
  return tables;
}

inline long long objective_for_sigma(const ResponsibilityTables& tables, const SigmaOrdering& sigma) {
  long long value = tables.constant;
  for (const auto& [key, counts] : tables.entries) {
    const bool first = sigma.rank[static_cast<std::size_t>(key.a)] < sigma.rank[static_cast<std::size_t>(key.b)];
    const bool second = sigma.rank[static_cast<std::size_t>(key.c)] < sigma.rank[static_cast<std::size_t>(key.d)];
    if (first != second) value += counts.sc + counts.wc;
  }
  return value;
}

struct SigmaSearchResult {
  SigmaOrdering sigma;
  long long objective = 0;
};

// Exact minimization over all category orderings by depth-first search in
// lexicographic order with an admissible prune: events whose two pairs are
// both decided by the placed prefix already cost at least the bound, and
// undecided events cost at least zero. Ties resolve to the first (hence
// lexicographically smallest) ordering found. `budget` caps search nodes.
inline SigmaSearchResult optimal_sigma_exact(const OpdInstance& inst, long long budget = 10'000'000) {
  const int k = inst.k();
  const ResponsibilityTables tables = compute_tables(inst);

  std::vector<int> placed_rank(static_cast<std::size_t>(k), -1);
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(k));
  std::vector<int> best_order;
  long long best_cost = -1;
  long long nodes = 0;

  auto pair_state = [&](int a, int b, bool& decided) {
    const int ra = placed_rank[static_cast<std::size_t>(a)];
    const int rb = placed_rank[static_cast<std::size_t>(b)];
    if (ra >= 0 && rb >= 0) {
      decided = true;
      return ra < rb;
    }
    if (ra >= 0) {
      decided = true;
      return true;
    }
    if (rb >= 0) {
      decided = true;
      return false;
    }
    decided = false;
    return false;
  };

  auto lower_bound = [&]() {
    long long bound = tables.constant;
    for (const auto& [key, counts] : tables.entries) {
      bool d1 = false, d2 = false;
      const bool o1 = pair_state(key.a, key.b, d1);
      const bool o2 = pair_state(key.c, key.d, d2);
      if (d1 && d2 && o1 != o2) bound += counts.sc + counts.wc;
    }
    return bound;
  };

  auto dfs = [&](auto&& self) -> void {
    if (++nodes > budget) throw BudgetError("sigma search budget exceeded; export the integer program instead");
    const long long bound = lower_bound();
    if (best_cost >= 0 && bound >= best_cost) return;
    if (static_cast<int>(prefix.size()) == k) {
      best_cost = bound;
      best_order = prefix;
      return;
    }
    for (int c = 0; c < k; ++c) {
      if (placed_rank[static_cast<std::size_t>(c)] >= 0) continue;
      placed_rank[static_cast<std::size_t>(c)] = static_cast<int>(prefix.size());
      prefix.push_back(c);
      self(self);
      prefix.pop_back();
      placed_rank[static_cast<std::size_t>(c)] = -1;
    }
  };
  dfs(dfs);

  SigmaSearchResult result;
  result.sigma = SigmaOrdering::from_order(best_order);
  result.objective = best_cost;
  return result;
}

// Integer program equivalent to the sigma search, in LP text format.
// Binary x_i_j = 1 iff category i precedes category j; y variables exist
// only for keys with positive weight and pay when the two pair orders
// disagree. Antisymmetry is one row per ordered pair; transitivity rows
// carry the >= 0 half per ordered triple (the <= 1 half is the reversed
// triple's row under antisymmetry).
inline std::string export_ilp(const ResponsibilityTables& tables, int k) {
  std::ostringstream out;
  out << "Minimize\n obj:";
  bool first_term = true;
  for (const auto& [key, counts] : tables.entries) {
    const long long weight = counts.sc + counts.wc;
    if (weight <= 0) continue;
    out << (first_term ? " " : " + ") << weight << " y_" << key.a << "_" << key.b << "_" << key.c << "_" << key.d;
    first_term = false;
  }
  if (tables.constant > 0) {
    out << (first_term ? " " : " + ") << tables.constant;
    first_term = false;
  }
  if (first_term) out << " 0";
  out << "\nSubject To\n";
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      out << " as_" << i << "_" << j << ": x_" << i << "_" << j << " + x_" << j << "_" << i << " = 1\n";
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        if (i == j || j == l || i == l) continue;
        out << " tr_" << i << "_" << j << "_" << l << ": x_" << i << "_" << j << " + x_" << j << "_" << l << " - x_" << i << "_" << l << " >= 0\n";
      }
  for (const auto& [key, counts] : tables.entries) {
    if (counts.sc + counts.wc <= 0) continue;
    const std::string y = "y_" + std::to_string(key.a) + "_" + std::to_string(key.b) + "_" + std::to_string(key.c) + "_" + std::to_string(key.d);
    const std::string xab = "x_" + std::to_string(key.a) + "_" + std::to_string(key.b);
    const std::string xcd = "x_" + std::to_string(key.c) + "_" + std::to_string(key.d);
    out << " xa_" << key.a << "_" << key.b << "_" << key.c << "_" << key.d << ": " << y << " - " << xab << " + " << xcd << " >= 0\n";
    out << " xb_" << key.a << "_" << key.b << "_" << key.c << "_" << key.d << ": " << y << " - " << xcd << " + " << xab << " >= 0\n";
  }
  out << "Binary\n";
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) out << " x_" << i << "_" << j << "\n";
  for (const auto& [key, counts] : tables.entries)
    if (counts.sc + counts.wc > 0) out << " y_" << key.a << "_" << key.b << "_" << key.c << "_" << key.d << "\n";
  out << "End\n";
  return out.str();
}

// Two-test instance encoding a bipartite graph: one subject per edge, the
// first test maps it to its left endpoint, the second to its right. The
// minimum of pcr over sigma equals the graph's bipartite crossing number.
inline OpdInstance bipartite_reduction(const std::vector<std::string>& left, const std::vector<std::string>& right,
                                       const std::vector<std::pair<std::string, std::string>>& edges) {
  OpdInstance inst;
  inst.categories.labels = left;
  inst.categories.labels.insert(inst.categories.labels.end(), right.begin(), right.end());
  const auto side_index = [&](const std::vector<std::string>& side, const std::string& label) {
    for (std::size_t i = 0; i < side.size(); ++i)
      if (side[i] == label) return static_cast<int>(i);
    return -1;
  };
  inst.tests.assign(2, {});
  for (const auto& [u, v] : edges) {
    const int ul = side_index(left, u);
    const int vr = side_index(right, v);
    if (ul < 0 && side_index(right, u) >= 0) throw DataError("bipartite_reduction: edge endpoint " + u + " is not in the left part");
    if (vr < 0 && side_index(left, v) >= 0) throw DataError("bipartite_reduction: edge endpoint " + v + " is not in the right part");
    if (ul < 0 || vr < 0) throw DataError("bipartite_reduction: unknown vertex in edge " + u + "-" + v);
    inst.subjects.push_back(u + "-" + v);
    inst.tests[0].push_back(ul);
    inst.tests[1].push_back(static_cast<int>(left.size()) + vr);
  }
  const std::vector<std::string> problems = validate_instance(inst);
  if (!problems.empty()) throw DataError("bipartite_reduction: " + problems.front());
  return inst;
}

}  // namespace panelcross
