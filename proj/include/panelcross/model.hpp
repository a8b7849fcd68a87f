// Core domain types for ordinal panel data: categories, the category
// ordering sigma, instances, and per-timestamp subject layouts.
#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace panelcross {

// Malformed or inconsistent input data (files, instances, layouts).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact computation whose search space exceeds the configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered collection of distinct category labels. Index = stable id 0..k-1.
struct CategorySet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (labels[i] == label) return i;
    return -1;
  }
};

// Linear ordering of the categories, stored as a rank array:
// rank[c] = position of category c, 0 = lowest (drawn at the bottom).
struct SigmaOrdering {
  std::vector<int> rank;

  SigmaOrdering() = default;
  explicit SigmaOrdering(std::vector<int> ranks) : rank(std::move(ranks)) {
    if (!is_permutation_of_iota(rank)) throw DataError("sigma ranks are not a permutation of 0..k-1");
  }

  static SigmaOrdering identity(int k) {
    std::vector<int> r(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) r[static_cast<std::size_t>(i)] = i;
    return SigmaOrdering(std::move(r));
  }

  // Builds sigma from the category sequence listed lowest-first.
  static SigmaOrdering from_order(const std::vector<int>& order) {
    if (!is_permutation_of_iota(order)) throw DataError("sigma order is not a permutation of 0..k-1");
    std::vector<int> r(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) r[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    return SigmaOrdering(std::move(r));
  }

  int size() const { return static_cast<int>(rank.size()); }

  // Categories listed lowest-first.
  std::vector<int> order() const {
    std::vector<int> o(rank.size());
    for (std::size_t c = 0; c < rank.size(); ++c) o[static_cast<std::size_t>(rank[c])] = static_cast<int>(c);
    return o;
  }

  SigmaOrdering reversed() const {
    SigmaOrdering s;
    s.rank.resize(rank.size());
    const int k = size();
    for (int c = 0; c < k; ++c) s.rank[static_cast<std::size_t>(c)] = k - 1 - rank[static_cast<std::size_t>(c)];
    return s;
  }

  bool operator==(const SigmaOrdering& other) const { return rank == other.rank; }

 private:
  static bool is_permutation_of_iota(const std::vector<int>& v) {
    std::vector<char> seen(v.size(), 0);
    for (int x : v) {
      if (x < 0 || static_cast<std::size_t>(x) >= v.size() || seen[static_cast<std::size_t>(x)]) return false;
      seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
  }
};

// An ordinal panel data instance: n subjects observed at m+1 timestamps,
// each observation an index into `categories`. tests[i][j] is the category
// of subject j at timestamp i. sigma orders the categories; when absent,
// ordering-dependent operations refuse to run or receive sigma explicitly.
struct OpdInstance {
  std::vector<std::string> subjects;
  CategorySet categories;
  std::vector<std::vector<int>> tests;
  bool has_sigma = false;
  SigmaOrdering sigma;

  int n() const { return static_cast<int>(subjects.size()); }
  int k() const { return categories.size(); }
  // Number of intervals; timestamps are 0..m.
  int m() const { return static_cast<int>(tests.size()) - 1; }

  int category_at(int timestamp, int subject) const {
    return tests[static_cast<std::size_t>(timestamp)][static_cast<std::size_t>(subject)];
  }

  int rank_at(int timestamp, int subject) const {
    return sigma.rank[static_cast<std::size_t>(category_at(timestamp, subject))];
  }

  OpdInstance with_sigma(SigmaOrdering s) const {
    OpdInstance copy = *this;
    copy.has_sigma = true;
    copy.sigma = std::move(s);
    return copy;
  }
};

// One permutation of the subject indices per timestamp. pis[i] lists the
// subjects bottom-to-top at timestamp i.
struct CombinatorialLayout {
  std::vector<std::vector<int>> pis;
};

inline std::vector<std::string> validate_instance(const OpdInstance& inst) {
  std::vector<std::string> violations;
  const int n = inst.n();
  const int k = inst.k();

  if (inst.tests.size() < 2) violations.push_back("instance needs at least 2 timestamps (m >= 1), got " + std::to_string(inst.tests.size()));
  if (k < 1) violations.push_back("instance needs at least one category");

  for (int i = 0; i < static_cast<int>(inst.tests.size()); ++i) {
    const auto& row = inst.tests[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) {
      violations.push_back("timestamp t" + std::to_string(i) + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
      continue;
    }
    for (int j = 0; j < n; ++j) {
      const int c = row[static_cast<std::size_t>(j)];
      if (c < 0 || c >= k)
        violations.push_back("invalid category index " + std::to_string(c) + " for subject " + inst.subjects[static_cast<std::size_t>(j)] + " at t" + std::to_string(i));
    }
  }

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (inst.subjects[static_cast<std::size_t>(a)] == inst.subjects[static_cast<std::size_t>(b)])
        violations.push_back("duplicate subject identifier \"" + inst.subjects[static_cast<std::size_t>(a)] + "\"");

  {
    std::vector<std::string> sorted = inst.categories.labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1]) violations.push_back("duplicate category label \"" + sorted[i] + "\"");
  }

  if (inst.has_sigma && inst.sigma.size() != k)
    violations.push_back("sigma has " + std::to_string(inst.sigma.size()) + " ranks, expected " + std::to_string(k));

  return violations;
}

// Elements of `subset` in the relative order given by `pi`.
inline std::vector<int> induced_permutation(const std::vector<int>& pi, const std::vector<int>& subset) {
  std::vector<char> wanted;
  for (int y : subset) {
    if (y < 0) throw DataError("induced_permutation: negative element");
    if (static_cast<std::size_t>(y) >= wanted.size()) wanted.resize(static_cast<std::size_t>(y) + 1, 0);
    wanted[static_cast<std::size_t>(y)] = 1;
  }
  std::vector<int> out;
  out.reserve(subset.size());
  for (int x : pi)
    if (x >= 0 && static_cast<std::size_t>(x) < wanted.size() && wanted[static_cast<std::size_t>(x)]) {
      out.push_back(x);
      wanted[static_cast<std::size_t>(x)] = 0;
    }
  if (out.size() != subset.size()) throw DataError("induced_permutation: subset element missing from the permutation");
  return out;
}

// Subjects assigned to category c at the given timestamp, in subject-index order.
inline std::vector<int> subjects_in_category(const OpdInstance& inst, int timestamp, int c) {
  std::vector<int> out;
  for (int j = 0; j < inst.n(); ++j)
    if (inst.category_at(timestamp, j) == c) out.push_back(j);
  return out;
}

// True iff every pi respects the sigma order of the subjects' categories.
inline bool layout_is_valid(const OpdInstance& inst, const CombinatorialLayout& layout) {
  if (!inst.has_sigma) throw DataError("layout_is_valid: instance has no sigma");
  if (layout.pis.size() != inst.tests.size()) throw DataError("layout has " + std::to_string(layout.pis.size()) + " permutations, expected " + std::to_string(inst.tests.size()));
  const int n = inst.n();
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < layout.pis.size(); ++i) {
    const auto& pi = layout.pis[i];
    if (static_cast<int>(pi.size()) != n) throw DataError("pi_" + std::to_string(i) + " has wrong size");
    std::fill(seen.begin(), seen.end(), 0);
    for (int s : pi) {
      if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)]) throw DataError("pi_" + std::to_string(i) + " is not a permutation of the subjects");
      seen[static_cast<std::size_t>(s)] = 1;
    }
    for (int pos = 1; pos < n; ++pos) {
      const int prev = pi[static_cast<std::size_t>(pos - 1)];
      const int cur = pi[static_cast<std::size_t>(pos)];
      if (inst.rank_at(static_cast<int>(i), prev) > inst.rank_at(static_cast<int>(i), cur)) return false;
    }
  }
  return true;
}

}  // namespace panelcross
