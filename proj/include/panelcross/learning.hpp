// Learning spaces: item sets as bitsets, axiom validation, and the state
// graph (a partial hypercube).
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "panelcross/model.hpp"

namespace panelcross {

// Subset of the item domain, bit-packed with no width limit.
struct ItemSetBits {
  std::vector<std::uint64_t> words;

  static ItemSetBits empty(int width) {
    ItemSetBits s;
    s.words.assign(static_cast<std::size_t>((width + 63) / 64), 0);
    return s;
  }

  void set(int bit) { words[static_cast<std::size_t>(bit) / 64] |= 1ULL << (static_cast<std::size_t>(bit) % 64); }

  bool test(int bit) const { return (words[static_cast<std::size_t>(bit) / 64] >> (static_cast<std::size_t>(bit) % 64)) & 1ULL; }

  int count() const {
    int total = 0;
    for (std::uint64_t w : words) total += __builtin_popcountll(w);
    return total;
  }

  int diff_count(const ItemSetBits& o) const {
    int total = 0;
    for (std::size_t i = 0; i < words.size(); ++i) total += __builtin_popcountll(words[i] ^ o.words[i]);
    return total;
  }

  bool subset_of(const ItemSetBits& o) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] & ~o.words[i]) return false;
    return true;
  }

  ItemSetBits with(int bit) const {
    ItemSetBits s = *this;
    s.set(bit);
    return s;
  }

  bool operator==(const ItemSetBits& o) const { return words == o.words; }
  bool operator<(const ItemSetBits& o) const {
    for (std::size_t i = words.size(); i-- > 0;)
      if (words[i] != o.words[i]) return words[i] < o.words[i];
    return false;
  }
};

// Knowledge structure over item domain Q with explicit states. States are
// kept sorted and deduplicated; index = stable state id.
struct LearningSpace {
  std::vector<std::string> items;
  std::vector<ItemSetBits> states;

  int q() const { return static_cast<int>(items.size()); }
  int state_count() const { return static_cast<int>(states.size()); }

  static LearningSpace from_states(std::vector<std::string> items, std::vector<ItemSetBits> states) {
    LearningSpace space;
    space.items = std::move(items);
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    space.states = std::move(states);
    return space;
  }

  static LearningSpace powerset(std::vector<std::string> items) {
    const int q = static_cast<int>(items.size());
    std::vector<ItemSetBits> states;
    for (std::uint64_t mask = 0; mask < (1ULL << q); ++mask) {
      ItemSetBits s = ItemSetBits::empty(q);
      for (int b = 0; b < q; ++b)
        if ((mask >> b) & 1ULL) s.set(b);
      states.push_back(std::move(s));
    }
    return from_states(std::move(items), std::move(states));
  }

  int index_of(const ItemSetBits& s) const {
    const auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || !(*it == s)) return -1;
    return static_cast<int>(it - states.begin());
  }

  std::string state_label(int idx) const {
    std::string out = "{";
    bool first = true;
    for (int b = 0; b < q(); ++b)
      if (states[static_cast<std::size_t>(idx)].test(b)) {
        if (!first) out += ",";
        out += items[static_cast<std::size_t>(b)];
        first = false;
      }
    out += "}";
    return out;
  }
};

// Checks the two learning-space axioms plus presence of the empty state and
// the full domain. Smoothness reduces to: every nested pair of states admits
// a one-item step inside the family; chains then exist by induction.
inline std::vector<std::string> validate_learning_space(const LearningSpace& space, std::size_t budget = 4096) {
  std::vector<std::string> violations;
  if (space.states.size() > budget) {
    violations.push_back("state family exceeds validation budget");
    return violations;
  }
  const int q = space.q();
  ItemSetBits empty = ItemSetBits::empty(q);
  ItemSetBits full = ItemSetBits::empty(q);
  for (int b = 0; b < q; ++b) full.set(b);
  if (space.index_of(empty) < 0) violations.push_back("missing empty state");
  if (space.index_of(full) < 0) violations.push_back("missing full domain state");

  const int count = space.state_count();
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (i == j) continue;
      const ItemSetBits& small = space.states[static_cast<std::size_t>(i)];
      const ItemSetBits& large = space.states[static_cast<std::size_t>(j)];
      if (!small.subset_of(large) || small == large) continue;
      bool step = false;
      for (int b = 0; b < q && !step; ++b)
        if (!small.test(b) && large.test(b) && space.index_of(small.with(b)) >= 0) step = true;
      if (!step)
        violations.push_back("smoothness violated: no one-item chain from " + space.state_label(i) + " toward " + space.state_label(j));
    }

  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      const ItemSetBits& small = space.states[static_cast<std::size_t>(i)];
      const ItemSetBits& large = space.states[static_cast<std::size_t>(j)];
      if (!small.subset_of(large)) continue;
      for (int b = 0; b < q; ++b) {
        if (large.test(b)) continue;
        if (space.index_of(small.with(b)) >= 0 && space.index_of(large.with(b)) < 0)
          violations.push_back("consistency violated: " + space.state_label(i) + " + " + space.items[static_cast<std::size_t>(b)] + " is a state but " + space.state_label(j) + " + " + space.items[static_cast<std::size_t>(b)] + " is not");
      }
    }
  return violations;
}

struct StateGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency;
};

// States adjacent iff they differ in exactly one item. Connected for every
// valid learning space.
inline StateGraph learning_space_graph(const LearningSpace& space) {
  if (!validate_learning_space(space).empty()) throw DataError("learning_space_graph: not a learning space");
  StateGraph graph;
  graph.vertex_count = space.state_count();
  graph.adjacency.resize(static_cast<std::size_t>(graph.vertex_count));
  for (int i = 0; i < graph.vertex_count; ++i)
    for (int j = i + 1; j < graph.vertex_count; ++j)
      if (space.states[static_cast<std::size_t>(i)].diff_count(space.states[static_cast<std::size_t>(j)]) == 1) {
        graph.edges.emplace_back(i, j);
        graph.adjacency[static_cast<std::size_t>(i)].push_back(j);
        graph.adjacency[static_cast<std::size_t>(j)].push_back(i);
      }
  return graph;
}

// Maturity category of each state, by state index.
struct RankingFunction {
  std::vector<int> category_of_state;

  int operator()(int state_idx) const { return category_of_state[static_cast<std::size_t>(state_idx)]; }
};

}  // namespace panelcross
