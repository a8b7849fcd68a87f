// Tiles: graphs with ordered boundary walls, the join operation, and the
// four constructions that bridge panel data with learning spaces.
#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "panelcross/crossings.hpp"
#include "panelcross/learning.hpp"
#include "panelcross/model.hpp"

namespace panelcross {

// Graph with an ordered sequence of walls. walls.front() is the left
// boundary, walls.back() the right one; walls in between are the seams
// recorded by joins. Vertex ids index vertex_labels.
struct Tile {
  std::vector<std::string> vertex_labels;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> walls;

  int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
  const std::vector<int>& left_wall() const { return walls.front(); }
  const std::vector<int>& right_wall() const { return walls.back(); }
};

namespace detail {

inline void normalize_edges(std::vector<std::pair<int, int>>& edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace detail

inline void validate_tile(const Tile& tile) {
  if (tile.walls.size() < 2) throw DataError("tile: needs a left and a right wall");
  const int n = tile.vertex_count();
  for (const auto& e : tile.edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) throw DataError("tile: edge endpoint out of range");
    if (e.first == e.second) throw DataError("tile: self-loop");
  }
  for (const auto& wall : tile.walls) {
    std::set<int> seen;
    for (int v : wall) {
      if (v < 0 || v >= n) throw DataError("tile: wall vertex out of range");
      if (!seen.insert(v).second) throw DataError("tile: duplicate vertex in wall");
    }
  }
  for (int v : tile.left_wall())
    if (std::find(tile.right_wall().begin(), tile.right_wall().end(), v) != tile.right_wall().end())
      throw DataError("tile: vertex on both outer walls");
}

inline Tile make_tile(std::vector<std::string> labels, std::vector<std::pair<int, int>> edges, std::vector<std::vector<int>> walls) {
  Tile tile;
  tile.vertex_labels = std::move(labels);
  tile.edges = std::move(edges);
  tile.walls = std::move(walls);
  detail::normalize_edges(tile.edges);
  validate_tile(tile);
  return tile;
}

// Glues b onto a by identifying a's right wall with b's left wall,
// position by position. Labels of identified vertices follow a.
inline Tile join_two_tiles(const Tile& a, const Tile& b) {
  if (a.right_wall().size() != b.left_wall().size()) throw DataError("join_tiles: incompatible wall sizes");
  Tile out;
  out.vertex_labels = a.vertex_labels;
  out.edges = a.edges;
  out.walls = a.walls;

  std::vector<int> remap(static_cast<std::size_t>(b.vertex_count()), -1);
  for (std::size_t p = 0; p < b.left_wall().size(); ++p)
    remap[static_cast<std::size_t>(b.left_wall()[p])] = a.right_wall()[p];
  for (int v = 0; v < b.vertex_count(); ++v)
    if (remap[static_cast<std::size_t>(v)] < 0) {
      remap[static_cast<std::size_t>(v)] = out.vertex_count();
      out.vertex_labels.push_back(b.vertex_labels[static_cast<std::size_t>(v)]);
    }
  for (const auto& e : b.edges)
    out.edges.emplace_back(remap[static_cast<std::size_t>(e.first)], remap[static_cast<std::size_t>(e.second)]);
  detail::normalize_edges(out.edges);
  for (std::size_t w = 1; w < b.walls.size(); ++w) {
    std::vector<int> wall;
    wall.reserve(b.walls[w].size());
    for (int v : b.walls[w]) wall.push_back(remap[static_cast<std::size_t>(v)]);
    out.walls.push_back(std::move(wall));
  }
  validate_tile(out);
  return out;
}

inline Tile join_tiles(const std::vector<Tile>& tiles) {
  if (tiles.empty()) throw DataError("join_tiles: empty sequence");
  Tile out = tiles.front();
  validate_tile(out);
  for (std::size_t i = 1; i < tiles.size(); ++i) out = join_two_tiles(out, tiles[i]);
  return out;
}

namespace detail {

inline std::string timed_label(int timestamp, const std::string& name) {
  return "(t" + std::to_string(timestamp) + "," + name + ")";
}

// Category wall order: lowest rank first, so rank position doubles as the
// bottom-to-top drawing order.
inline std::vector<int> category_wall_order(const OpdInstance& inst) {
  if (inst.has_sigma) return inst.sigma.order();
  std::vector<int> order(static_cast<std::size_t>(inst.k()));
  for (int c = 0; c < inst.k(); ++c) order[static_cast<std::size_t>(c)] = c;
  return order;
}

}  // namespace detail

// One state-graph copy per interval, flanked by category walls; wall edges
// attach every state to the category its ranking assigns.
inline Tile total_learning_tile(const OpdInstance& inst, const LearningSpace& space, const RankingFunction& alpha) {
  if (!validate_learning_space(space).empty()) throw DataError("total_learning_tile: not a learning space");
  if (static_cast<int>(alpha.category_of_state.size()) != space.state_count()) throw DataError("total_learning_tile: ranking not total on the states");
  for (int cat : alpha.category_of_state)
    if (cat < 0 || cat >= inst.k()) throw DataError("total_learning_tile: ranking category out of range");

  const StateGraph graph = learning_space_graph(space);
  const std::vector<int> cat_order = detail::category_wall_order(inst);
  const int k = inst.k();
  std::vector<int> wall_pos(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) wall_pos[static_cast<std::size_t>(cat_order[static_cast<std::size_t>(p)])] = p;

  std::vector<Tile> pieces;
  for (int i = 1; i <= inst.m(); ++i) {
    std::vector<std::string> labels;
    std::vector<int> left(static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
      left[static_cast<std::size_t>(p)] = p;
      labels.push_back(detail::timed_label(i - 1, inst.categories.labels[static_cast<std::size_t>(cat_order[static_cast<std::size_t>(p)])]));
    }
    for (int p = 0; p < k; ++p) {
      right[static_cast<std::size_t>(p)] = k + p;
      labels.push_back(detail::timed_label(i, inst.categories.labels[static_cast<std::size_t>(cat_order[static_cast<std::size_t>(p)])]));
    }
    const int internal_base = 2 * k;
    for (int v = 0; v < space.state_count(); ++v) labels.push_back(detail::timed_label(i, space.state_label(v)));

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < space.state_count(); ++v) {
      const int p = wall_pos[static_cast<std::size_t>(alpha(v))];
      edges.emplace_back(left[static_cast<std::size_t>(p)], internal_base + v);
      edges.emplace_back(internal_base + v, right[static_cast<std::size_t>(p)]);
    }
    for (const auto& e : graph.edges) edges.emplace_back(internal_base + e.first, internal_base + e.second);
    pieces.push_back(make_tile(std::move(labels), std::move(edges), {left, right}));
  }
  return join_tiles(pieces);
}

// Panel whose tests record knowledge states; categories derive from the
// states through the ranking.
struct StatePanel {
  std::vector<std::string> subjects;
  CategorySet categories;
  SigmaOrdering sigma;
  LearningSpace space;
  RankingFunction alpha;
  std::vector<std::vector<int>> state_tests;

  int n() const { return static_cast<int>(subjects.size()); }
  int m() const { return static_cast<int>(state_tests.size()) - 1; }

  OpdInstance to_opd() const {
    OpdInstance inst;
    inst.subjects = subjects;
    inst.categories = categories;
    inst.has_sigma = true;
    inst.sigma = sigma;
    inst.tests.reserve(state_tests.size());
    for (const auto& row : state_tests) {
      std::vector<int> cats;
      cats.reserve(row.size());
      for (int state : row) cats.push_back(alpha(state));
      inst.tests.push_back(std::move(cats));
    }
    return inst;
  }
};

inline std::vector<std::string> validate_state_panel(const StatePanel& panel) {
  std::vector<std::string> violations = validate_learning_space(panel.space);
  if (static_cast<int>(panel.alpha.category_of_state.size()) != panel.space.state_count()) violations.push_back("ranking not total on the states");
  else
    for (int cat : panel.alpha.category_of_state)
      if (cat < 0 || cat >= panel.categories.size()) violations.push_back("ranking category out of range");
  if (panel.state_tests.size() < 2) violations.push_back("needs at least two timestamps");
  for (const auto& row : panel.state_tests) {
    if (static_cast<int>(row.size()) != panel.n()) violations.push_back("test row size mismatch");
    else
      for (int state : row)
        if (state < 0 || state >= panel.space.state_count()) violations.push_back("state index out of range");
  }
  if (static_cast<int>(panel.sigma.rank.size()) != panel.categories.size()) violations.push_back("sigma size mismatch");
  return violations;
}

namespace detail {

inline std::vector<int> bfs_distances(const StateGraph& graph, int source) {
  std::vector<int> dist(static_cast<std::size_t>(graph.vertex_count), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : graph.adjacency[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
  }
  return dist;
}

inline void check_panel_and_layout(const StatePanel& panel, const CombinatorialLayout& layout, const char* who) {
  const std::vector<std::string> violations = validate_state_panel(panel);
  if (!violations.empty()) throw DataError(std::string(who) + ": " + violations.front());
  if (!layout_is_valid(panel.to_opd(), layout)) throw DataError(std::string(who) + ": layout does not respect the category order");
}

// Walls of subject-indexed tiles: vertex id equals position offset + subject,
// wall sequence lists positions in pi order.
inline std::vector<int> subject_wall(const std::vector<int>& pi, int base) {
  std::vector<int> wall;
  wall.reserve(pi.size());
  for (int s : pi) wall.push_back(base + s);
  return wall;
}

}  // namespace detail

// Per interval: every vertex and edge lying on some shortest path between a
// subject's consecutive states, walls listing subjects in layout order.
inline Tile possibilistic_learning_tile(const StatePanel& panel, const CombinatorialLayout& layout) {
  detail::check_panel_and_layout(panel, layout, "possibilistic_learning_tile");
  const StateGraph graph = learning_space_graph(panel.space);
  const int n = panel.n();

  std::vector<Tile> pieces;
  for (int i = 1; i <= panel.m(); ++i) {
    std::set<int> used_states;
    std::set<std::pair<int, int>> used_edges;
    std::vector<std::pair<int, int>> endpoints(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      const int src = panel.state_tests[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)];
      const int dst = panel.state_tests[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      endpoints[static_cast<std::size_t>(s)] = {src, dst};
      const std::vector<int> ds = detail::bfs_distances(graph, src);
      const std::vector<int> dt = detail::bfs_distances(graph, dst);
      const int total = ds[static_cast<std::size_t>(dst)];
      if (total < 0) throw DataError("possibilistic_learning_tile: states not connected");
      for (int v = 0; v < graph.vertex_count; ++v)
        if (ds[static_cast<std::size_t>(v)] >= 0 && dt[static_cast<std::size_t>(v)] >= 0 && ds[static_cast<std::size_t>(v)] + dt[static_cast<std::size_t>(v)] == total)
          used_states.insert(v);
      for (const auto& e : graph.edges) {
        const int du = ds[static_cast<std::size_t>(e.first)], dv = ds[static_cast<std::size_t>(e.second)];
        const int ru = dt[static_cast<std::size_t>(e.first)], rv = dt[static_cast<std::size_t>(e.second)];
        if (du < 0 || dv < 0 || ru < 0 || rv < 0) continue;
        if (du + 1 + rv == total || dv + 1 + ru == total) used_edges.insert(e);
      }
    }

    std::map<int, int> state_vertex;
    std::vector<std::string> labels;
    std::vector<int> left = detail::subject_wall(layout.pis[static_cast<std::size_t>(i - 1)], 0);
    std::vector<int> right = detail::subject_wall(layout.pis[static_cast<std::size_t>(i)], n);
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i - 1, panel.subjects[static_cast<std::size_t>(s)]));
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i, panel.subjects[static_cast<std::size_t>(s)]));
    for (int v : used_states) {
      state_vertex[v] = static_cast<int>(labels.size());
      labels.push_back(detail::timed_label(i, panel.space.state_label(v)));
    }

    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < n; ++s) {
      edges.emplace_back(s, state_vertex.at(endpoints[static_cast<std::size_t>(s)].first));
      edges.emplace_back(state_vertex.at(endpoints[static_cast<std::size_t>(s)].second), n + s);
    }
    for (const auto& e : used_edges) edges.emplace_back(state_vertex.at(e.first), state_vertex.at(e.second));
    pieces.push_back(make_tile(std::move(labels), std::move(edges), {std::move(left), std::move(right)}));
  }
  return join_tiles(pieces);
}

// Like the possibilistic construction, but the internal graph is exactly the
// union of the walks the subjects actually took. traversed[i-1][s] is the
// state sequence of subject s across interval i.
inline Tile exact_learning_tile(const StatePanel& panel, const std::vector<std::vector<std::vector<int>>>& traversed, const CombinatorialLayout& layout) {
  detail::check_panel_and_layout(panel, layout, "exact_learning_tile");
  const StateGraph graph = learning_space_graph(panel.space);
  std::set<std::pair<int, int>> graph_edges(graph.edges.begin(), graph.edges.end());
  const int n = panel.n();
  if (static_cast<int>(traversed.size()) != panel.m()) throw DataError("exact_learning_tile: one path list per interval required");

  std::vector<Tile> pieces;
  for (int i = 1; i <= panel.m(); ++i) {
    const auto& walks = traversed[static_cast<std::size_t>(i - 1)];
    if (static_cast<int>(walks.size()) != n) throw DataError("exact_learning_tile: one path per subject required");
    std::set<int> used_states;
    std::set<std::pair<int, int>> used_edges;
    for (int s = 0; s < n; ++s) {
      const auto& walk = walks[static_cast<std::size_t>(s)];
      if (walk.empty()) throw DataError("exact_learning_tile: empty path");
      if (walk.front() != panel.state_tests[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)] || walk.back() != panel.state_tests[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)])
        throw DataError("exact_learning_tile: path endpoints disagree with the tests");
      for (std::size_t p = 0; p < walk.size(); ++p) {
        if (walk[p] < 0 || walk[p] >= panel.space.state_count()) throw DataError("exact_learning_tile: path state out of range");
        used_states.insert(walk[p]);
        if (p == 0) continue;
        std::pair<int, int> e{walk[p - 1], walk[p]};
        if (e.first > e.second) std::swap(e.first, e.second);
        if (!graph_edges.count(e)) throw DataError("exact_learning_tile: path step is not a state-graph edge");
        used_edges.insert(e);
      }
    }

    std::map<int, int> state_vertex;
    std::vector<std::string> labels;
    std::vector<int> left = detail::subject_wall(layout.pis[static_cast<std::size_t>(i - 1)], 0);
    std::vector<int> right = detail::subject_wall(layout.pis[static_cast<std::size_t>(i)], n);
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i - 1, panel.subjects[static_cast<std::size_t>(s)]));
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i, panel.subjects[static_cast<std::size_t>(s)]));
    for (int v : used_states) {
      state_vertex[v] = static_cast<int>(labels.size());
      labels.push_back(detail::timed_label(i, panel.space.state_label(v)));
    }

    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < n; ++s) {
      const auto& walk = walks[static_cast<std::size_t>(s)];
      edges.emplace_back(s, state_vertex.at(walk.front()));
      edges.emplace_back(state_vertex.at(walk.back()), n + s);
    }
    for (const auto& e : used_edges) edges.emplace_back(state_vertex.at(e.first), state_vertex.at(e.second));
    pieces.push_back(make_tile(std::move(labels), std::move(edges), {std::move(left), std::move(right)}));
  }
  return join_tiles(pieces);
}

// Pure matching tile of the layout: one subject edge per interval, walls in
// layout order.
inline Tile ordinal_panel_tile(const OpdInstance& inst, const CombinatorialLayout& layout) {
  if (inst.has_sigma) {
    if (!layout_is_valid(inst, layout)) throw DataError("ordinal_panel_tile: layout does not respect the category order");
  } else {
    if (static_cast<int>(layout.pis.size()) != inst.m() + 1) throw DataError("ordinal_panel_tile: layout size mismatch");
    for (const auto& pi : layout.pis) {
      std::vector<bool> seen(static_cast<std::size_t>(inst.n()), false);
      if (static_cast<int>(pi.size()) != inst.n()) throw DataError("ordinal_panel_tile: layout row size mismatch");
      for (int s : pi) {
        if (s < 0 || s >= inst.n() || seen[static_cast<std::size_t>(s)]) throw DataError("ordinal_panel_tile: layout row is not a permutation");
        seen[static_cast<std::size_t>(s)] = true;
      }
    }
  }
  const int n = inst.n();
  std::vector<Tile> pieces;
  for (int i = 1; i <= inst.m(); ++i) {
    std::vector<std::string> labels;
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i - 1, inst.subjects[static_cast<std::size_t>(s)]));
    for (int s = 0; s < n; ++s) labels.push_back(detail::timed_label(i, inst.subjects[static_cast<std::size_t>(s)]));
    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < n; ++s) edges.emplace_back(s, n + s);
    pieces.push_back(make_tile(std::move(labels), std::move(edges),
                               {detail::subject_wall(layout.pis[static_cast<std::size_t>(i - 1)], 0), detail::subject_wall(layout.pis[static_cast<std::size_t>(i)], n)}));
  }
  return join_tiles(pieces);
}

// Inversion count of the matching between each consecutive wall pair. For an
// ordinal panel tile this is the crossing count of drawing the walls as
// vertical lines in order.
inline std::vector<long long> ordinal_tile_inversions(const Tile& tile) {
  std::vector<long long> counts;
  for (std::size_t w = 0; w + 1 < tile.walls.size(); ++w) {
    const auto& left = tile.walls[w];
    const auto& right = tile.walls[w + 1];
    std::map<int, int> right_pos;
    for (std::size_t p = 0; p < right.size(); ++p) right_pos[right[p]] = static_cast<int>(p);
    std::vector<int> partner_pos;
    for (int v : left) {
      int partner = -1;
      for (const auto& e : tile.edges) {
        const int other = e.first == v ? e.second : (e.second == v ? e.first : -1);
        if (other < 0) continue;
        const auto it = right_pos.find(other);
        if (it == right_pos.end()) continue;
        if (partner >= 0) throw DataError("ordinal_tile_inversions: wall vertex with two matching edges");
        partner = it->second;
      }
      if (partner < 0) throw DataError("ordinal_tile_inversions: wall vertex without a matching edge");
      partner_pos.push_back(partner);
    }
    std::vector<int> buf;
    counts.push_back(detail::merge_count_inversions(partner_pos, buf));
  }
  return counts;
}

// Plain-text tile dump: vertex table, edge list, then one line per wall from
// left to right.
inline std::string tile_to_text(const Tile& tile) {
  std::string out = "vertices " + std::to_string(tile.vertex_count()) + "\n";
  for (int v = 0; v < tile.vertex_count(); ++v) out += std::to_string(v) + " " + tile.vertex_labels[static_cast<std::size_t>(v)] + "\n";
  out += "edges " + std::to_string(tile.edges.size()) + "\n";
  for (const auto& e : tile.edges) out += std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
  out += "walls " + std::to_string(tile.walls.size()) + "\n";
  for (const auto& wall : tile.walls) {
    std::string line;
    for (std::size_t p = 0; p < wall.size(); ++p) {
      if (p) line += " ";
      line += std::to_string(wall[p]);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace panelcross
