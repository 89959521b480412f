#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgams/error.hpp"

namespace amalgams {

using Vertex = std::uint32_t;
using Dart = std::uint32_t;

struct DartInfo {
  Vertex d0;
  Vertex d1;
  Dart bar;
};

/// Graph with every geometric edge doubled into two darts e, ē.
///
/// Geometric edge j (in input order) owns darts 2j (u -> v) and 2j+1 (v -> u).
/// Loops and multiple edges are allowed.
class OrientedGraph {
 public:
  OrientedGraph() = default;

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t dart_count() const noexcept { return darts_.size(); }
  std::size_t edge_count() const noexcept { return darts_.size() / 2; }

  Vertex d0(Dart e) const { return darts_[e].d0; }
  Vertex d1(Dart e) const { return darts_[e].d1; }
  Dart bar(Dart e) const { return darts_[e].bar; }
  static std::size_t edge_of(Dart e) noexcept { return e / 2; }
  static Dart positive_dart(std::size_t edge) noexcept { return static_cast<Dart>(2 * edge); }
  bool is_loop_edge(std::size_t edge) const { return darts_[2 * edge].d0 == darts_[2 * edge].d1; }

  /// Darts with tail v, ascending.
  const std::vector<Dart>& out_darts(Vertex v) const { return out_[v]; }

  friend bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

  const std::vector<std::pair<Vertex, Vertex>>& edge_list() const noexcept { return edges_; }

 private:
  friend OrientedGraph build_graph(std::size_t, const std::vector<std::pair<Vertex, Vertex>>&);

  std::size_t vertex_count_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<DartInfo> darts_;
  std::vector<std::vector<Dart>> out_;
};

inline OrientedGraph build_graph(std::size_t vertex_count,
                                 const std::vector<std::pair<Vertex, Vertex>>& edges) {
  OrientedGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = edges;
  g.out_.resize(vertex_count);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    auto [u, v] = edges[j];
    if (u >= vertex_count || v >= vertex_count) {
      throw Error(ErrorKind::InvalidVertex, "edge " + std::to_string(j) + " has an endpoint outside 0.." +
                                                std::to_string(vertex_count) + "-1");
    }
    const Dart e = static_cast<Dart>(2 * j);
    g.darts_.push_back({u, v, e + 1});
    g.darts_.push_back({v, u, e});
    g.out_[u].push_back(e);
    g.out_[v].push_back(e + 1);
  }
  for (auto& o : g.out_) std::sort(o.begin(), o.end());
  return g;
}

/// Breadth-first spanning forest. `parent_dart[v]` is the tree dart pointing
/// away from the root into v; roots have none.
struct SpanningTree {
  Vertex base = 0;
  std::vector<std::optional<Dart>> parent_dart;
  std::vector<Vertex> root_of;
  std::vector<Vertex> bfs_order;
  std::vector<bool> is_tree_edge;

  bool in_tree(Dart e) const { return is_tree_edge[OrientedGraph::edge_of(e)]; }
  std::size_t tree_dart_count() const {
    return static_cast<std::size_t>(std::count(is_tree_edge.begin(), is_tree_edge.end(), true));
  }

  /// Darts from `root_of[v]` down to v.
  std::vector<Dart> path_from_root(const OrientedGraph& g, Vertex v) const {
    std::vector<Dart> rev;
    while (parent_dart[v]) {
      rev.push_back(*parent_dart[v]);
      v = g.d0(*parent_dart[v]);
    }
    return {rev.rbegin(), rev.rend()};
  }
};

/// Spanning forest grown from `base` first, then from every unreached vertex
/// in index order.
inline SpanningTree spanning_forest(const OrientedGraph& g, Vertex base) {
  if (base >= g.vertex_count()) throw Error(ErrorKind::InvalidVertex, "base vertex out of range");
  SpanningTree t;
  t.base = base;
  t.parent_dart.assign(g.vertex_count(), std::nullopt);
  t.root_of.assign(g.vertex_count(), 0);
  t.is_tree_edge.assign(g.edge_count(), false);
  std::vector<bool> seen(g.vertex_count(), false);

  auto grow = [&](Vertex root) {
    std::deque<Vertex> queue{root};
    seen[root] = true;
    t.root_of[root] = root;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      t.bfs_order.push_back(v);
      for (Dart e : g.out_darts(v)) {
        Vertex w = g.d1(e);
        if (seen[w]) continue;
        seen[w] = true;
        t.parent_dart[w] = e;
        t.root_of[w] = root;
        t.is_tree_edge[OrientedGraph::edge_of(e)] = true;
        queue.push_back(w);
      }
    }
  };
  grow(base);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!seen[v]) grow(v);
  }
  return t;
}

inline bool is_connected(const OrientedGraph& g) {
  if (g.vertex_count() == 0) return true;
  const auto t = spanning_forest(g, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t.root_of[v] != 0) return false;
  }
  return true;
}

inline SpanningTree spanning_tree(const OrientedGraph& g, Vertex base) {
  SpanningTree t = spanning_forest(g, base);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t.root_of[v] != base) {
      throw Error(ErrorKind::Disconnected, "vertex " + std::to_string(v) + " is not reachable from base " +
                                               std::to_string(base));
    }
  }
  return t;
}

/// Closed edge path at the base: tree path to d0(b), the dart b, tree path
/// back from d1(b).
struct EdgeLoop {
  std::vector<Dart> to_tail;
  Dart dart = 0;
  std::vector<Dart> from_head;

  std::vector<Dart> edge_path() const {
    std::vector<Dart> p = to_tail;
    p.push_back(dart);
    p.insert(p.end(), from_head.begin(), from_head.end());
    return p;
  }
};

/// One loop per non-tree geometric edge (oriented by its lower-index dart);
/// these freely generate pi_1(Γ, base).
inline std::vector<EdgeLoop> free_generators(const OrientedGraph& g, const SpanningTree& t) {
  std::vector<EdgeLoop> loops;
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    if (t.is_tree_edge[j]) continue;
    const Dart b = OrientedGraph::positive_dart(j);
    if (t.root_of[g.d0(b)] != t.base) continue;
    EdgeLoop loop;
    loop.to_tail = t.path_from_root(g, g.d0(b));
    loop.dart = b;
    for (Dart e : t.path_from_root(g, g.d1(b))) loop.from_head.insert(loop.from_head.begin(), g.bar(e));
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace amalgams
