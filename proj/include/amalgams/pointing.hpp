#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amalgams/amalgam.hpp"
#include "amalgams/automorphism.hpp"
#include "amalgams/error.hpp"
#include "amalgams/graph.hpp"
#include "amalgams/group.hpp"
#include "amalgams/hom.hpp"

namespace amalgams {

inline constexpr std::uint64_t kDefaultDeciderBudget = 10'000'000;

/// Vertex groups A_i, edge groups A_e (one per geometric edge) and maps
/// α_e: A_e -> A_{d0(e)} per dart. The α_e need not be injective.
///
/// When the graph of groups is the reference graph of an amalgam type, the
/// AutGroup views are kept so that elements can be read as automorphisms of
/// the underlying G_i and G_e.
struct GraphOfGroups {
  OrientedGraph graph;
  std::vector<GroupPtr> vertex_groups;
  std::vector<GroupPtr> edge_groups;
  std::vector<GroupMap> edge_maps;

  std::vector<AutGroup> vertex_auts;
  std::vector<AutGroup> edge_auts;

  const GroupPtr& vertex_group_of_dart(Dart e) const { return vertex_groups[graph.d0(e)]; }
  const GroupMap& alpha(Dart e) const { return edge_maps[e]; }
};

inline GraphOfGroups make_graph_of_groups(OrientedGraph graph, std::vector<GroupPtr> vertex_groups,
                                          std::vector<GroupPtr> edge_groups, std::vector<GroupMap> edge_maps) {
  if (vertex_groups.size() != graph.vertex_count() || edge_groups.size() != graph.edge_count() ||
      edge_maps.size() != graph.dart_count()) {
    throw Error(ErrorKind::ShapeMismatch, "graph of groups data does not match the graph");
  }
  for (Dart e = 0; e < graph.dart_count(); ++e) {
    if (edge_maps[e].domain() != edge_groups[OrientedGraph::edge_of(e)] ||
        edge_maps[e].codomain() != vertex_groups[graph.d0(e)]) {
      throw Error(ErrorKind::ShapeMismatch, "edge map of dart " + std::to_string(e) + " has wrong groups");
    }
  }
  return GraphOfGroups{std::move(graph), std::move(vertex_groups), std::move(edge_groups), std::move(edge_maps),
                       {}, {}};
}

/// The reference graph of groups C0 of an amalgam type: A_i = Aut(G_i),
/// A_e = automorphisms of G_e leaving both image subgroups invariant, and
/// α_e(a) = ψ_e^-1 ∘ a ∘ ψ_e.
inline GraphOfGroups reference_graph(const AmalgamType& t, std::size_t cap = kDefaultCap) {
  const Amalgam& ref = t.reference();
  const auto& g = ref.graph();
  GraphOfGroups c;
  c.graph = g;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    c.vertex_auts.push_back(automorphism_group(ref.vertex_group(v), cap));
    c.vertex_groups.push_back(c.vertex_auts.back().carrier());
  }
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const Dart e = OrientedGraph::positive_dart(j);
    const AutGroup full = automorphism_group(ref.edge_groups()[j], cap);
    c.edge_auts.push_back(relative_automorphism_group(full, {t.image_of(e), t.image_of(g.bar(e))}, cap));
    c.edge_groups.push_back(c.edge_auts.back().carrier());
  }
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& edge_aut = c.edge_auts[OrientedGraph::edge_of(e)];
    const auto& vertex_aut = c.vertex_auts[g.d0(e)];
    std::vector<Elem> gen_images;
    for (Elem gen : edge_aut.carrier()->generator_indices()) {
      const auto table = restrict_aut_table(edge_aut.carrier()->element(gen).images(), t.image_of(e), t.psi(e));
      gen_images.push_back(*vertex_aut.index_of(table));
    }
    c.edge_maps.push_back(hom_from_gen_images(edge_aut.carrier(), vertex_aut.carrier(), std::move(gen_images)));
  }
  return c;
}

/// One vertex-group element δ_e ∈ A_{d0(e)} per dart. On a loop both darts
/// carry the same element.
struct Pointing {
  std::vector<Elem> delta;

  friend bool operator==(const Pointing&, const Pointing&) = default;
  friend auto operator<=>(const Pointing&, const Pointing&) = default;
};

inline Pointing identity_pointing(const GraphOfGroups& c) {
  return Pointing{std::vector<Elem>(c.graph.dart_count(), FiniteGroup::identity())};
}

inline void validate_pointing(const GraphOfGroups& c, const Pointing& p) {
  const auto& g = c.graph;
  if (p.delta.size() != g.dart_count()) throw Error(ErrorKind::ShapeMismatch, "pointing has wrong dart count");
  for (Dart e = 0; e < g.dart_count(); ++e) {
    if (p.delta[e] >= c.vertex_group_of_dart(e)->order()) {
      throw Error(ErrorKind::ShapeMismatch, "δ of dart " + std::to_string(e) + " outside A_d0(e)");
    }
    if (g.d0(e) == g.d1(e) && p.delta[e] != p.delta[g.bar(e)]) {
      throw Error(ErrorKind::ShapeMismatch, "loop darts carry different δ");
    }
  }
}

/// δ_e = φ_e^-1 ∘ ψ_e.
inline Pointing pointing_from_amalgam(const AmalgamType& t, const GraphOfGroups& c, const Amalgam& a) {
  if (!same_type(a, t)) throw Error(ErrorKind::TypeMismatch, "amalgam is not of the given type");
  const auto& g = a.graph();
  Pointing p;
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto back = inverse_on_image(a.inclusion(e));
    const auto& psi = t.psi(e);
    std::vector<Elem> table(psi.domain()->order());
    for (Elem x = 0; x < table.size(); ++x) table[x] = *back[psi(x)];
    p.delta.push_back(*c.vertex_auts[g.d0(e)].index_of(table));
  }
  return p;
}

/// φ_e = ψ_e ∘ δ_e^-1.
inline Amalgam amalgam_from_pointing(const AmalgamType& t, const GraphOfGroups& c, const Pointing& p) {
  validate_pointing(c, p);
  const Amalgam& ref = t.reference();
  const auto& g = ref.graph();
  std::vector<GroupMap> inclusions;
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& aut = c.vertex_auts[g.d0(e)];
    const Elem inv = aut.carrier()->inv(p.delta[e]);
    const auto& psi = t.psi(e);
    std::vector<Elem> table(psi.domain()->order());
    for (Elem x = 0; x < table.size(); ++x) table[x] = psi(aut.apply(inv, x));
    inclusions.push_back(GroupMap::from_table(psi.domain(), psi.codomain(), std::move(table)));
  }
  return make_amalgam(g, ref.vertex_groups(), ref.edge_groups(), std::move(inclusions));
}

/// {a_i, a_e} inducing an isomorphism of pointings p1 -> p2:
/// δ¹_e α_e(a_e) = a_{d0(e)} δ²_e on every dart.
struct PointingWitness {
  std::vector<Elem> vertex;
  std::vector<Elem> edge;  // per geometric edge

  friend bool operator==(const PointingWitness&, const PointingWitness&) = default;
};

inline bool verify_pointing_witness(const GraphOfGroups& c, const Pointing& p1, const Pointing& p2,
                                    const PointingWitness& w) {
  const auto& g = c.graph;
  if (w.vertex.size() != g.vertex_count() || w.edge.size() != g.edge_count()) return false;
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& av = *c.vertex_group_of_dart(e);
    const Elem lhs = av.mul(p1.delta[e], c.alpha(e)(w.edge[OrientedGraph::edge_of(e)]));
    const Elem rhs = av.mul(w.vertex[g.d0(e)], p2.delta[e]);
    if (lhs != rhs) return false;
  }
  return true;
}

enum class DeciderMode {
  /// iterate edge elements, solve for vertex elements
  EdgeFirst,
  /// iterate vertex elements, test membership in the joint edge image
  VertexFirst,
};

/// Decides isomorphism of pointings over a fixed graph of groups.
///
/// Each geometric edge contributes the pairs (α_e(x), α_ē(x)); elements with
/// equal pairs are interchangeable, so only the first x per pair is kept. An
/// optional per-edge restriction limits x to a subset of A_e.
class PointingDecider {
 public:
  explicit PointingDecider(const GraphOfGroups& c, std::uint64_t budget = kDefaultDeciderBudget,
                           const std::vector<std::vector<Elem>>* edge_domains = nullptr)
      : c_(&c), budget_(budget) {
    const auto& g = c.graph;
    joint_.resize(g.edge_count());
    lookup_.resize(g.edge_count());
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
      const Dart e = OrientedGraph::positive_dart(j);
      const Dart eb = g.bar(e);
      std::vector<Elem> domain;
      if (edge_domains) {
        domain = (*edge_domains)[j];
      } else {
        for (Elem x = 0; x < c.edge_groups[j]->order(); ++x) domain.push_back(x);
      }
      for (Elem x : domain) {
        const Elem u = c.alpha(e)(x);
        const Elem v = c.alpha(eb)(x);
        const auto key = pair_key(u, v);
        if (lookup_[j].emplace(key, x).second) joint_[j].push_back({x, u, v});
      }
    }
    if (g.vertex_count() > 0) {
      const auto forest = spanning_forest(g, 0);
      std::vector<bool> listed(g.edge_count(), false);
      for (Vertex v : forest.bfs_order) {
        for (Dart e : g.out_darts(v)) {
          const auto j = OrientedGraph::edge_of(e);
          if (!listed[j]) {
            listed[j] = true;
            edge_order_.push_back(j);
          }
        }
      }
    }
  }

  std::optional<PointingWitness> isomorphic(const Pointing& p1, const Pointing& p2,
                                            DeciderMode mode = DeciderMode::EdgeFirst) const {
    return mode == DeciderMode::EdgeFirst ? edge_first(p1, p2) : vertex_first(p1, p2);
  }

 private:
  struct JointImage {
    Elem x;
    Elem tail;  // α_e(x)
    Elem head;  // α_ē(x)
  };

  static std::uint64_t pair_key(Elem u, Elem v) { return (static_cast<std::uint64_t>(u) << 32) | v; }

  void tick(std::uint64_t& nodes) const {
    if (++nodes > budget_) {
      throw Error(ErrorKind::BudgetExceeded, "pointing decider exceeded " + std::to_string(budget_) + " nodes");
    }
  }

  std::optional<PointingWitness> edge_first(const Pointing& p1, const Pointing& p2) const {
    const auto& c = *c_;
    const auto& g = c.graph;
    std::vector<std::optional<Elem>> a(g.vertex_count());
    std::vector<Elem> edge(g.edge_count(), FiniteGroup::identity());
    std::uint64_t nodes = 0;

    // a_{d0(e)} = δ¹_e α_e(x) (δ²_e)^-1
    auto solve = [&](Dart e, Elem alpha_x) {
      const auto& av = *c.vertex_group_of_dart(e);
      return av.mul(av.mul(p1.delta[e], alpha_x), av.inv(p2.delta[e]));
    };

    auto search = [&](auto&& self, std::size_t depth) -> bool {
      tick(nodes);
      if (depth == edge_order_.size()) return true;
      const std::size_t j = edge_order_[depth];
      const Dart e = OrientedGraph::positive_dart(j);
      const Dart eb = g.bar(e);
      const Vertex u = g.d0(e);
      const Vertex v = g.d1(e);
      for (const auto& cand : joint_[j]) {
        const Elem au = solve(e, cand.tail);
        const Elem av = solve(eb, cand.head);
        if (u == v && au != av) continue;
        if (a[u] && *a[u] != au) continue;
        if (a[v] && *a[v] != av) continue;
        const bool set_u = !a[u];
        if (set_u) a[u] = au;
        const bool set_v = !a[v];
        if (set_v) a[v] = av;
        edge[j] = cand.x;
        if (self(self, depth + 1)) return true;
        if (set_v) a[v].reset();
        if (set_u) a[u].reset();
      }
      return false;
    };
    if (!search(search, 0)) return std::nullopt;
    PointingWitness w;
    for (Vertex v = 0; v < g.vertex_count(); ++v) w.vertex.push_back(a[v].value_or(FiniteGroup::identity()));
    w.edge = std::move(edge);
    return w;
  }

  std::optional<PointingWitness> vertex_first(const Pointing& p1, const Pointing& p2) const {
    const auto& c = *c_;
    const auto& g = c.graph;
    const std::size_t n = g.vertex_count();
    std::vector<Elem> a(n, FiniteGroup::identity());
    std::vector<Elem> edge(g.edge_count(), FiniteGroup::identity());
    std::uint64_t nodes = 0;

    // edges whose larger endpoint is v are checked once v is assigned
    std::vector<std::vector<std::size_t>> closing(n);
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
      const Dart e = OrientedGraph::positive_dart(j);
      closing[std::max(g.d0(e), g.d1(e))].push_back(j);
    }
    // required α_e(x) = (δ¹_e)^-1 a_{d0(e)} δ²_e
    auto needed = [&](Dart e) {
      const auto& av = *c.vertex_group_of_dart(e);
      return av.mul(av.mul(av.inv(p1.delta[e]), a[g.d0(e)]), p2.delta[e]);
    };

    auto search = [&](auto&& self, Vertex v) -> bool {
      tick(nodes);
      if (v == n) return true;
      const bool isolated = g.out_darts(v).empty();
      const Elem limit = isolated ? 1 : static_cast<Elem>(c.vertex_groups[v]->order());
      for (Elem x = 0; x < limit; ++x) {
        a[v] = x;
        bool ok = true;
        for (std::size_t j : closing[v]) {
          const Dart e = OrientedGraph::positive_dart(j);
          auto it = lookup_[j].find(pair_key(needed(e), needed(g.bar(e))));
          if (it == lookup_[j].end()) {
            ok = false;
            break;
          }
          edge[j] = it->second;
        }
        if (ok && self(self, v + 1)) return true;
      }
      return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return PointingWitness{a, edge};
  }

  const GraphOfGroups* c_;
  std::uint64_t budget_;
  std::vector<std::vector<JointImage>> joint_;
  std::vector<std::unordered_map<std::uint64_t, Elem>> lookup_;
  std::vector<std::size_t> edge_order_;
};

inline std::optional<PointingWitness> pointings_isomorphic(const GraphOfGroups& c, const Pointing& p1,
                                                           const Pointing& p2,
                                                           DeciderMode mode = DeciderMode::EdgeFirst,
                                                           std::uint64_t budget = kDefaultDeciderBudget) {
  validate_pointing(c, p1);
  validate_pointing(c, p2);
  return PointingDecider(c, budget).isomorphic(p1, p2, mode);
}

/// The dart each vertex uses to absorb its δ: for a non-root vertex the tree
/// dart pointing back to its parent, for a root its lowest outgoing dart.
/// Isolated vertices have none.
inline std::vector<std::optional<Dart>> normalizing_darts(const OrientedGraph& g, const SpanningTree& t) {
  std::vector<std::optional<Dart>> chosen(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t.parent_dart[v]) {
      chosen[v] = g.bar(*t.parent_dart[v]);
    } else if (!g.out_darts(v).empty()) {
      chosen[v] = g.out_darts(v).front();
    }
  }
  return chosen;
}

/// Darts whose δ is forced to the identity by normalization (a loop's partner
/// dart included).
inline std::vector<bool> normalized_dart_mask(const OrientedGraph& g, const SpanningTree& t) {
  std::vector<bool> mask(g.dart_count(), false);
  for (const auto& d : normalizing_darts(g, t)) {
    if (!d) continue;
    mask[*d] = true;
    if (g.d0(*d) == g.d1(*d)) mask[g.bar(*d)] = true;
  }
  return mask;
}

struct NormalizedPointing {
  Pointing pointing;
  PointingWitness witness;  // from the input to `pointing`
};

/// Sets a_v = δ of the vertex's normalizing dart and a_e = 1; the result has
/// δ = 1 on every normalizing dart, δ'_e = a_{d0(e)}^-1 δ_e elsewhere.
inline NormalizedPointing normalize_on_tree(const GraphOfGroups& c, const Pointing& p, const SpanningTree& t) {
  validate_pointing(c, p);
  const auto& g = c.graph;
  const auto chosen = normalizing_darts(g, t);
  NormalizedPointing out;
  out.witness.vertex.assign(g.vertex_count(), FiniteGroup::identity());
  out.witness.edge.assign(g.edge_count(), FiniteGroup::identity());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (chosen[v]) out.witness.vertex[v] = p.delta[*chosen[v]];
  }
  out.pointing.delta.resize(g.dart_count());
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& av = *c.vertex_group_of_dart(e);
    out.pointing.delta[e] = av.mul(av.inv(out.witness.vertex[g.d0(e)]), p.delta[e]);
  }
  return out;
}

}  // namespace amalgams
