#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/graph.hpp"
#include "amalgams/group.hpp"
#include "amalgams/hom.hpp"
#include "amalgams/subgroup_ops.hpp"

namespace amalgams {

/// Vertex groups G_i, edge groups G_e (one per geometric edge, shared by both
/// darts) and an injective inclusion φ_e: G_{d0(e)} -> G_e per dart.
///
/// For a loop the vertex meets the edge once, so both darts carry the same
/// inclusion map; make_amalgam enforces this.
class Amalgam {
 public:
  Amalgam() = default;

  const OrientedGraph& graph() const noexcept { return graph_; }
  const std::vector<GroupPtr>& vertex_groups() const noexcept { return vertex_groups_; }
  const std::vector<GroupPtr>& edge_groups() const noexcept { return edge_groups_; }
  const GroupPtr& vertex_group(Vertex v) const { return vertex_groups_[v]; }
  const GroupPtr& edge_group_of_dart(Dart e) const { return edge_groups_[OrientedGraph::edge_of(e)]; }
  const std::vector<GroupMap>& inclusions() const noexcept { return inclusions_; }
  const GroupMap& inclusion(Dart e) const { return inclusions_[e]; }
  /// φ_e(G_{d0(e)}) ≤ G_e
  const Subgroup& image_of(Dart e) const { return images_[e]; }

  bool same_groups(const Amalgam& other) const {
    return graph_ == other.graph_ && vertex_groups_ == other.vertex_groups_ &&
           edge_groups_ == other.edge_groups_;
  }

 private:
  friend Amalgam make_amalgam(OrientedGraph, std::vector<GroupPtr>, std::vector<GroupPtr>,
                              std::vector<GroupMap>);

  OrientedGraph graph_;
  std::vector<GroupPtr> vertex_groups_;
  std::vector<GroupPtr> edge_groups_;
  std::vector<GroupMap> inclusions_;
  std::vector<Subgroup> images_;
};

inline Amalgam make_amalgam(OrientedGraph graph, std::vector<GroupPtr> vertex_groups,
                            std::vector<GroupPtr> edge_groups, std::vector<GroupMap> inclusions) {
  if (vertex_groups.size() != graph.vertex_count() || edge_groups.size() != graph.edge_count() ||
      inclusions.size() != graph.dart_count()) {
    throw Error(ErrorKind::ShapeMismatch, "group or inclusion count does not match the graph");
  }
  for (Dart e = 0; e < graph.dart_count(); ++e) {
    const auto& f = inclusions[e];
    if (f.domain() != vertex_groups[graph.d0(e)] || f.codomain() != edge_groups[OrientedGraph::edge_of(e)]) {
      throw Error(ErrorKind::ShapeMismatch, "inclusion of dart " + std::to_string(e) +
                                                " does not map G_d0(e) into G_e");
    }
    if (!f.injective()) {
      throw Error(ErrorKind::NotInjective, "inclusion of dart " + std::to_string(e) + " is not injective");
    }
    if (graph.d0(e) == graph.d1(e) && !(f == inclusions[graph.bar(e)])) {
      throw Error(ErrorKind::ShapeMismatch,
                  "loop dart " + std::to_string(e) + " and its reverse carry different inclusions");
    }
  }
  Amalgam a;
  a.graph_ = std::move(graph);
  a.vertex_groups_ = std::move(vertex_groups);
  a.edge_groups_ = std::move(edge_groups);
  a.inclusions_ = std::move(inclusions);
  for (const auto& f : a.inclusions_) a.images_.push_back(image(f));
  return a;
}

/// The fixed reference amalgam A0 (maps ψ_e) whose images Ḡ_{d0(e)} every
/// amalgam of this type must share.
class AmalgamType {
 public:
  AmalgamType() = default;
  explicit AmalgamType(Amalgam reference) : reference_(std::move(reference)) {}

  const Amalgam& reference() const noexcept { return reference_; }
  const OrientedGraph& graph() const noexcept { return reference_.graph(); }
  const GroupMap& psi(Dart e) const { return reference_.inclusion(e); }
  const Subgroup& image_of(Dart e) const { return reference_.image_of(e); }

 private:
  Amalgam reference_;
};

/// True iff a has the same image subgroups as the reference.
inline bool same_type(const Amalgam& a, const AmalgamType& t) {
  if (!(a.graph() == t.graph())) throw Error(ErrorKind::GraphMismatch, "amalgams over different graphs");
  if (!a.same_groups(t.reference())) {
    throw Error(ErrorKind::TypeMismatch, "amalgam does not use the reference groups");
  }
  for (Dart e = 0; e < a.graph().dart_count(); ++e) {
    if (!(a.image_of(e) == t.image_of(e))) return false;
  }
  return true;
}

struct CompletionCandidate {
  GroupPtr target;
  std::vector<GroupMap> vertex_maps;  // φ_i: G_i -> target
  std::vector<GroupMap> edge_maps;    // φ_e: G_e -> target, per geometric edge
};

struct CompletionCheck {
  bool valid = false;
  bool nontrivial = false;
};

/// Checks φ_e ∘ φ_{d0(e),e} = φ_{d0(e)} for every dart.
inline CompletionCheck check_completion(const Amalgam& a, const CompletionCandidate& c) {
  const auto& g = a.graph();
  if (c.vertex_maps.size() != g.vertex_count() || c.edge_maps.size() != g.edge_count()) {
    throw Error(ErrorKind::ShapeMismatch, "completion has the wrong number of maps");
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (c.vertex_maps[v].domain() != a.vertex_group(v) || c.vertex_maps[v].codomain() != c.target) {
      throw Error(ErrorKind::ShapeMismatch, "vertex map " + std::to_string(v) + " has wrong domain/codomain");
    }
  }
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    if (c.edge_maps[j].domain() != a.edge_groups()[j] || c.edge_maps[j].codomain() != c.target) {
      throw Error(ErrorKind::ShapeMismatch, "edge map " + std::to_string(j) + " has wrong domain/codomain");
    }
  }
  CompletionCheck out;
  out.valid = true;
  for (Dart e = 0; e < g.dart_count() && out.valid; ++e) {
    const auto& incl = a.inclusion(e);
    const auto& edge_map = c.edge_maps[OrientedGraph::edge_of(e)];
    const auto& vertex_map = c.vertex_maps[g.d0(e)];
    for (Elem x = 0; x < incl.domain()->order(); ++x) {
      if (edge_map(incl(x)) != vertex_map(x)) {
        out.valid = false;
        break;
      }
    }
  }
  auto moves = [](const GroupMap& f) {
    for (Elem y : f.element_images()) {
      if (y != FiniteGroup::identity()) return true;
    }
    return false;
  };
  for (const auto& f : c.vertex_maps) out.nontrivial = out.nontrivial || moves(f);
  for (const auto& f : c.edge_maps) out.nontrivial = out.nontrivial || moves(f);
  return out;
}

/// Multiplication-table presentation of the universal completion: one
/// generator per element of every vertex and edge group, every group's
/// multiplication table, and x = φ_e(x) for every dart.
inline std::string emit_presentation(const Amalgam& a) {
  const auto& g = a.graph();
  std::ostringstream out;
  auto name = [](char slot, std::size_t idx, Elem x) {
    return std::string(1, slot) + std::to_string(idx) + "[" + std::to_string(x) + "]";
  };
  std::vector<std::string> gens;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Elem x = 0; x < a.vertex_group(v)->order(); ++x) gens.push_back(name('v', v, x));
  }
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    for (Elem x = 0; x < a.edge_groups()[j]->order(); ++x) gens.push_back(name('e', j, x));
  }
  out << "generators " << gens.size() << ":";
  for (const auto& s : gens) out << ' ' << s;
  out << '\n';
  auto table = [&](char slot, std::size_t idx, const FiniteGroup& grp) {
    out << name(slot, idx, 0) << " = 1\n";
    for (Elem x = 0; x < grp.order(); ++x) {
      for (Elem y = 0; y < grp.order(); ++y) {
        out << name(slot, idx, x) << " * " << name(slot, idx, y) << " = " << name(slot, idx, grp.mul(x, y))
            << '\n';
      }
    }
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) table('v', v, *a.vertex_group(v));
  for (std::size_t j = 0; j < g.edge_count(); ++j) table('e', j, *a.edge_groups()[j]);
  for (Dart e = 0; e < g.dart_count(); ++e) {
    if (g.d0(e) == g.d1(e) && (e & 1u)) continue;  // loop darts share one inclusion
    const auto& incl = a.inclusion(e);
    for (Elem x = 0; x < incl.domain()->order(); ++x) {
      out << name('v', g.d0(e), x) << " = " << name('e', OrientedGraph::edge_of(e), incl(x)) << '\n';
    }
  }
  return out.str();
}

struct DSubgroups {
  Subgroup dbar;  // ≤ G_e
  Subgroup d;     // ≤ G_{d0(e)}
};

/// D̄_e = N_{G_e}(Ḡ_{d1(e)}) ∩ Ḡ_{d0(e)} and its pullback along φ_e.
inline DSubgroups compute_D(const Amalgam& a, Dart e) {
  if (e >= a.graph().dart_count()) throw Error(ErrorKind::ShapeMismatch, "dart out of range");
  const auto& ge = a.edge_group_of_dart(e);
  Subgroup dbar = intersect(normalizer(ge, a.image_of(a.graph().bar(e))), a.image_of(e));
  Subgroup d = preimage(a.inclusion(e), dbar);
  return {std::move(dbar), std::move(d)};
}

/// (D1): darts with a common tail pull D̄ back to the same subgroup.
inline bool check_D1(const Amalgam& a) {
  const auto& g = a.graph();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& out = g.out_darts(v);
    if (out.size() < 2) continue;
    const Subgroup first = compute_D(a, out.front()).d;
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (!(compute_D(a, out[k]).d == first)) return false;
    }
  }
  return true;
}

/// (D2): φ_e^-1(D̄_e) = ψ_e^-1(D̄_e) for every dart.
inline bool check_D2(const Amalgam& a, const AmalgamType& t) {
  if (!same_type(a, t)) throw Error(ErrorKind::TypeMismatch, "amalgam is not of the given type");
  for (Dart e = 0; e < a.graph().dart_count(); ++e) {
    const auto ds = compute_D(a, e);
    if (!(ds.d == preimage(t.psi(e), ds.dbar))) return false;
  }
  return true;
}

}  // namespace amalgams
