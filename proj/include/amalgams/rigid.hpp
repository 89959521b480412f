#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgams/classify.hpp"
#include "amalgams/error.hpp"
#include "amalgams/hom.hpp"
#include "amalgams/pointing.hpp"
#include "amalgams/subgroup_ops.hpp"

namespace amalgams {

/// C̃₀: the same vertex groups and maps, with each edge group cut down to a
/// subgroup Ã_e on which both α_e and α_ē are bijective onto their images.
/// Ã_e is shared by the two darts of an edge.
struct ReducedGraphOfGroups {
  GraphOfGroups base;
  std::vector<Subgroup> tilde;  // per geometric edge

  /// α̃_e^-1 on im α_e, per dart; entries outside the image are empty
  std::vector<std::vector<std::optional<Elem>>> lift;

  const Subgroup& tilde_of(Dart e) const { return tilde[OrientedGraph::edge_of(e)]; }
};

struct RigidityReport {
  std::optional<ReducedGraphOfGroups> reduced;
  std::optional<Dart> failing_dart;
  std::string reason;

  bool rigid() const noexcept { return reduced.has_value(); }
};

/// Searches, edge by edge, for a common complement of ker α_e and ker α_ē in
/// A_e. The first edge without one is reported through the dart whose own
/// kernel has no complement, or through its positive dart when each kernel
/// has a complement but no subgroup complements both.
inline RigidityReport is_rigid(const GraphOfGroups& c, std::uint64_t budget = kDefaultComplementBudget) {
  const auto& g = c.graph;
  RigidityReport out;
  ReducedGraphOfGroups r{c, {}, {}};
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const Dart e = OrientedGraph::positive_dart(j);
    const Dart eb = g.bar(e);
    const Subgroup k0 = kernel(c.alpha(e));
    const Subgroup k1 = kernel(c.alpha(eb));
    std::optional<Subgroup> t =
        k0 == k1 ? complement_of_normal(k0, budget) : common_complement({k0, k1}, budget);
    if (!t) {
      if (!complement_of_normal(k0, budget)) {
        out.failing_dart = e;
        out.reason = "ker of dart " + std::to_string(e) + " has no complement";
      } else if (!complement_of_normal(k1, budget)) {
        out.failing_dart = eb;
        out.reason = "ker of dart " + std::to_string(eb) + " has no complement";
      } else {
        out.failing_dart = e;
        out.reason = "kernels of darts " + std::to_string(e) + " and " + std::to_string(eb) +
                     " have no common complement";
      }
      return out;
    }
    r.tilde.push_back(std::move(*t));
  }
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& alpha = c.alpha(e);
    std::vector<std::optional<Elem>> lift(alpha.codomain()->order());
    for (Elem x : r.tilde_of(e).members()) lift[alpha(x)] = x;
    r.lift.push_back(std::move(lift));
  }
  out.reduced = std::move(r);
  return out;
}

/// The pointing classifier with edge elements restricted to Ã_e.
inline ClassificationReport classify_rigid(const ReducedGraphOfGroups& r, const ClassifyOptions& opt = {}) {
  std::vector<std::vector<Elem>> domains;
  for (const auto& t : r.tilde) domains.push_back(t.members());
  const auto tree = spanning_forest(r.base.graph, opt.tree_base);
  const PointingDecider decider(r.base, opt.decider_budget, &domains);
  return classify_pointings(normalized_pointings(r.base, tree, opt.enumeration_budget), decider, opt);
}

inline ClassificationReport classify_rigid(const GraphOfGroups& c, const ClassifyOptions& opt = {}) {
  auto rig = is_rigid(c);
  if (!rig.rigid()) throw Error(ErrorKind::NotRigid, rig.reason);
  return classify_rigid(*rig.reduced, opt);
}

inline ClassificationReport classify_rigid(const AmalgamType& t, const ClassifyOptions& opt = {}) {
  return classify_rigid(reference_graph(t, opt.cap), opt);
}

}  // namespace amalgams
