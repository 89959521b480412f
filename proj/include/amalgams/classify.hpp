#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amalgams/amalgam.hpp"
#include "amalgams/error.hpp"
#include "amalgams/oracle.hpp"
#include "amalgams/parallel.hpp"
#include "amalgams/pointing.hpp"

namespace amalgams {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000;

struct ClassifyOptions {
  Vertex tree_base = 0;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  std::uint64_t decider_budget = kDefaultDeciderBudget;
  DeciderMode mode = DeciderMode::EdgeFirst;
  Execution execution = Execution::Serial;
  std::size_t cap = kDefaultCap;
};

struct PointingClass {
  Pointing representative;
  std::vector<std::size_t> members;          // indices into ClassificationReport::enumerated
  std::vector<PointingWitness> witnesses;    // representative -> member, aligned with members
};

struct ClassificationReport {
  std::vector<Pointing> enumerated;
  std::vector<PointingClass> classes;
  std::vector<std::size_t> class_of;  // per enumerated pointing

  std::size_t class_count() const noexcept { return classes.size(); }
  std::size_t examined() const noexcept { return enumerated.size(); }
};

/// All pointings that are the identity on the normalizing darts of the
/// spanning forest. Free darts vary over A_{d0(e)}; a loop contributes a
/// single free value. Enumeration order is lexicographic in dart order.
inline std::vector<Pointing> normalized_pointings(const GraphOfGroups& c, const SpanningTree& t,
                                                  std::uint64_t budget) {
  const auto& g = c.graph;
  const auto mask = normalized_dart_mask(g, t);
  std::vector<Dart> slots;
  for (Dart e = 0; e < g.dart_count(); ++e) {
    if (mask[e]) continue;
    if (g.d0(e) == g.d1(e) && (e & 1u)) continue;  // loop partner follows dart e-1
    slots.push_back(e);
  }
  std::uint64_t total = 1;
  for (Dart e : slots) {
    total *= c.vertex_group_of_dart(e)->order();
    if (total > budget) {
      throw Error(ErrorKind::BudgetExceeded, "normalized pointing space exceeds enumeration budget " +
                                                 std::to_string(budget));
    }
  }
  std::vector<Pointing> out;
  out.reserve(total);
  std::vector<Elem> digits(slots.size(), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    Pointing p{std::vector<Elem>(g.dart_count(), FiniteGroup::identity())};
    for (std::size_t s = 0; s < slots.size(); ++s) {
      p.delta[slots[s]] = digits[s];
      if (g.d0(slots[s]) == g.d1(slots[s])) p.delta[g.bar(slots[s])] = digits[s];
    }
    out.push_back(std::move(p));
    for (std::size_t s = slots.size(); s-- > 0;) {
      if (++digits[s] < c.vertex_group_of_dart(slots[s])->order()) break;
      digits[s] = 0;
    }
  }
  return out;
}

/// Partitions the given pointings into isomorphism classes. The first member
/// met in input order represents its class.
inline ClassificationReport classify_pointings(std::vector<Pointing> pointings,
                                               const PointingDecider& decider, const ClassifyOptions& opt) {
  ClassificationReport report;
  report.enumerated = std::move(pointings);
  const auto& ps = report.enumerated;
  Partition part = partition_by(
      ps.size(),
      [&](std::size_t rep, std::size_t i) { return decider.isomorphic(ps[rep], ps[i], opt.mode).has_value(); },
      opt.execution);
  report.class_of = part.class_of;
  for (std::size_t r : part.representatives) report.classes.push_back({ps[r], {}, {}});
  std::vector<std::optional<PointingWitness>> witness(ps.size());
  parallel_for(ps.size(), opt.execution, [&](std::size_t i) {
    witness[i] = decider.isomorphic(ps[part.representatives[part.class_of[i]]], ps[i], opt.mode);
  });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto& cls = report.classes[part.class_of[i]];
    cls.members.push_back(i);
    cls.witnesses.push_back(*witness[i]);
  }
  return report;
}

/// Isomorphism classes of amalgams of type t, computed as classes of
/// normalized pointings of the reference graph.
inline ClassificationReport classify(const GraphOfGroups& c, const ClassifyOptions& opt = {}) {
  const auto tree = spanning_forest(c.graph, opt.tree_base);
  const PointingDecider decider(c, opt.decider_budget);
  return classify_pointings(normalized_pointings(c, tree, opt.enumeration_budget), decider, opt);
}

inline ClassificationReport classify(const AmalgamType& t, const ClassifyOptions& opt = {}) {
  return classify(reference_graph(t, opt.cap), opt);
}

}  // namespace amalgams
