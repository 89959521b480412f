#pragma once

#include <vector>

#include "amalgams/amalgam.hpp"
#include "amalgams/automorphism.hpp"
#include "amalgams/error.hpp"
#include "amalgams/pointing.hpp"
#include "amalgams/subgroup_ops.hpp"

namespace amalgams {

/// A classical amalgam P1 <- B -> P2 with its derived data: Aut(B) and the
/// subgroups Ā_i = { ψ_i^-1 a ψ_i : a ∈ Aut(P_i), a(im ψ_i) = im ψ_i }.
struct GoldschmidtInstance {
  GroupPtr b;
  GroupPtr p1;
  GroupPtr p2;
  GroupMap psi1;
  GroupMap psi2;

  AutGroup aut_b;
  Subgroup abar1;
  Subgroup abar2;
};

namespace detail {

inline Subgroup restriction_image(const AutGroup& aut_b, const GroupMap& psi, std::size_t cap) {
  const AutGroup stab = relative_automorphism_group(psi.codomain(), {image(psi)}, cap);
  std::vector<Elem> seeds;
  for (Elem gen : stab.carrier()->generator_indices()) {
    const auto table = restrict_aut_table(stab.carrier()->element(gen).images(), image(psi), psi);
    seeds.push_back(*aut_b.index_of(table));
  }
  return subgroup_generated(aut_b.carrier(), seeds);
}

}  // namespace detail

inline GoldschmidtInstance make_goldschmidt(GroupPtr b, GroupPtr p1, GroupPtr p2, GroupMap psi1, GroupMap psi2,
                                            std::size_t cap = kDefaultCap) {
  if (psi1.domain() != b || psi2.domain() != b || psi1.codomain() != p1 || psi2.codomain() != p2) {
    throw Error(ErrorKind::ShapeMismatch, "ψ_i must map B into P_i");
  }
  if (!psi1.injective() || !psi2.injective()) throw Error(ErrorKind::NotInjective, "ψ_i must be injective");
  GoldschmidtInstance g{std::move(b), std::move(p1), std::move(p2), std::move(psi1), std::move(psi2), {}, {}, {}};
  g.aut_b = automorphism_group(g.b, cap);
  g.abar1 = detail::restriction_image(g.aut_b, g.psi1, cap);
  g.abar2 = detail::restriction_image(g.aut_b, g.psi2, cap);
  return g;
}

/// The classical amalgam as an amalgam over the double loop: one vertex with
/// group B, loop j carrying P_{j+1}, both darts of a loop sharing ψ.
inline AmalgamType goldschmidt_type(const GoldschmidtInstance& g) {
  return AmalgamType(
      make_amalgam(build_graph(1, {{0, 0}, {0, 0}}), {g.b}, {g.p1, g.p2}, {g.psi1, g.psi1, g.psi2, g.psi2}));
}

struct GoldschmidtClass {
  Elem representative;  // δ ∈ Aut(B), carrier index
  std::size_t size;
};

/// Double cosets Ā1 δ Ā2 in Aut(B), one per isomorphism class.
inline std::vector<GoldschmidtClass> goldschmidt_classes(const GoldschmidtInstance& g) {
  std::vector<GoldschmidtClass> out;
  for (const auto& dc : double_cosets(g.aut_b.carrier(), g.abar1, g.abar2)) {
    out.push_back({dc.representative, dc.members.size()});
  }
  return out;
}

/// The normalized pointing {id on loop 1, δ on loop 2} over the reference
/// graph of goldschmidt_type(g).
inline Pointing goldschmidt_pointing(const GoldschmidtInstance& g, const GraphOfGroups& c, Elem delta) {
  const auto imgs = g.aut_b.carrier()->element(delta).images();
  const auto d = c.vertex_auts.at(0).index_of(std::vector<Elem>(imgs.begin(), imgs.end()));
  if (!d) throw Error(ErrorKind::ShapeMismatch, "reference graph does not belong to this instance");
  return Pointing{{FiniteGroup::identity(), FiniteGroup::identity(), *d, *d}};
}

/// φ1 = ψ1, φ2 = ψ2 ∘ δ^-1.
inline Amalgam goldschmidt_amalgam(const GoldschmidtInstance& g, const AmalgamType& t, const GraphOfGroups& c,
                                   Elem delta) {
  return amalgam_from_pointing(t, c, goldschmidt_pointing(g, c, delta));
}

}  // namespace amalgams
