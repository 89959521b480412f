#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/group.hpp"
#include "amalgams/hom.hpp"

namespace amalgams {

/// An automorphism is a bijective GroupMap from a group to itself.
using Automorphism = GroupMap;

inline Automorphism make_automorphism(const GroupPtr& g, std::vector<Elem> images) {
  GroupMap f = GroupMap::from_table(g, g, std::move(images));
  if (!f.bijective()) throw Error(ErrorKind::NotInjective, "automorphism table is not bijective");
  return f;
}

/// A group of automorphisms of `base`, materialized as a permutation group
/// (the carrier) acting on the element indices of `base`. Carrier products are
/// compositions: carrier(a * b) = a after b.
class AutGroup {
 public:
  AutGroup() = default;
  AutGroup(GroupPtr base, GroupPtr carrier) : base_(std::move(base)), carrier_(std::move(carrier)) {}

  const GroupPtr& base() const noexcept { return base_; }
  const GroupPtr& carrier() const noexcept { return carrier_; }
  std::size_t order() const noexcept { return carrier_->order(); }

  /// Image of base element x under carrier element a.
  Elem apply(Elem a, Elem x) const { return carrier_->element(a)[x]; }

  Automorphism automorphism(Elem a) const {
    const auto imgs = carrier_->element(a).images();
    return GroupMap::from_table(base_, base_, std::vector<Elem>(imgs.begin(), imgs.end()));
  }

  std::optional<Elem> index_of(const std::vector<Elem>& images) const {
    return carrier_->index_of(Perm(images));
  }

 private:
  GroupPtr base_;
  GroupPtr carrier_;
};

/// Inner automorphism ad(x): y -> x^-1 y x.
inline Automorphism conjugation(Elem x, const GroupPtr& g) {
  if (x >= g->order()) throw Error(ErrorKind::ShapeMismatch, "element outside group");
  std::vector<Elem> images(g->order());
  for (Elem y = 0; y < g->order(); ++y) images[y] = g->conj(y, x);
  return GroupMap::from_table(g, g, std::move(images));
}

namespace detail {

/// Conjugacy class size of every element.
inline std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> size(g.order(), 0);
  std::vector<bool> done(g.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Elem> cls{x};
    done[x] = true;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (Elem s : g.generator_indices()) {
        Elem y = g.conj(cls[i], s);
        if (!done[y]) {
          done[y] = true;
          cls.push_back(y);
        }
      }
    }
    for (Elem y : cls) size[y] = cls.size();
  }
  return size;
}

inline GroupPtr carrier_from_perms(std::size_t degree, std::vector<Perm> perms, std::size_t cap) {
  std::sort(perms.begin(), perms.end());
  std::vector<Perm> gens;
  GroupPtr span = generate_group(degree, {}, cap);
  for (const auto& p : perms) {
    if (span->index_of(p)) continue;
    gens.push_back(p);
    span = generate_group(degree, gens, cap);
    if (span->order() == perms.size()) break;
  }
  if (span->order() != perms.size()) {
    throw Error(ErrorKind::ShapeMismatch, "automorphism set is not closed");
  }
  return span;
}

}  // namespace detail

/// Full automorphism group by generator-image search. Candidate images for
/// each generator are restricted to elements of equal order and equal
/// conjugacy-class size; every candidate tuple is tested with
/// hom_from_gen_images and kept if bijective.
inline AutGroup automorphism_group(const GroupPtr& g, std::size_t cap = kDefaultCap) {
  const std::size_t n = g->order();
  std::vector<Perm> minimal_gens;
  for (Elem e : greedy_generators(Subgroup::whole(g))) minimal_gens.push_back(g->element(e));
  GroupPtr gmin = generate_group(g->degree(), minimal_gens, cap);

  // gmin index -> g index
  std::vector<Elem> to_g(n);
  for (Elem i = 0; i < n; ++i) to_g[i] = *g->index_of(gmin->element(i));

  const auto sizes = detail::class_sizes(*g);
  std::vector<std::size_t> orders(n);
  for (Elem x = 0; x < n; ++x) orders[x] = g->element_order(x);

  std::vector<std::vector<Elem>> candidates;
  for (const auto& p : minimal_gens) {
    Elem gi = *g->index_of(p);
    std::vector<Elem> c;
    for (Elem y = 0; y < n; ++y) {
      if (orders[y] == orders[gi] && sizes[y] == sizes[gi]) c.push_back(y);
    }
    candidates.push_back(std::move(c));
  }

  std::vector<Perm> autos;
  std::vector<Elem> tuple(minimal_gens.size());
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == tuple.size()) {
      GroupMap f;
      try {
        f = hom_from_gen_images(gmin, g, tuple);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::NotAHomomorphism) return;
        throw;
      }
      if (!f.bijective()) return;
      std::vector<Point> images(n);
      for (Elem i = 0; i < n; ++i) images[to_g[i]] = f(i);
      autos.emplace_back(std::move(images));
      if (autos.size() > cap) {
        throw Error(ErrorKind::CapExceeded, "automorphism group exceeds cap " + std::to_string(cap));
      }
      return;
    }
    for (Elem y : candidates[depth]) {
      tuple[depth] = y;
      self(self, depth + 1);
    }
  };
  search(search, 0);
  return AutGroup(g, detail::carrier_from_perms(n, std::move(autos), cap));
}

/// Sub-AutGroup of `full` whose elements leave every listed subgroup invariant
/// (each one individually).
inline AutGroup relative_automorphism_group(const AutGroup& full,
                                            const std::vector<Subgroup>& preserved,
                                            std::size_t cap = kDefaultCap) {
  for (const auto& h : preserved) {
    if (h.parent() != full.base()) {
      throw Error(ErrorKind::ShapeMismatch, "preserved subgroup belongs to a different group");
    }
  }
  std::vector<Perm> kept;
  for (Elem a = 0; a < full.order(); ++a) {
    const Perm& p = full.carrier()->element(a);
    bool ok = true;
    for (const auto& h : preserved) {
      for (Elem x : h.members()) {
        if (!h.contains(p[x])) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) kept.push_back(p);
  }
  return AutGroup(full.base(), detail::carrier_from_perms(full.base()->order(), std::move(kept), cap));
}

inline AutGroup relative_automorphism_group(const GroupPtr& g, const std::vector<Subgroup>& preserved,
                                            std::size_t cap = kDefaultCap) {
  return relative_automorphism_group(automorphism_group(g, cap), preserved, cap);
}

/// iota^-1 o a o iota, the automorphism induced on K by an automorphism `a`
/// (given as an element table of G) that leaves H = iota(K) invariant.
inline std::vector<Elem> restrict_aut_table(std::span<const Elem> a, const Subgroup& h,
                                            const GroupMap& iota) {
  if (!iota.injective()) throw Error(ErrorKind::NotInjective, "restriction map is not injective");
  if (image(iota) != h) throw Error(ErrorKind::ShapeMismatch, "iota does not have image H");
  const auto back = inverse_on_image(iota);
  std::vector<Elem> out(iota.domain()->order());
  for (Elem k = 0; k < out.size(); ++k) {
    Elem y = a[iota(k)];
    if (!h.contains(y)) throw Error(ErrorKind::NotInvariant, "automorphism moves H off itself");
    out[k] = *back[y];
  }
  return out;
}

inline Automorphism restrict_aut(const Automorphism& a, const Subgroup& h, const GroupMap& iota) {
  if (a.domain() != h.parent() || iota.codomain() != h.parent()) {
    throw Error(ErrorKind::ShapeMismatch, "restriction data over different groups");
  }
  return make_automorphism(iota.domain(), restrict_aut_table(a.element_images(), h, iota));
}

}  // namespace amalgams
