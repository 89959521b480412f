#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/group.hpp"

namespace amalgams {

/// A homomorphism between finite groups, stored as a full element table.
class GroupMap {
 public:
  GroupMap() = default;

  const GroupPtr& domain() const noexcept { return domain_; }
  const GroupPtr& codomain() const noexcept { return codomain_; }
  const std::vector<Elem>& gen_images() const noexcept { return gen_images_; }
  const std::vector<Elem>& element_images() const noexcept { return images_; }
  Elem operator()(Elem x) const { return images_[x]; }
  bool injective() const noexcept { return injective_; }
  bool surjective() const noexcept { return surjective_; }
  bool bijective() const noexcept { return injective_ && surjective_; }

  /// Builds a map from an arbitrary table and checks f(x*g) = f(x)*f(g) for
  /// every element x and every domain generator g. Together with f(1) = 1
  /// this is equivalent to multiplicativity on all pairs.
  static GroupMap from_table(GroupPtr domain, GroupPtr codomain, std::vector<Elem> images) {
    if (images.size() != domain->order()) {
      throw Error(ErrorKind::ShapeMismatch, "element table has wrong length");
    }
    GroupMap f;
    f.domain_ = std::move(domain);
    f.codomain_ = std::move(codomain);
    f.images_ = std::move(images);
    for (Elem y : f.images_) {
      if (y >= f.codomain_->order()) {
        throw Error(ErrorKind::ShapeMismatch, "image index outside codomain");
      }
    }
    for (Elem g : f.domain_->generator_indices()) f.gen_images_.push_back(f.images_[g]);
    f.verify();
    f.classify();
    return f;
  }

  friend bool operator==(const GroupMap& a, const GroupMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  friend GroupMap hom_from_gen_images(GroupPtr, GroupPtr, std::vector<Elem>);

  void verify() const {
    const auto& dom = *domain_;
    const auto& cod = *codomain_;
    if (images_[FiniteGroup::identity()] != FiniteGroup::identity()) {
      throw Error(ErrorKind::NotAHomomorphism, "identity not mapped to identity");
    }
    const auto& gens = dom.generator_indices();
    for (Elem x = 0; x < dom.order(); ++x) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (images_[dom.mul(x, gens[g])] != cod.mul(images_[x], gen_images_[g])) {
          throw Error(ErrorKind::NotAHomomorphism,
                      "assignment is not multiplicative at generator " + std::to_string(g));
        }
      }
    }
  }

  void classify() {
    std::vector<bool> hit(codomain_->order(), false);
    std::size_t distinct = 0;
    for (Elem y : images_) {
      if (!hit[y]) {
        hit[y] = true;
        ++distinct;
      }
    }
    injective_ = distinct == domain_->order();
    surjective_ = distinct == codomain_->order();
  }

  GroupPtr domain_;
  GroupPtr codomain_;
  std::vector<Elem> gen_images_;
  std::vector<Elem> images_;
  bool injective_ = false;
  bool surjective_ = false;
};

/// Extends a generator assignment along the breadth-first words of the domain
/// and rejects it if the extension is not a homomorphism.
inline GroupMap hom_from_gen_images(GroupPtr domain, GroupPtr codomain,
                                    std::vector<Elem> gen_images) {
  if (gen_images.size() != domain->generators().size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(domain->generators().size()) +
                    " generator images, got " + std::to_string(gen_images.size()));
  }
  for (Elem y : gen_images) {
    if (y >= codomain->order()) throw Error(ErrorKind::ShapeMismatch, "image index outside codomain");
  }
  GroupMap f;
  f.domain_ = std::move(domain);
  f.codomain_ = std::move(codomain);
  f.gen_images_ = std::move(gen_images);
  const auto& dom = *f.domain_;
  f.images_.assign(dom.order(), FiniteGroup::identity());
  for (Elem k = 1; k < dom.order(); ++k) {
    f.images_[k] = f.codomain_->mul(f.images_[dom.parent(k)], f.gen_images_[dom.via(k)]);
  }
  f.verify();
  f.classify();
  return f;
}

inline GroupMap identity_map(const GroupPtr& g) {
  std::vector<Elem> images(g->order());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<Elem>(i);
  return GroupMap::from_table(g, g, std::move(images));
}

inline GroupMap trivial_map(const GroupPtr& domain, const GroupPtr& codomain) {
  return GroupMap::from_table(domain, codomain,
                              std::vector<Elem>(domain->order(), FiniteGroup::identity()));
}

/// f after g.
inline GroupMap compose(const GroupMap& f, const GroupMap& g) {
  if (g.codomain() != f.domain()) {
    throw Error(ErrorKind::ShapeMismatch, "composition of non-matching maps");
  }
  std::vector<Elem> images(g.domain()->order());
  for (Elem x = 0; x < images.size(); ++x) images[x] = f(g(x));
  return GroupMap::from_table(g.domain(), f.codomain(), std::move(images));
}

inline Subgroup kernel(const GroupMap& f) {
  std::vector<Elem> members;
  for (Elem x = 0; x < f.domain()->order(); ++x) {
    if (f(x) == FiniteGroup::identity()) members.push_back(x);
  }
  return Subgroup(f.domain(), std::move(members), Subgroup::Trusted{});
}

inline Subgroup image(const GroupMap& f) {
  std::vector<Elem> members(f.element_images());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Subgroup(f.codomain(), std::move(members), Subgroup::Trusted{});
}

/// Full preimage f^-1(H) as a subgroup of the domain.
inline Subgroup preimage(const GroupMap& f, const Subgroup& h) {
  if (h.parent() != f.codomain()) throw Error(ErrorKind::ShapeMismatch, "subgroup of wrong group");
  std::vector<Elem> members;
  for (Elem x = 0; x < f.domain()->order(); ++x) {
    if (h.contains(f(x))) members.push_back(x);
  }
  return Subgroup(f.domain(), std::move(members), Subgroup::Trusted{});
}

/// Inverse table of an injective map: codomain index -> domain index, or
/// nullopt outside the image.
inline std::vector<std::optional<Elem>> inverse_on_image(const GroupMap& f) {
  if (!f.injective()) throw Error(ErrorKind::NotInjective, "map is not injective");
  std::vector<std::optional<Elem>> inv(f.codomain()->order());
  for (Elem x = 0; x < f.domain()->order(); ++x) inv[f(x)] = x;
  return inv;
}

}  // namespace amalgams
