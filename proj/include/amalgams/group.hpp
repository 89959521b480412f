#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/perm.hpp"

namespace amalgams {

/// Index of an element inside FiniteGroup::elements(). Index 0 is always the
/// identity.
using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultCap = 20000;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A permutation group with its full element list.
///
/// Elements are enumerated breadth-first from the identity by right
/// multiplication with the generators (in the given order); each new layer is
/// sorted by image array. Every element k > 0 records the word
/// elements[k] = elements[parent(k)] * generators[via(k)], which is what
/// homomorphism construction walks along.
class FiniteGroup {
 public:
  static constexpr std::size_t kTableLimit = 1024;

  static GroupPtr generate(std::size_t degree, std::vector<Perm> generators,
                           std::size_t cap = kDefaultCap) {
    if (cap < 1) throw Error(ErrorKind::CapExceeded, "cap must be at least 1");
    for (const auto& g : generators) {
      if (g.degree() != degree) {
        throw Error(ErrorKind::DegreeMismatch,
                    "generator of degree " + std::to_string(g.degree()) +
                        " in a group of degree " + std::to_string(degree));
      }
    }
    auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    group->degree_ = degree;
    group->generators_ = std::move(generators);
    group->enumerate(cap);
    return group;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const Perm& element(Elem i) const { return elements_[i]; }
  static constexpr Elem identity() noexcept { return 0; }

  std::optional<Elem> index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Element index of each generator (generators may repeat or be trivial).
  const std::vector<Elem>& generator_indices() const noexcept { return gen_index_; }

  Elem parent(Elem i) const { return parent_[i]; }
  std::size_t via(Elem i) const { return via_[i]; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// x^-1 * y * x
  Elem conj(Elem y, Elem x) const { return mul(inv(x), mul(y, x)); }

  std::size_t element_order(Elem a) const {
    std::size_t n = 1;
    for (Elem x = a; x != identity(); x = mul(x, a)) ++n;
    return n;
  }

  bool is_abelian() const {
    for (Elem g : gen_index_) {
      for (Elem h : gen_index_) {
        if (mul(g, h) != mul(h, g)) return false;
      }
    }
    return true;
  }

 private:
  FiniteGroup() = default;

  void enumerate(std::size_t cap) {
    struct Found {
      Perm perm;
      Elem parent;
      std::size_t via;
    };
    elements_.push_back(Perm::identity(degree_));
    index_.emplace(elements_.back(), 0);
    parent_.push_back(0);
    via_.push_back(0);

    std::size_t layer_begin = 0;
    while (layer_begin < elements_.size()) {
      std::size_t layer_end = elements_.size();
      std::vector<Found> next;
      std::unordered_map<Perm, bool, PermHash> pending;
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (std::size_t g = 0; g < generators_.size(); ++g) {
          Perm y = elements_[i] * generators_[g];
          if (index_.count(y) || pending.count(y)) continue;
          pending.emplace(y, true);
          next.push_back({std::move(y), static_cast<Elem>(i), g});
          if (elements_.size() + next.size() > cap) {
            throw Error(ErrorKind::CapExceeded,
                        "group closure exceeds cap " + std::to_string(cap));
          }
        }
      }
      std::sort(next.begin(), next.end(),
                [](const Found& a, const Found& b) { return a.perm < b.perm; });
      for (auto& f : next) {
        index_.emplace(f.perm, static_cast<Elem>(elements_.size()));
        elements_.push_back(std::move(f.perm));
        parent_.push_back(f.parent);
        via_.push_back(f.via);
      }
      layer_begin = layer_end;
    }

    const std::size_t n = elements_.size();
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inverse_[i] = index_.at(elements_[i].inverse());
    for (const auto& g : generators_) gen_index_.push_back(index_.at(g));
    if (n <= kTableLimit) {
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          table_[a * n + b] = index_.at(elements_[a] * elements_[b]);
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, Elem, PermHash> index_;
  std::vector<Elem> parent_;
  std::vector<std::size_t> via_;
  std::vector<Elem> inverse_;
  std::vector<Elem> gen_index_;
  std::vector<Elem> table_;
};

inline GroupPtr generate_group(std::size_t degree, std::vector<Perm> generators,
                               std::size_t cap = kDefaultCap) {
  return FiniteGroup::generate(degree, std::move(generators), cap);
}

/// A subgroup stored as a sorted set of element indices of its parent.
class Subgroup {
 public:
  Subgroup() = default;

  /// `members` must be closed; it is sorted and validated here.
  Subgroup(GroupPtr parent, std::vector<Elem> members)
      : parent_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    mask_.assign(parent_->order(), false);
    for (Elem m : members_) mask_[m] = true;
    if (members_.empty() || members_.front() != FiniteGroup::identity()) {
      throw Error(ErrorKind::ShapeMismatch, "subgroup must contain the identity");
    }
    for (Elem a : members_) {
      if (!mask_[parent_->inv(a)]) {
        throw Error(ErrorKind::ShapeMismatch, "member set not closed under inverses");
      }
      for (Elem b : members_) {
        if (!mask_[parent_->mul(a, b)]) {
          throw Error(ErrorKind::ShapeMismatch, "member set not closed under products");
        }
      }
    }
  }

  static Subgroup whole(const GroupPtr& g) {
    std::vector<Elem> all(g->order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
    return Subgroup(g, std::move(all), Trusted{});
  }

  static Subgroup trivial(const GroupPtr& g) {
    return Subgroup(g, {FiniteGroup::identity()}, Trusted{});
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Elem x) const { return mask_[x]; }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return parent_ && members_.size() == parent_->order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

  struct Trusted {};
  /// Skips the closure check; `members` must already be a sorted subgroup.
  Subgroup(GroupPtr parent, std::vector<Elem> members, Trusted)
      : parent_(std::move(parent)), members_(std::move(members)) {
    mask_.assign(parent_->order(), false);
    for (Elem m : members_) mask_[m] = true;
  }

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
};

/// Closure of `seeds` (plus identity) under multiplication.
inline Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Elem>& seeds) {
  for (Elem s : seeds) {
    if (s >= g->order()) {
      throw Error(ErrorKind::ShapeMismatch, "seed index " + std::to_string(s) +
                                                " outside group of order " +
                                                std::to_string(g->order()));
    }
  }
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> members{FiniteGroup::identity()};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s : seeds) {
      Elem y = g->mul(members[i], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members), Subgroup::Trusted{});
}

/// Greedy generating set for a subgroup: scan members in index order and keep
/// each one not already in the span of the previous picks.
inline std::vector<Elem> greedy_generators(const Subgroup& h) {
  std::vector<Elem> gens;
  Subgroup span = Subgroup::trivial(h.parent());
  for (Elem m : h.members()) {
    if (span.contains(m)) continue;
    gens.push_back(m);
    span = subgroup_generated(h.parent(), gens);
    if (span.order() == h.order()) break;
  }
  return gens;
}

/// Materialize a subgroup as a standalone FiniteGroup on the same points.
inline GroupPtr subgroup_as_group(const Subgroup& h, std::size_t cap = kDefaultCap) {
  std::vector<Perm> gens;
  for (Elem e : greedy_generators(h)) gens.push_back(h.parent()->element(e));
  return generate_group(h.parent()->degree(), std::move(gens), cap);
}

}  // namespace amalgams
