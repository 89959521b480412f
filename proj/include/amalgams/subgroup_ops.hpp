#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/group.hpp"

namespace amalgams {

inline constexpr std::uint64_t kDefaultComplementBudget = 1'000'000;

inline Subgroup intersect(const Subgroup& h, const Subgroup& k) {
  if (h.parent() != k.parent()) throw Error(ErrorKind::ShapeMismatch, "subgroups of different groups");
  std::vector<Elem> members;
  std::set_intersection(h.members().begin(), h.members().end(), k.members().begin(),
                        k.members().end(), std::back_inserter(members));
  return Subgroup(h.parent(), std::move(members), Subgroup::Trusted{});
}

/// N_G(H) = { g : g^-1 H g = H }.
inline Subgroup normalizer(const GroupPtr& g, const Subgroup& h) {
  if (h.parent() != g) throw Error(ErrorKind::ShapeMismatch, "subgroup of a different group");
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x) {
    bool keeps = true;
    for (Elem y : h.members()) {
      if (!h.contains(g->conj(y, x))) {
        keeps = false;
        break;
      }
    }
    if (keeps) members.push_back(x);
  }
  return Subgroup(g, std::move(members), Subgroup::Trusted{});
}

inline bool is_normal(const Subgroup& h) {
  return normalizer(h.parent(), h).is_whole();
}

struct DoubleCoset {
  Elem representative;
  std::vector<Elem> members;  // sorted
};

/// Partition of G into the double cosets H g K, ordered by representative;
/// each representative is the smallest element index of its class.
inline std::vector<DoubleCoset> double_cosets(const GroupPtr& g, const Subgroup& h, const Subgroup& k) {
  if (h.parent() != g || k.parent() != g) throw Error(ErrorKind::ShapeMismatch, "subgroups of a different group");
  std::vector<bool> seen(g->order(), false);
  std::vector<DoubleCoset> out;
  for (Elem x = 0; x < g->order(); ++x) {
    if (seen[x]) continue;
    DoubleCoset dc{x, {}};
    for (Elem a : h.members()) {
      for (Elem b : k.members()) {
        Elem y = g->mul(a, g->mul(x, b));
        if (!seen[y]) {
          seen[y] = true;
          dc.members.push_back(y);
        }
      }
    }
    std::sort(dc.members.begin(), dc.members.end());
    out.push_back(std::move(dc));
  }
  return out;
}

/// Left coset id x -> index of the coset x*N, numbered by smallest member.
inline std::vector<std::size_t> left_coset_ids(const Subgroup& n, std::size_t* count = nullptr) {
  const auto& g = n.parent();
  std::vector<std::size_t> id(g->order(), SIZE_MAX);
  std::size_t next = 0;
  for (Elem x = 0; x < g->order(); ++x) {
    if (id[x] != SIZE_MAX) continue;
    for (Elem m : n.members()) id[g->mul(x, m)] = next;
    ++next;
  }
  if (count) *count = next;
  return id;
}

/// A subgroup T with T ∩ N_j = 1 and |T| |N_j| = |A| for every listed normal
/// subgroup N_j (a common complement), or nullopt if none exists.
///
/// Backtracking: the current subgroup S always meets each N_j trivially; the
/// next branch point is the first coset of N_0 not yet met by S, and the
/// candidates are its members in index order. Every complement containing S
/// contains exactly one of them, so the search is exhaustive.
inline std::optional<Subgroup> common_complement(const std::vector<Subgroup>& normals,
                                                 std::uint64_t budget = kDefaultComplementBudget) {
  if (normals.empty()) throw Error(ErrorKind::ShapeMismatch, "no subgroup to complement");
  const GroupPtr& a = normals.front().parent();
  for (const auto& n : normals) {
    if (n.parent() != a) throw Error(ErrorKind::ShapeMismatch, "subgroups of different groups");
    if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
    if (n.order() != normals.front().order()) return std::nullopt;
  }
  const std::size_t target = a->order() / normals.front().order();
  std::size_t coset_count = 0;
  const auto coset = left_coset_ids(normals.front(), &coset_count);

  std::uint64_t nodes = 0;
  auto meets_trivially = [&](const Subgroup& s) {
    for (const auto& n : normals) {
      if (intersect(s, n).order() != 1) return false;
    }
    return true;
  };

  std::optional<Subgroup> found;
  auto search = [&](auto&& self, const Subgroup& s, const std::vector<Elem>& gens) -> bool {
    if (++nodes > budget) {
      throw Error(ErrorKind::BudgetExceeded,
                  "complement search exceeded " + std::to_string(budget) + " nodes");
    }
    if (s.order() == target) {
      found = s;
      return true;
    }
    std::vector<bool> covered(coset_count, false);
    for (Elem x : s.members()) covered[coset[x]] = true;
    std::size_t open = 0;
    while (covered[open]) ++open;
    for (Elem x = 0; x < a->order(); ++x) {
      if (coset[x] != open) continue;
      auto next_gens = gens;
      next_gens.push_back(x);
      Subgroup t = subgroup_generated(a, next_gens);
      if (target % t.order() != 0 || !meets_trivially(t)) continue;
      if (self(self, t, next_gens)) return true;
    }
    return false;
  };
  search(search, Subgroup::trivial(a), {});
  return found;
}

inline std::optional<Subgroup> complement_of_normal(const Subgroup& n,
                                                    std::uint64_t budget = kDefaultComplementBudget) {
  return common_complement({n}, budget);
}

}  // namespace amalgams
