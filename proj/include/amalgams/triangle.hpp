#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/pointing.hpp"

namespace amalgams {

inline constexpr std::uint64_t kDefaultOrbitBudget = 5'000'000;

/// (a_0, a_1, a_2) ∈ A = A_0 × A_1 × A_2.
using TriangleTuple = std::array<Elem, 3>;

/// The triangle graph of groups: vertices 0, 1, 2 and edges {k, k+1}
/// (indices mod 3). Edge k owns dart 2k = (k, k+1) with α_{k,k+1} into A_k
/// and dart 2k+1 = (k+1, k) with α_{k+1,k} into A_{k+1}.
///
/// H_k = im Φ_k where Φ_k(x) = i_k(α_{k,k+1}(x)) · i_{k+1}(α_{k+1,k}(x)); each
/// entry stores the two nontrivial components.
struct TriangleInstance {
  const GraphOfGroups* c = nullptr;
  std::array<GroupPtr, 3> a;
  std::array<std::vector<std::pair<Elem, Elem>>, 3> h;
  std::array<std::vector<std::pair<Elem, Elem>>, 3> h_generators;

  std::uint64_t size() const { return std::uint64_t{a[0]->order()} * a[1]->order() * a[2]->order(); }

  std::uint64_t encode(const TriangleTuple& t) const {
    return t[0] + std::uint64_t{a[0]->order()} * (t[1] + std::uint64_t{a[1]->order()} * t[2]);
  }
  TriangleTuple decode(std::uint64_t k) const {
    TriangleTuple t;
    t[0] = static_cast<Elem>(k % a[0]->order());
    k /= a[0]->order();
    t[1] = static_cast<Elem>(k % a[1]->order());
    t[2] = static_cast<Elem>(k / a[1]->order());
    return t;
  }

  /// Action of x_k = Φ_k(y) on a tuple, all other x_j trivial:
  /// a'_k = α_{k,k+1}(y)^-1 a_k and a'_{k+1} = a_{k+1} α_{k+1,k}(y).
  TriangleTuple act(std::size_t k, const std::pair<Elem, Elem>& x, TriangleTuple t) const {
    const std::size_t k1 = (k + 1) % 3;
    t[k] = a[k]->mul(a[k]->inv(x.first), t[k]);
    t[k1] = a[k1]->mul(t[k1], x.second);
    return t;
  }

  /// a'_k = π_k(x_k^-1 i_k(a_k) x_{k-1}) for a full choice (x_0, x_1, x_2).
  TriangleTuple relate(const TriangleTuple& t, const std::array<std::pair<Elem, Elem>, 3>& x) const {
    TriangleTuple out;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t prev = (k + 2) % 3;
      out[k] = a[k]->mul(a[k]->mul(a[k]->inv(x[k].first), t[k]), x[prev].second);
    }
    return out;
  }
};

inline bool is_triangle_graph(const OrientedGraph& g) {
  const std::vector<std::pair<Vertex, Vertex>> expected{{0, 1}, {1, 2}, {2, 0}};
  return g.vertex_count() == 3 && g.edge_list() == expected;
}

inline TriangleInstance make_triangle(const GraphOfGroups& c) {
  if (!is_triangle_graph(c.graph)) {
    throw Error(ErrorKind::ShapeMismatch, "triangle instances need vertices 0,1,2 and edges [0,1],[1,2],[2,0]");
  }
  TriangleInstance t;
  t.c = &c;
  for (std::size_t k = 0; k < 3; ++k) t.a[k] = c.vertex_groups[k];
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& tail = c.edge_maps[2 * k];
    const auto& head = c.edge_maps[2 * k + 1];
    std::vector<std::pair<Elem, Elem>> seen;
    for (Elem x = 0; x < c.edge_groups[k]->order(); ++x) {
      std::pair<Elem, Elem> img{tail(x), head(x)};
      if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
    }
    t.h[k] = std::move(seen);
    for (Elem g : c.edge_groups[k]->generator_indices()) t.h_generators[k].push_back({tail(g), head(g)});
  }
  return t;
}

struct TriangleClass {
  TriangleTuple representative;
  std::size_t size;
};

struct TriangleOrbits {
  std::vector<TriangleClass> classes;
  std::vector<std::uint32_t> class_of;  // per encoded tuple
};

/// Orbits of H_0 × H_1 × H_2 on A, i.e. the classes of ~. Each class is
/// represented by its smallest encoded tuple.
inline TriangleOrbits triangle_orbits(const TriangleInstance& t, std::uint64_t budget = kDefaultOrbitBudget) {
  const std::uint64_t n = t.size();
  if (n > budget) {
    throw Error(ErrorKind::BudgetExceeded, "|A_0 x A_1 x A_2| = " + std::to_string(n) + " exceeds budget " +
                                               std::to_string(budget));
  }
  constexpr std::uint32_t kUnseen = UINT32_MAX;
  TriangleOrbits out;
  out.class_of.assign(n, kUnseen);
  for (std::uint64_t start = 0; start < n; ++start) {
    if (out.class_of[start] != kUnseen) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    std::deque<std::uint64_t> queue{start};
    out.class_of[start] = id;
    std::size_t size = 0;
    while (!queue.empty()) {
      const auto cur = t.decode(queue.front());
      queue.pop_front();
      ++size;
      for (std::size_t k = 0; k < 3; ++k) {
        for (const auto& x : t.h_generators[k]) {
          const auto nxt = t.encode(t.act(k, x, cur));
          if (out.class_of[nxt] == kUnseen) {
            out.class_of[nxt] = id;
            queue.push_back(nxt);
          }
        }
      }
    }
    out.classes.push_back({t.decode(start), size});
  }
  return out;
}

inline std::vector<TriangleClass> triangle_equivalence_classes(const TriangleInstance& t,
                                                               std::uint64_t budget = kDefaultOrbitBudget) {
  return triangle_orbits(t, budget).classes;
}

/// (δ_{0,1}^-1 δ_{0,2}, δ_{1,2}^-1 δ_{1,0}, δ_{2,0}^-1 δ_{2,1})
inline TriangleTuple xi_map(const TriangleInstance& t, const Pointing& p) {
  validate_pointing(*t.c, p);
  TriangleTuple out;
  for (std::size_t k = 0; k < 3; ++k) {
    const Elem forward = p.delta[2 * k];                  // dart (k, k+1)
    const Elem backward = p.delta[2 * ((k + 2) % 3) + 1];  // dart (k, k-1)
    out[k] = t.a[k]->mul(t.a[k]->inv(forward), backward);
  }
  return out;
}

/// The positively normalized pointing δ_{i,i+1} = 1, δ_{i+1,i} = a_{i+1}.
inline Pointing xi_inverse(const TriangleInstance& t, const TriangleTuple& tuple) {
  Pointing p{std::vector<Elem>(6, FiniteGroup::identity())};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t next = (i + 1) % 3;
    if (tuple[next] >= t.a[next]->order()) throw Error(ErrorKind::ShapeMismatch, "tuple entry outside A_k");
    p.delta[2 * i + 1] = tuple[next];
  }
  return p;
}

}  // namespace amalgams
