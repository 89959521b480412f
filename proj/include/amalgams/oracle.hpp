#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgams/amalgam.hpp"
#include "amalgams/automorphism.hpp"
#include "amalgams/error.hpp"
#include "amalgams/parallel.hpp"

namespace amalgams {

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

/// Automorphisms φ_i of every G_i and φ_e of every G_e with
/// φ_e ∘ φ¹_e = φ²_e ∘ φ_{d0(e)} for every dart.
struct AmalgamIsomorphism {
  std::vector<Automorphism> vertex_maps;
  std::vector<Automorphism> edge_maps;
};

/// Checks the defining square of an amalgam isomorphism a1 -> a2 on every
/// dart, element by element.
inline bool verify_amalgam_isomorphism(const Amalgam& a1, const Amalgam& a2, const AmalgamIsomorphism& w) {
  const auto& g = a1.graph();
  if (w.vertex_maps.size() != g.vertex_count() || w.edge_maps.size() != g.edge_count()) return false;
  for (const auto& f : w.vertex_maps) {
    if (!f.bijective()) return false;
  }
  for (const auto& f : w.edge_maps) {
    if (!f.bijective()) return false;
  }
  for (Dart e = 0; e < g.dart_count(); ++e) {
    const auto& fe = w.edge_maps[OrientedGraph::edge_of(e)];
    const auto& fv = w.vertex_maps[g.d0(e)];
    for (Elem x = 0; x < a1.vertex_group(g.d0(e))->order(); ++x) {
      if (fe(a1.inclusion(e)(x)) != a2.inclusion(e)(fv(x))) return false;
    }
  }
  return true;
}

/// Brute-force amalgam isomorphism search, independent of the pointing
/// machinery. Edge automorphisms are chosen edge by edge (in breadth-first
/// order); each choice forces the vertex automorphism at both endpoints, which
/// must agree with earlier choices.
class AmalgamOracle {
 public:
  explicit AmalgamOracle(const Amalgam& shape, std::uint64_t budget = kDefaultOracleBudget,
                         std::size_t cap = kDefaultCap)
      : budget_(budget) {
    const auto& g = shape.graph();
    for (const auto& ge : shape.edge_groups()) edge_auts_.push_back(automorphism_group(ge, cap));
    std::vector<bool> listed(g.edge_count(), false);
    if (g.vertex_count() > 0) {
      const auto forest = spanning_forest(g, 0);
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

  std::optional<AmalgamIsomorphism> isomorphic(const Amalgam& a1, const Amalgam& a2) const {
    if (!a1.same_groups(a2)) throw Error(ErrorKind::TypeMismatch, "oracle needs amalgams over the same groups");
    const auto& g = a1.graph();
    std::vector<std::optional<std::vector<Elem>>> vmap(g.vertex_count());
    std::vector<Elem> choice(g.edge_count(), 0);
    std::uint64_t nodes = 0;

    std::vector<std::vector<std::optional<Elem>>> backs;
    for (Dart e = 0; e < g.dart_count(); ++e) backs.push_back(inverse_on_image(a2.inclusion(e)));

    // φ2^-1 ∘ f ∘ φ1 on G_{d0(e)}, if f maps im φ1 onto im φ2.
    auto induced = [&](Dart e, Elem f) -> std::optional<std::vector<Elem>> {
      const auto& auts = edge_auts_[OrientedGraph::edge_of(e)];
      const auto& back = backs[e];
      const auto& i1 = a1.inclusion(e);
      std::vector<Elem> table(i1.domain()->order());
      for (Elem x = 0; x < table.size(); ++x) {
        const auto y = back[auts.apply(f, i1(x))];
        if (!y) return std::nullopt;
        table[x] = *y;
      }
      return table;
    };

    auto search = [&](auto&& self, std::size_t depth) -> bool {
      if (++nodes > budget_) {
        throw Error(ErrorKind::BudgetExceeded, "oracle exceeded " + std::to_string(budget_) + " nodes");
      }
      if (depth == edge_order_.size()) return true;
      const std::size_t j = edge_order_[depth];
      const Dart e = OrientedGraph::positive_dart(j);
      const Dart eb = g.bar(e);
      for (Elem f = 0; f < edge_auts_[j].order(); ++f) {
        auto m0 = induced(e, f);
        if (!m0) continue;
        auto m1 = induced(eb, f);
        if (!m1) continue;
        const Vertex u = g.d0(e);
        const Vertex v = g.d1(e);
        if (u == v && *m0 != *m1) continue;
        const bool set_u = !vmap[u].has_value();
        if (!set_u && *vmap[u] != *m0) continue;
        if (set_u) vmap[u] = *m0;
        const bool set_v = !vmap[v].has_value();
        if (!set_v && *vmap[v] != *m1) {
          if (set_u) vmap[u].reset();
          continue;
        }
        if (set_v) vmap[v] = *m1;
        choice[j] = f;
        if (self(self, depth + 1)) return true;
        if (set_v) vmap[v].reset();
        if (set_u) vmap[u].reset();
      }
      return false;
    };
    if (!search(search, 0)) return std::nullopt;

    AmalgamIsomorphism w;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto& gv = a1.vertex_group(v);
      w.vertex_maps.push_back(vmap[v] ? make_automorphism(gv, *vmap[v]) : identity_map(gv));
    }
    for (std::size_t j = 0; j < g.edge_count(); ++j) w.edge_maps.push_back(edge_auts_[j].automorphism(choice[j]));
    return w;
  }

 private:
  std::uint64_t budget_;
  std::vector<AutGroup> edge_auts_;
  std::vector<std::size_t> edge_order_;
};

inline std::optional<AmalgamIsomorphism> amalgams_isomorphic_oracle(const Amalgam& a1, const Amalgam& a2,
                                                                    std::uint64_t budget = kDefaultOracleBudget) {
  return AmalgamOracle(a1, budget).isomorphic(a1, a2);
}

struct Partition {
  /// class id of every input item; classes are numbered by first member
  std::vector<std::size_t> class_of;
  /// index of the first (representative) item of each class
  std::vector<std::size_t> representatives;

  std::size_t class_count() const noexcept { return representatives.size(); }
  std::vector<std::size_t> class_sizes() const {
    std::vector<std::size_t> sizes(representatives.size(), 0);
    for (auto c : class_of) ++sizes[c];
    return sizes;
  }
};

/// Greedy partition of `items` under an equivalence test: each item is
/// compared with the existing representatives (in parallel when requested)
/// and joins the lowest-numbered matching class.
template <class Same>
Partition partition_by(std::size_t n, Same&& same, Execution mode) {
  Partition p;
  p.class_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto reps = p.representatives;
    std::vector<char> match(reps.size(), 0);
    parallel_for(reps.size(), mode, [&](std::size_t r) { match[r] = same(reps[r], i) ? 1 : 0; });
    std::size_t cls = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (match[r]) {
        cls = r;
        break;
      }
    }
    if (cls == reps.size()) p.representatives.push_back(i);
    p.class_of[i] = cls;
  }
  return p;
}

inline Partition oracle_partition(const std::vector<Amalgam>& amalgams, Execution mode = Execution::Serial,
                                  std::uint64_t budget = kDefaultOracleBudget) {
  if (amalgams.empty()) return {};
  const AmalgamOracle oracle(amalgams.front(), budget);
  return partition_by(
      amalgams.size(),
      [&](std::size_t rep, std::size_t i) { return oracle.isomorphic(amalgams[rep], amalgams[i]).has_value(); },
      mode);
}

}  // namespace amalgams
