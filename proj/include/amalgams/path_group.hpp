#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/graph.hpp"
#include "amalgams/pointing.hpp"
#include "amalgams/rigid.hpp"

namespace amalgams {

/// a_0 e_1 a_1 ... e_n a_n: n darts forming a walk and n+1 vertex letters,
/// a_k in the group of the vertex between e_k and e_{k+1}.
struct PathWord {
  Vertex start = 0;
  std::vector<Elem> letters{FiniteGroup::identity()};
  std::vector<Dart> darts;

  friend bool operator==(const PathWord&, const PathWord&) = default;
  friend auto operator<=>(const PathWord&, const PathWord&) = default;
};

/// A PathWord in normal form: every letter before a dart e is the smallest
/// element of its left coset a·im α_e, and no dart e is followed by the
/// identity and then ē.
using CanonicalForm = PathWord;

struct PathWordHash {
  std::size_t operator()(const PathWord& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ w.start;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (Elem a : w.letters) mix(a);
    for (Dart d : w.darts) mix(d + (1ull << 40));
    return static_cast<std::size_t>(h);
  }
};

/// Word arithmetic in the path group of a reduced graph of groups. The
/// transversal tables are built once on construction.
class PathGroup {
 public:
  explicit PathGroup(const ReducedGraphOfGroups& r) : r_(&r) {
    const auto& c = r.base;
    const auto& g = c.graph;
    rep_.resize(g.dart_count());
    push_.resize(g.dart_count());
    for (Dart e = 0; e < g.dart_count(); ++e) {
      const auto& av = *c.vertex_group_of_dart(e);
      const Subgroup im = image(c.alpha(e));
      constexpr Elem kUnset = UINT32_MAX;
      auto& rep = rep_[e];
      auto& push = push_[e];
      rep.assign(av.order(), kUnset);
      push.assign(av.order(), FiniteGroup::identity());
      for (Elem a = 0; a < av.order(); ++a) {
        if (rep[a] != kUnset) continue;
        for (Elem h : im.members()) {
          const Elem y = av.mul(a, h);
          rep[y] = a;
          const Elem x = *r.lift[e][h];  // y = a·α_e(x)
          push[y] = c.alpha(g.bar(e))(x);
        }
      }
    }
  }

  const ReducedGraphOfGroups& reduced() const noexcept { return *r_; }
  const GraphOfGroups& graph_of_groups() const noexcept { return r_->base; }

  Vertex end(const PathWord& w) const { return w.darts.empty() ? w.start : graph().d1(w.darts.back()); }

  void validate(const PathWord& w) const {
    const auto& g = graph();
    if (w.start >= g.vertex_count()) throw Error(ErrorKind::ShapeMismatch, "start vertex out of range");
    if (w.letters.size() != w.darts.size() + 1) {
      throw Error(ErrorKind::ShapeMismatch, "a word with n darts needs n+1 vertex letters");
    }
    Vertex v = w.start;
    for (std::size_t k = 0; k <= w.darts.size(); ++k) {
      if (w.letters[k] >= r_->base.vertex_groups[v]->order()) {
        throw Error(ErrorKind::ShapeMismatch, "letter " + std::to_string(k) + " outside its vertex group");
      }
      if (k == w.darts.size()) break;
      const Dart e = w.darts[k];
      if (e >= g.dart_count() || g.d0(e) != v) {
        throw Error(ErrorKind::ShapeMismatch, "darts do not form a walk at position " + std::to_string(k));
      }
      v = g.d1(e);
    }
  }

  PathWord identity(Vertex v) const { return PathWord{v, {FiniteGroup::identity()}, {}}; }

  /// Left-to-right push-through with a stack of (representative, dart).
  CanonicalForm canonicalize(const PathWord& w) const {
    validate(w);
    const auto& c = r_->base;
    const auto& g = c.graph;
    std::vector<std::pair<Elem, Dart>> stack;
    Elem cur = w.letters[0];
    for (std::size_t k = 0; k < w.darts.size(); ++k) {
      const Dart e = w.darts[k];
      const auto& next_group = *c.vertex_groups[g.d1(e)];
      const Elem t = rep_[e][cur];
      const Elem pushed = push_[e][cur];
      if (t == FiniteGroup::identity() && !stack.empty() && stack.back().second == g.bar(e)) {
        // f · α_e(x) · e with f = ē collapses to α_ē(x)
        const Elem below = stack.back().first;
        stack.pop_back();
        cur = next_group.mul(next_group.mul(below, pushed), w.letters[k + 1]);
      } else {
        stack.emplace_back(t, e);
        cur = next_group.mul(pushed, w.letters[k + 1]);
      }
    }
    CanonicalForm out{w.start, {}, {}};
    for (const auto& [t, e] : stack) {
      out.letters.push_back(t);
      out.darts.push_back(e);
    }
    out.letters.push_back(cur);
    return out;
  }

  bool is_canonical(const PathWord& w) const { return canonicalize(w) == w; }

  /// Concatenation, merging the two letters at the junction.
  PathWord concat(const PathWord& u, const PathWord& v) const {
    if (end(u) != v.start) throw Error(ErrorKind::EndpointMismatch, "words do not meet");
    PathWord out = u;
    const auto& gv = *r_->base.vertex_groups[v.start];
    out.letters.back() = gv.mul(out.letters.back(), v.letters.front());
    out.letters.insert(out.letters.end(), v.letters.begin() + 1, v.letters.end());
    out.darts.insert(out.darts.end(), v.darts.begin(), v.darts.end());
    return out;
  }

  CanonicalForm multiply(const PathWord& u, const PathWord& v) const { return canonicalize(concat(u, v)); }

  PathWord reverse(const PathWord& u) const {
    validate(u);
    const auto& c = r_->base;
    const auto& g = c.graph;
    PathWord out{end(u), {}, {}};
    Vertex v = out.start;
    for (std::size_t k = u.letters.size(); k-- > 0;) {
      out.letters.push_back(c.vertex_groups[v]->inv(u.letters[k]));
      if (k == 0) break;
      const Dart e = g.bar(u.darts[k - 1]);
      out.darts.push_back(e);
      v = g.d1(e);
    }
    return out;
  }

  CanonicalForm invert(const PathWord& u) const { return canonicalize(reverse(u)); }

  /// a = t·α_e(x) split into (t, α_ē(x)); exposed for tests.
  std::pair<Elem, Elem> factor(Dart e, Elem a) const { return {rep_[e][a], push_[e][a]}; }

 private:
  const OrientedGraph& graph() const { return r_->base.graph; }

  const ReducedGraphOfGroups* r_;
  std::vector<std::vector<Elem>> rep_;
  std::vector<std::vector<Elem>> push_;
};

/// γ_δ = δ_{e1} e1 δ_{ē1}^-1 δ_{e2} e2 ... en δ_{ēn}^-1, substituted verbatim.
/// An empty walk gives the identity at `start`.
inline PathWord pointing_path(const GraphOfGroups& c, Vertex start, const std::vector<Dart>& gamma,
                              const Pointing& p) {
  validate_pointing(c, p);
  const auto& g = c.graph;
  if (start >= g.vertex_count()) throw Error(ErrorKind::ShapeMismatch, "start vertex out of range");
  PathWord w{start, {}, gamma};
  if (gamma.empty()) {
    w.letters.push_back(FiniteGroup::identity());
    return w;
  }
  Vertex v = start;
  Elem pending = FiniteGroup::identity();
  for (Dart e : gamma) {
    if (e >= g.dart_count() || g.d0(e) != v) throw Error(ErrorKind::ShapeMismatch, "gamma is not a walk");
    const auto& av = *c.vertex_groups[v];
    w.letters.push_back(av.mul(pending, p.delta[e]));
    v = g.d1(e);
    pending = c.vertex_groups[v]->inv(p.delta[g.bar(e)]);
  }
  w.letters.push_back(pending);
  return w;
}

struct FundamentalGeneratorSet {
  Vertex base = 0;
  Pointing pointing;
  std::vector<CanonicalForm> generators;  // one per free generator loop
};

inline FundamentalGeneratorSet fundamental_generators(const PathGroup& pg, const Pointing& p, Vertex base) {
  const auto& c = pg.graph_of_groups();
  const auto tree = spanning_tree(c.graph, base);
  FundamentalGeneratorSet out{base, p, {}};
  for (const auto& loop : free_generators(c.graph, tree)) {
    out.generators.push_back(pg.canonicalize(pointing_path(c, base, loop.edge_path(), p)));
  }
  return out;
}

}  // namespace amalgams
