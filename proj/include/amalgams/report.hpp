#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "amalgams/classify.hpp"
#include "amalgams/fundamental.hpp"
#include "amalgams/goldschmidt.hpp"
#include "amalgams/io.hpp"
#include "amalgams/oracle.hpp"
#include "amalgams/rigid.hpp"
#include "amalgams/triangle.hpp"

namespace amalgams {

/// Knobs shared by every command. `budget`, when set, replaces the default
/// node budget of every exhaustive search.
struct RunOptions {
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> budget;
  std::size_t bound = kDefaultBound;
  Vertex base = 0;
  Vertex tree_base = 0;
  Execution execution = Execution::Serial;
};

/// The reference graph and everything derived from an instance file once.
struct PreparedInstance {
  const InstanceFile* file;
  GraphOfGroups c;
  ClassifyOptions classify;
  std::uint64_t oracle_budget;
  std::uint64_t orbit_budget;
  std::uint64_t complement_budget;
  std::uint64_t ball_budget;
};

inline PreparedInstance prepare(const InstanceFile& f, const RunOptions& opt) {
  PreparedInstance p{&f, {}, {}, kDefaultOracleBudget, kDefaultOrbitBudget, kDefaultComplementBudget,
                     kDefaultBallBudget};
  const std::size_t cap = opt.cap.value_or(f.cap.value_or(kDefaultCap));
  const auto budget = opt.budget ? opt.budget : f.budget;
  p.classify.cap = cap;
  p.classify.tree_base = opt.tree_base;
  p.classify.execution = opt.execution;
  if (budget) {
    p.classify.enumeration_budget = p.classify.decider_budget = *budget;
    p.oracle_budget = p.orbit_budget = p.complement_budget = p.ball_budget = *budget;
  }
  if (opt.tree_base >= f.type->graph().vertex_count()) {
    throw Error(ErrorKind::InvalidVertex, "tree base " + std::to_string(opt.tree_base) + " is not a vertex");
  }
  p.c = reference_graph(*f.type, cap);
  return p;
}

/// Indented JSON with arrays of scalars kept on one line.
inline std::string render(const Json& j, int indent = 0) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) return "{}";
    std::string out = "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": " + render(it.value(), indent + 2);
    }
    return out + "\n" + pad + "}";
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) return j.dump(-1, ' ', false);
    std::string out = "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner + render(j[k], indent + 2) + (k + 1 < j.size() ? ",\n" : "\n");
    }
    return out + pad + "]";
  }
  return j.dump();
}

inline Json pointing_json(const Pointing& p) { return Json(p.delta); }

inline Json witness_json(const PointingWitness& w) { return Json{{"vertex", w.vertex}, {"edge", w.edge}}; }

/// "a0 .e1 a1 .e2 a2": vertex letters and darts (prefixed by a dot).
inline std::string word_string(const PathWord& w) {
  std::ostringstream out;
  out << w.letters[0];
  for (std::size_t k = 0; k < w.darts.size(); ++k) out << " ." << w.darts[k] << ' ' << w.letters[k + 1];
  return out.str();
}

inline Json header(const std::string& command, const InstanceFile& f) {
  return Json{{"schema", kSchemaVersion}, {"command", command}, {"instance", f.name}, {"kind", f.kind}};
}

inline Json classification_json(const ClassificationReport& r, const AmalgamType& t, const GraphOfGroups& c) {
  Json classes = Json::array();
  for (std::size_t k = 0; k < r.classes.size(); ++k) {
    const auto& cls = r.classes[k];
    Json members = Json::array();
    for (std::size_t m = 0; m < cls.members.size(); ++m) {
      members.push_back(Json{{"pointing", pointing_json(r.enumerated[cls.members[m]])},
                             {"witness", witness_json(cls.witnesses[m])}});
    }
    classes.push_back(Json{{"index", k},
                           {"size", cls.members.size()},
                           {"representative_pointing", pointing_json(cls.representative)},
                           {"inclusions", inclusions_json(amalgam_from_pointing(t, c, cls.representative))},
                           {"members", members}});
  }
  return Json{{"examined", r.examined()}, {"class_count", r.class_count()}, {"classes", classes}};
}

inline Json cmd_classify(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto p = prepare(f, opt);
  Json out = header("classify", f);
  out["tree_base"] = opt.tree_base;
  out.update(classification_json(classify(p.c, p.classify), *f.type, p.c));
  return out;
}

inline Json cmd_oracle(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto p = prepare(f, opt);
  const auto tree = spanning_forest(p.c.graph, opt.tree_base);
  const auto ps = normalized_pointings(p.c, tree, p.classify.enumeration_budget);
  std::vector<Amalgam> as;
  for (const auto& x : ps) as.push_back(amalgam_from_pointing(*f.type, p.c, x));
  const auto part = oracle_partition(as, opt.execution, p.oracle_budget);
  Json classes = Json::array();
  const auto sizes = part.class_sizes();
  for (std::size_t k = 0; k < part.class_count(); ++k) {
    classes.push_back(Json{{"index", k},
                           {"size", sizes[k]},
                           {"representative_pointing", pointing_json(ps[part.representatives[k]])},
                           {"inclusions", inclusions_json(as[part.representatives[k]])}});
  }
  Json out = header("oracle", f);
  out["examined"] = ps.size();
  out["class_count"] = part.class_count();
  out["classes"] = classes;
  return out;
}

inline const GoldschmidtInstance& require_goldschmidt(const InstanceFile& f) {
  if (!f.goldschmidt) throw Error(ErrorKind::SchemaError, "kind: goldschmidt needs a double-loop instance");
  return *f.goldschmidt;
}

inline Json cmd_goldschmidt(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto& g = require_goldschmidt(f);
  const auto p = prepare(f, opt);
  Json classes = Json::array();
  for (const auto& dc : goldschmidt_classes(g)) {
    const auto& delta = g.aut_b.automorphism(dc.representative);
    classes.push_back(Json{{"delta", dc.representative},
                           {"delta_gen_images", map_json(delta)},
                           {"size", dc.size},
                           {"inclusions", inclusions_json(goldschmidt_amalgam(g, *f.type, p.c, dc.representative))}});
  }
  Json out = header("goldschmidt", f);
  out["aut_b_order"] = g.aut_b.order();
  out["abar1_order"] = g.abar1.order();
  out["abar2_order"] = g.abar2.order();
  out["class_count"] = classes.size();
  out["classes"] = classes;
  return out;
}

inline Json cmd_triangle(const InstanceFile& f, const RunOptions& opt = {}) {
  if (!f.is_triangle()) throw Error(ErrorKind::SchemaError, "kind: triangle needs the triangle graph");
  const auto p = prepare(f, opt);
  const auto t = make_triangle(p.c);
  Json classes = Json::array();
  for (const auto& cls : triangle_equivalence_classes(t, p.orbit_budget)) {
    const auto ptg = xi_inverse(t, cls.representative);
    classes.push_back(Json{{"representative", cls.representative},
                           {"size", cls.size},
                           {"pointing", pointing_json(ptg)},
                           {"xi_roundtrip", xi_map(t, ptg) == cls.representative}});
  }
  Json h = Json::array();
  for (const auto& hk : t.h) h.push_back(hk.size());
  Json out = header("triangle", f);
  out["tuple_space"] = t.size();
  out["h_orders"] = h;
  out["class_count"] = classes.size();
  out["classes"] = classes;
  return out;
}

inline Json rigidity_json(const GraphOfGroups& c, const RigidityReport& r) {
  Json kernels = Json::array();
  for (Dart e = 0; e < c.graph.dart_count(); ++e) kernels.push_back(kernel(c.alpha(e)).order());
  Json out{{"rigid", r.rigid()}, {"kernel_orders", kernels}};
  if (r.rigid()) {
    Json tilde = Json::array();
    for (const auto& t : r.reduced->tilde) tilde.push_back(t.members());
    out["tilde_edge_groups"] = tilde;
  } else {
    out["failing_dart"] = *r.failing_dart;
    out["reason"] = r.reason;
  }
  return out;
}

inline Json cmd_rigid(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto p = prepare(f, opt);
  const auto rig = is_rigid(p.c, p.complement_budget);
  Json out = header("rigid-check", f);
  out.update(rigidity_json(p.c, rig));
  if (rig.rigid()) {
    const auto full = classify(p.c, p.classify);
    const auto reduced = classify_rigid(*rig.reduced, p.classify);
    out["classify_class_count"] = full.class_count();
    out["classify_rigid_class_count"] = reduced.class_count();
    out["agree"] = full.class_of == reduced.class_of;
  }
  return out;
}

inline Json cmd_fundamental(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto p = prepare(f, opt);
  const auto rig = is_rigid(p.c, p.complement_budget);
  if (!rig.rigid()) throw Error(ErrorKind::NotRigid, rig.reason);
  if (opt.base >= p.c.graph.vertex_count()) {
    throw Error(ErrorKind::InvalidVertex, "base " + std::to_string(opt.base) + " is not a vertex");
  }
  if (!is_connected(p.c.graph)) throw Error(ErrorKind::Disconnected, "fundamental groups need a connected graph");
  const PathGroup pg(*rig.reduced);
  const auto report = classify_rigid(*rig.reduced, p.classify);
  auto gens_json = [](const FundamentalGeneratorSet& s) {
    Json out = Json::array();
    for (const auto& g : s.generators) out.push_back(word_string(g));
    return out;
  };
  std::vector<FundamentalGeneratorSet> reps;
  Json classes = Json::array();
  for (const auto& cls : report.classes) {
    reps.push_back(fundamental_generators(pg, cls.representative, opt.base));
    Json members = Json::array();
    for (std::size_t m = 0; m < cls.members.size(); ++m) {
      const auto& q = report.enumerated[cls.members[m]];
      const auto s = fundamental_generators(pg, q, opt.base);
      const auto cmp = compare_fundamental_groups(pg, reps.back(), s, opt.bound, p.ball_budget);
      members.push_back(Json{{"pointing", pointing_json(q)},
                             {"generators", gens_json(s)},
                             {"verdict", to_string(cmp.verdict)},
                             {"conjugator", cls.witnesses[m].vertex[opt.base]}});
    }
    classes.push_back(Json{{"representative_pointing", pointing_json(cls.representative)},
                           {"generators", gens_json(reps.back())},
                           {"members", members}});
  }
  Json pairs = Json::array();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const auto cmp = compare_fundamental_groups(pg, reps[i], reps[j], opt.bound, p.ball_budget);
      pairs.push_back(Json{{"classes", {i, j}},
                           {"verdict", to_string(cmp.verdict)},
                           {"saturated", {cmp.first_saturated, cmp.second_saturated}}});
    }
  }
  Json out = header("fundamental", f);
  out["base"] = opt.base;
  out["bound"] = opt.bound;
  out["class_count"] = report.class_count();
  out["classes"] = classes;
  out["representative_pairs"] = pairs;
  return out;
}

/// One agreement check between two methods.
struct Pairing {
  std::string name;
  bool pass;
  Json detail;
};

/// First index where two labelings of the same items disagree on
/// membership, dumped as the offending pair.
inline Json first_disagreement(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                               const std::vector<Pointing>& items) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) {
        return Json{{"first", pointing_json(items[j])},
                    {"second", pointing_json(items[i])},
                    {"same_in_first_method", a[i] == a[j]},
                    {"same_in_second_method", b[i] == b[j]}};
      }
    }
  }
  return nullptr;
}

inline std::vector<Pairing> crosscheck(const InstanceFile& f, const RunOptions& opt = {}) {
  const auto p = prepare(f, opt);
  std::vector<Pairing> out;
  const auto report = classify(p.c, p.classify);
  std::vector<Amalgam> as;
  for (const auto& x : report.enumerated) as.push_back(amalgam_from_pointing(*f.type, p.c, x));
  const auto part = oracle_partition(as, opt.execution, p.oracle_budget);

  bool witnesses_ok = true;
  for (const auto& cls : report.classes) {
    for (std::size_t m = 0; m < cls.members.size(); ++m) {
      witnesses_ok = witnesses_ok &&
                     verify_pointing_witness(p.c, cls.representative, report.enumerated[cls.members[m]],
                                             cls.witnesses[m]);
    }
  }
  out.push_back({"pointing-witnesses", witnesses_ok, Json{{"classes", report.class_count()}}});

  const bool same = part.class_of == report.class_of;
  out.push_back({"pointings-vs-oracle", same,
                 Json{{"pointings", report.class_count()},
                      {"oracle", part.class_count()},
                      {"disagreement", first_disagreement(report.class_of, part.class_of, report.enumerated)}}});

  if (f.goldschmidt) {
    const auto dc = goldschmidt_classes(*f.goldschmidt).size();
    out.push_back({"double-cosets-vs-pointings", dc == report.class_count(),
                   Json{{"double_cosets", dc}, {"pointings", report.class_count()}}});
    out.push_back({"double-cosets-vs-oracle", dc == part.class_count(),
                   Json{{"double_cosets", dc}, {"oracle", part.class_count()}}});
  }
  if (f.is_triangle()) {
    const auto t = make_triangle(p.c);
    const auto orbits = triangle_orbits(t, p.orbit_budget);
    bool roundtrip = true;
    for (const auto& cls : orbits.classes) roundtrip = roundtrip && xi_map(t, xi_inverse(t, cls.representative)) == cls.representative;
    // Ξ maps each enumerated pointing to a tuple; classes must correspond.
    std::vector<std::size_t> via_xi;
    for (const auto& x : report.enumerated) via_xi.push_back(orbits.class_of[t.encode(xi_map(t, x))]);
    const bool match = orbits.classes.size() == report.class_count() &&
                       first_disagreement(report.class_of, via_xi, report.enumerated).is_null();
    out.push_back({"orbits-vs-pointings", match,
                   Json{{"orbits", orbits.classes.size()},
                        {"pointings", report.class_count()},
                        {"disagreement", first_disagreement(report.class_of, via_xi, report.enumerated)}}});
    out.push_back({"orbits-vs-oracle", orbits.classes.size() == part.class_count(),
                   Json{{"orbits", orbits.classes.size()}, {"oracle", part.class_count()}}});
    out.push_back({"xi-roundtrip", roundtrip, Json{{"representatives", orbits.classes.size()}}});
  }
  const auto rig = is_rigid(p.c, p.complement_budget);
  if (rig.rigid()) {
    const auto reduced = classify_rigid(*rig.reduced, p.classify);
    out.push_back({"rigid-vs-pointings", reduced.class_of == report.class_of,
                   Json{{"rigid", reduced.class_count()},
                        {"pointings", report.class_count()},
                        {"disagreement", first_disagreement(report.class_of, reduced.class_of, report.enumerated)}}});
  }
  return out;
}

inline Json cmd_crosscheck(const InstanceFile& f, const RunOptions& opt = {}) {
  Json out = header("crosscheck", f);
  Json results = Json::array();
  bool all = true;
  for (const auto& pr : crosscheck(f, opt)) {
    all = all && pr.pass;
    results.push_back(Json{{"pairing", pr.name}, {"result", pr.pass ? "PASS" : "FAIL"}, {"detail", pr.detail}});
  }
  out["pairings"] = results;
  out["result"] = all ? "PASS" : "FAIL";
  return out;
}

}  // namespace amalgams
