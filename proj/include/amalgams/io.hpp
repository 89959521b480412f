#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalgams/amalgam.hpp"
#include "amalgams/error.hpp"
#include "amalgams/goldschmidt.hpp"
#include "amalgams/graph.hpp"
#include "amalgams/named_groups.hpp"
#include "amalgams/triangle.hpp"

namespace amalgams {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A parsed instance file. Every kind is also available as an amalgam type;
/// goldschmidt files additionally keep the classical data.
struct InstanceFile {
  std::string kind;  // amalgam-type | goldschmidt | triangle
  std::string name;
  std::optional<AmalgamType> type;
  std::optional<GoldschmidtInstance> goldschmidt;
  Json expected = Json::object();
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> budget;

  bool is_double_loop() const { return goldschmidt.has_value(); }
  bool is_triangle() const { return is_triangle_graph(type->graph()); }
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& slot, const std::string& what) {
  throw Error(ErrorKind::SchemaError, slot + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& slot) {
  if (!j.is_object() || !j.contains(key)) schema_fail(slot, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t as_index(const Json& j, const std::string& slot) {
  if (!j.is_number_unsigned()) schema_fail(slot, "expected a non-negative integer");
  return j.get<std::size_t>();
}

/// Rethrows shape problems found while building objects from a slot as
/// schema errors naming that slot; cap and budget errors pass through.
template <class F>
auto at_slot(const std::string& slot, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CapExceeded || e.kind() == ErrorKind::BudgetExceeded) {
      throw Error(e.kind(), slot + ": " + e.what());
    }
    if (e.kind() == ErrorKind::SchemaError) throw;
    schema_fail(slot, e.what());
  }
}

}  // namespace detail

inline Perm parse_perm(const Json& j, std::size_t degree, const std::string& slot) {
  if (!j.is_array()) detail::schema_fail(slot, "permutation must be an array of images");
  std::vector<Point> img;
  for (const auto& x : j) img.push_back(static_cast<Point>(detail::as_index(x, slot)));
  if (img.size() != degree) {
    detail::schema_fail(slot, "permutation has " + std::to_string(img.size()) + " images, degree is " +
                                  std::to_string(degree));
  }
  return detail::at_slot(slot, [&] { return Perm(std::move(img)); });
}

inline Json perm_json(const Perm& p) {
  Json out = Json::array();
  for (Point x : p.images()) out.push_back(x);
  return out;
}

/// A group is a name ("D8", "Z4", ...) or {"degree": n, "generators": [[...], ...]}.
inline GroupPtr parse_group(const Json& j, const std::string& slot, std::size_t cap) {
  if (j.is_string()) {
    auto g = named_group(j.get<std::string>());
    if (!g) detail::schema_fail(slot, "unknown group name \"" + j.get<std::string>() + "\"");
    if ((*g)->order() > cap) throw Error(ErrorKind::CapExceeded, slot + ": group order exceeds cap");
    return *g;
  }
  const std::size_t degree = detail::as_index(detail::field(j, "degree", slot), slot + ".degree");
  if (degree == 0) detail::schema_fail(slot + ".degree", "degree must be positive");
  const auto& gens = detail::field(j, "generators", slot);
  if (!gens.is_array()) detail::schema_fail(slot + ".generators", "expected an array");
  std::vector<Perm> perms;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    perms.push_back(parse_perm(gens[k], degree, slot + ".generators[" + std::to_string(k) + "]"));
  }
  return detail::at_slot(slot, [&] { return generate_group(degree, std::move(perms), cap); });
}

inline Json group_json(const GroupPtr& g) {
  Json gens = Json::array();
  for (const auto& p : g->generators()) gens.push_back(perm_json(p));
  return Json{{"degree", g->degree()}, {"generators", gens}};
}

/// Images of the domain generators, each a permutation of the codomain's points.
inline GroupMap parse_map(const Json& j, const GroupPtr& domain, const GroupPtr& codomain, const std::string& slot) {
  if (!j.is_array() || j.size() != domain->generators().size()) {
    detail::schema_fail(slot, "expected " + std::to_string(domain->generators().size()) + " generator images");
  }
  std::vector<Elem> images;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string s = slot + "[" + std::to_string(k) + "]";
    const Perm p = parse_perm(j[k], codomain->degree(), s);
    const auto e = codomain->index_of(p);
    if (!e) detail::schema_fail(s, "image is not an element of the target group");
    images.push_back(*e);
  }
  return detail::at_slot(slot, [&] { return hom_from_gen_images(domain, codomain, std::move(images)); });
}

inline Json map_json(const GroupMap& f) {
  Json out = Json::array();
  for (Elem e : f.gen_images()) out.push_back(perm_json(f.codomain()->element(e)));
  return out;
}

inline OrientedGraph parse_graph(const Json& j, const std::string& slot) {
  const std::size_t n = detail::as_index(detail::field(j, "vertices", slot), slot + ".vertices");
  const auto& edges = detail::field(j, "edges", slot);
  if (!edges.is_array()) detail::schema_fail(slot + ".edges", "expected an array");
  std::vector<std::pair<Vertex, Vertex>> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string s = slot + ".edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) detail::schema_fail(s, "edge must be [u, v]");
    list.emplace_back(static_cast<Vertex>(detail::as_index(edges[k][0], s)),
                      static_cast<Vertex>(detail::as_index(edges[k][1], s)));
  }
  return detail::at_slot(slot, [&] { return build_graph(n, list); });
}

inline Json graph_json(const OrientedGraph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edge_list()) edges.push_back({u, v});
  return Json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

namespace detail {

inline std::vector<GroupPtr> parse_groups(const Json& j, const char* key, std::size_t count, std::size_t cap) {
  const auto& arr = field(j, key, "");
  if (!arr.is_array() || arr.size() != count) {
    schema_fail(key, "expected " + std::to_string(count) + " groups");
  }
  std::vector<GroupPtr> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(parse_group(arr[k], std::string(key) + "[" + std::to_string(k) + "]", cap));
  }
  return out;
}

/// Inclusions are listed per dart; a loop may give only one of its darts.
inline Amalgam parse_amalgam_body(const Json& j, OrientedGraph g, std::size_t cap) {
  auto vgroups = parse_groups(j, "vertex_groups", g.vertex_count(), cap);
  auto egroups = parse_groups(j, "edge_groups", g.edge_count(), cap);
  const auto& incl = field(j, "inclusions", "");
  if (!incl.is_array()) schema_fail("inclusions", "expected an array");
  std::vector<std::optional<GroupMap>> maps(g.dart_count());
  for (std::size_t k = 0; k < incl.size(); ++k) {
    const std::string s = "inclusions[" + std::to_string(k) + "]";
    const Dart e = static_cast<Dart>(as_index(field(incl[k], "dart", s), s + ".dart"));
    if (e >= g.dart_count()) schema_fail(s + ".dart", "no such dart");
    if (maps[e]) schema_fail(s + ".dart", "dart listed twice");
    maps[e] = parse_map(field(incl[k], "gen_images", s), vgroups[g.d0(e)], egroups[OrientedGraph::edge_of(e)],
                        s + ".gen_images");
  }
  std::vector<GroupMap> out;
  for (Dart e = 0; e < g.dart_count(); ++e) {
    if (!maps[e] && g.d0(e) == g.d1(e)) maps[e] = maps[g.bar(e)];
    if (!maps[e]) schema_fail("inclusions", "dart " + std::to_string(e) + " has no inclusion");
    out.push_back(*maps[e]);
  }
  return at_slot("inclusions", [&] { return make_amalgam(std::move(g), vgroups, egroups, std::move(out)); });
}

}  // namespace detail

inline Json inclusions_json(const Amalgam& a) {
  Json out = Json::array();
  for (Dart e = 0; e < a.graph().dart_count(); ++e) {
    out.push_back(Json{{"dart", e}, {"gen_images", map_json(a.inclusion(e))}});
  }
  return out;
}

inline InstanceFile parse_instance(const Json& j, std::optional<std::size_t> cap_override = std::nullopt) {
  if (!j.is_object()) detail::schema_fail("<root>", "expected an object");
  const auto& schema = detail::field(j, "schema", "<root>");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion) {
    detail::schema_fail("schema", "unsupported schema version");
  }
  const auto& kind = detail::field(j, "kind", "<root>");
  if (!kind.is_string()) detail::schema_fail("kind", "expected a string");
  InstanceFile f;
  f.kind = kind.get<std::string>();
  if (j.contains("name")) f.name = j.at("name").get<std::string>();
  if (j.contains("expected")) f.expected = j.at("expected");
  if (j.contains("cap")) f.cap = detail::as_index(j.at("cap"), "cap");
  if (j.contains("budget")) f.budget = detail::as_index(j.at("budget"), "budget");
  const std::size_t cap = cap_override.value_or(f.cap.value_or(kDefaultCap));

  if (f.kind == "amalgam-type") {
    f.type.emplace(detail::parse_amalgam_body(j, parse_graph(detail::field(j, "graph", "<root>"), "graph"), cap));
  } else if (f.kind == "triangle") {
    f.type.emplace(detail::parse_amalgam_body(j, build_graph(3, {{0, 1}, {1, 2}, {2, 0}}), cap));
  } else if (f.kind == "goldschmidt") {
    auto b = parse_group(detail::field(j, "B", "<root>"), "B", cap);
    auto p1 = parse_group(detail::field(j, "P1", "<root>"), "P1", cap);
    auto p2 = parse_group(detail::field(j, "P2", "<root>"), "P2", cap);
    auto psi1 = parse_map(detail::field(j, "psi1", "<root>"), b, p1, "psi1");
    auto psi2 = parse_map(detail::field(j, "psi2", "<root>"), b, p2, "psi2");
    f.goldschmidt.emplace(detail::at_slot("psi", [&] { return make_goldschmidt(b, p1, p2, psi1, psi2, cap); }));
    f.type.emplace(goldschmidt_type(*f.goldschmidt));
  } else {
    detail::schema_fail("kind", "unknown kind \"" + f.kind + "\"");
  }
  if (f.kind == "amalgam-type" && f.type->graph().edge_count() == 2 && f.type->graph().vertex_count() == 1) {
    // a double loop given in the general form is still a classical amalgam
    const auto& ref = f.type->reference();
    f.goldschmidt.emplace(make_goldschmidt(ref.vertex_group(0), ref.edge_groups()[0], ref.edge_groups()[1],
                                           ref.inclusion(0), ref.inclusion(2), cap));
  }
  return f;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, origin + ": " + e.what());
  }
}

inline InstanceFile load_instance(const std::string& path, std::optional<std::size_t> cap_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SchemaError, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(parse_json_text(ss.str(), path), cap_override);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, path + ": " + e.what());
  }
}

}  // namespace amalgams
