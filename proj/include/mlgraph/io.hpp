#pragma once

// JSON model files (algebra, graph, open graph, optional morphism) and DOT
// export. Parsing accepts integer or string ids and maps them to dense
// indices in file order; emitting writes dense integer ids, so
// emit(parse(emit(m))) == emit(m).

#include <cstddef>
#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlgraph/emergence.hpp"
#include "mlgraph/homology.hpp"
#include "mlgraph/open_graph.hpp"

namespace mlgraph::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::schema, where + ": " + what);
}

namespace detail {

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema_error(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline std::string id_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema_error(where, "ids must be integers or strings");
}

inline std::size_t as_index(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    schema_error(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::string scalar_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_float()) return j.dump();
  schema_error(where, "expected a string or number");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebras

inline json algebra_to_json(const LabelAlgebra& a) {
  if (auto named = algebras::by_name(a.name()); named && *named == a) return a.name();
  if (!a.is_finite()) return a.name();
  json j;
  j["kind"] = "finite-table";
  j["name"] = a.name();
  j["elements"] = a.element_names();
  j["mul_table"] = a.mul_table().rows();
  if (a.is_rig()) j["add_table"] = a.add_table().rows();
  j["unit"] = a.unit_index();
  if (a.is_rig()) j["zero"] = a.zero_index();
  j["flags"] = {{"commutative", a.declared_flags().commutative}, {"cancellative", a.declared_flags().cancellative}};
  return j;
}

inline LabelAlgebra algebra_from_json(const json& j, const std::string& where = "algebra") {
  auto by_name = [&](const std::string& name) {
    if (auto a = algebras::by_name(name)) return *a;
    schema_error(where, "unknown algebra '" + name + "'");
  };
  if (j.is_string()) return by_name(j.get<std::string>());
  if (!j.is_object()) schema_error(where, "expected an algebra name or object");
  const std::string kind = j.value("kind", "finite-table");
  if (kind == "builtin") return by_name(detail::need(j, "builtin_id", where).get<std::string>());
  if (kind != "finite-table") schema_error(where, "unknown kind '" + kind + "'");

  const json& elems = detail::need(j, "elements", where);
  if (!elems.is_array()) schema_error(where + ".elements", "expected an array");
  std::vector<std::string> names;
  for (const auto& e : elems) names.push_back(detail::scalar_text(e, where + ".elements"));

  auto element_ref = [&](const json& v, const std::string& at) -> std::size_t {
    if (v.is_string()) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == v.get<std::string>()) return i;
      throw Error(ErrorCode::unknown_element, at + ": '" + v.get<std::string>() + "' is not an element");
    }
    return detail::as_index(v, at);
  };
  auto table = [&](const char* key) {
    const json& t = detail::need(j, key, where);
    const std::string at = where + "." + key;
    if (!t.is_array()) schema_error(at, "expected an array");
    std::vector<std::vector<std::size_t>> rows;
    const std::size_t n = names.size();
    if (!t.empty() && !t.front().is_array()) {
      if (t.size() != n * n)
        throw Error(ErrorCode::structural, at + ": flat table has " + std::to_string(t.size()) + " entries, expected " +
                                               std::to_string(n * n));
      for (std::size_t r = 0; r < n; ++r) {
        rows.emplace_back();
        for (std::size_t c = 0; c < n; ++c) rows.back().push_back(element_ref(t[r * n + c], at));
      }
    } else {
      for (const auto& row : t) {
        if (!row.is_array()) schema_error(at, "rows must be arrays");
        rows.emplace_back();
        for (const auto& v : row) rows.back().push_back(element_ref(v, at));
      }
    }
    return Table::from_rows(rows);
  };

  AlgebraFlags flags;
  if (j.contains("flags")) {
    const json& f = j.at("flags");
    if (f.is_object()) {
      flags.commutative = f.value("commutative", false);
      flags.cancellative = f.value("cancellative", false);
    } else if (f.is_array()) {
      for (const auto& x : f) {
        const auto s = x.get<std::string>();
        if (s == "commutative") flags.commutative = true;
        else if (s == "cancellative") flags.cancellative = true;
        else schema_error(where + ".flags", "unknown flag '" + s + "'");
      }
    } else {
      schema_error(where + ".flags", "expected an object or array");
    }
  }
  const std::string name = j.value("name", "custom");
  const std::size_t unit = element_ref(detail::need(j, "unit", where), where + ".unit");
  if (j.contains("add_table")) {
    const std::size_t zero = element_ref(detail::need(j, "zero", where), where + ".zero");
    return LabelAlgebra::rig(name, names, table("add_table"), table("mul_table"), zero, unit, flags);
  }
  return LabelAlgebra::monoid(name, names, table("mul_table"), unit, flags);
}

// ---------------------------------------------------------------------------
// Graphs

inline json label_to_json(const LabelAlgebra& a, const Element& x) {
  if (!a.is_finite() && denominator(x.num()) == 1) {
    const Integer n = numerator(x.num());
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return static_cast<long long>(n);
  }
  return a.format(x);
}

inline json graph_to_json(const LabeledGraph& g) {
  json j;
  j["format_version"] = kFormatVersion;
  j["algebra"] = algebra_to_json(g.algebra);
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    j["vertices"].push_back({{"id", v}, {"name", g.graph.vertex_name(v)}});
  j["edges"] = json::array();
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e)
    j["edges"].push_back({{"id", e},
                          {"name", g.graph.edge_name(e)},
                          {"src", g.graph.src(e)},
                          {"tgt", g.graph.tgt(e)},
                          {"label", label_to_json(g.algebra, g.label(e))}});
  return j;
}

// Graph ids as they appear in the file, for resolving later references.
struct IdMaps {
  std::map<std::string, std::size_t> vertex;
  std::map<std::string, std::size_t> edge;

  std::size_t vertex_of(const json& ref, const std::string& where) const {
    const std::string key = detail::id_text(ref, where);
    auto it = vertex.find(key);
    if (it == vertex.end()) throw Error(ErrorCode::dangling_id, where + ": no vertex with id " + key);
    return it->second;
  }
  std::size_t edge_of(const json& ref, const std::string& where) const {
    const std::string key = detail::id_text(ref, where);
    auto it = edge.find(key);
    if (it == edge.end()) throw Error(ErrorCode::dangling_id, where + ": no edge with id " + key);
    return it->second;
  }
};

inline LabeledGraph graph_from_json(const json& j, IdMaps* ids_out = nullptr, const std::string& where = "graph") {
  if (!j.is_object()) schema_error(where, "expected an object");
  if (j.contains("format_version") && j.at("format_version") != kFormatVersion)
    schema_error(where, "unsupported format_version " + j.at("format_version").dump());
  LabeledGraph g(algebra_from_json(detail::need(j, "algebra", where), where + ".algebra"));
  IdMaps ids;

  const json& vs = detail::need(j, "vertices", where);
  if (!vs.is_array()) schema_error(where + ".vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string at = where + ".vertices[" + std::to_string(i) + "]";
    const json& v = vs[i];
    std::string id, name;
    if (v.is_object()) {
      id = detail::id_text(detail::need(v, "id", at), at + ".id");
      name = v.contains("name") ? detail::scalar_text(v.at("name"), at + ".name") : id;
    } else {
      id = name = detail::id_text(v, at);
    }
    if (!ids.vertex.emplace(id, g.add_vertex(name)).second) schema_error(at, "duplicate vertex id " + id);
  }

  const json& es = detail::need(j, "edges", where);
  if (!es.is_array()) schema_error(where + ".edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string at = where + ".edges[" + std::to_string(i) + "]";
    const json& e = es[i];
    if (!e.is_object()) schema_error(at, "expected an object");
    const std::string id = e.contains("id") ? detail::id_text(e.at("id"), at + ".id") : std::to_string(i);
    const std::string name = e.contains("name") ? detail::scalar_text(e.at("name"), at + ".name") : "e" + id;
    const std::size_t s = ids.vertex_of(detail::need(e, "src", at), at + ".src");
    const std::size_t t = ids.vertex_of(detail::need(e, "tgt", at), at + ".tgt");
    const std::string label = detail::scalar_text(detail::need(e, "label", at), at + ".label");
    auto x = g.algebra.find(label);
    if (!x)
      throw Error(ErrorCode::unknown_element,
                  at + ": label '" + label + "' of edge '" + name + "' is not an element of " + g.algebra.name());
    if (!ids.edge.emplace(id, g.add_edge(s, t, *x, name)).second) schema_error(at, "duplicate edge id " + id);
  }
  if (ids_out) *ids_out = std::move(ids);
  return g;
}

// ---------------------------------------------------------------------------
// Open graphs

inline json open_graph_to_json(const OpenGraph& o) {
  json j;
  j["format_version"] = kFormatVersion;
  json inner = graph_to_json(o.inner);
  inner.erase("format_version");
  j["inner"] = inner;
  j["left_foot"] = o.left_foot;
  j["right_foot"] = o.right_foot;
  j["leg_in"] = json::object();
  for (std::size_t i = 0; i < o.left_foot.size(); ++i) j["leg_in"][o.left_foot[i]] = o.leg_in[i];
  j["leg_out"] = json::object();
  for (std::size_t i = 0; i < o.right_foot.size(); ++i) j["leg_out"][o.right_foot[i]] = o.leg_out[i];
  return j;
}

inline OpenGraph open_graph_from_json(const json& j, const std::string& where = "open_graph") {
  if (!j.is_object()) schema_error(where, "expected an object");
  OpenGraph o;
  IdMaps ids;
  o.inner = graph_from_json(detail::need(j, "inner", where), &ids, where + ".inner");
  auto foot = [&](const char* key, std::vector<std::string>& names) {
    const json& f = detail::need(j, key, where);
    if (!f.is_array()) schema_error(where + "." + key, "expected an array");
    for (const auto& x : f) names.push_back(detail::id_text(x, where + "." + key));
  };
  foot("left_foot", o.left_foot);
  foot("right_foot", o.right_foot);
  auto legs = [&](const char* key, const std::vector<std::string>& names, std::vector<std::size_t>& out) {
    const json& l = detail::need(j, key, where);
    const std::string at = where + "." + key;
    if (!l.is_object()) schema_error(at, "expected an object keyed by foot element");
    for (const auto& n : names) {
      if (!l.contains(n)) schema_error(at, "no leg for foot element '" + n + "'");
      out.push_back(ids.vertex_of(l.at(n), at + "." + n));
    }
    for (const auto& [k, v] : l.items())
      if (std::find(names.begin(), names.end(), k) == names.end())
        throw Error(ErrorCode::dangling_id, at + ": '" + k + "' is not a foot element");
  };
  legs("leg_in", o.left_foot, o.leg_in);
  legs("leg_out", o.right_foot, o.leg_out);
  o.check();
  return o;
}

// ---------------------------------------------------------------------------
// Model files

struct MorphismSection {
  LabeledGraph target;
  GraphMorphism map;
};

struct ModelFile {
  std::optional<LabelAlgebra> algebra;  // a bare algebra file
  std::optional<LabeledGraph> graph;
  std::optional<OpenGraph> open_graph;
  std::optional<MorphismSection> morphism;

  // The labeled graph in the file, whichever section holds it.
  const LabeledGraph& labeled_graph() const {
    if (graph) return *graph;
    if (open_graph) return open_graph->inner;
    throw Error(ErrorCode::schema, "file contains no graph");
  }
};

inline json morphism_to_json(const MorphismSection& m) {
  json target = graph_to_json(m.target);
  target.erase("format_version");
  return {{"target", target}, {"f0", m.map.f0}, {"f1", m.map.f1}};
}

inline MorphismSection morphism_from_json(const json& j, const LabeledGraph& source, const std::string& where) {
  MorphismSection m;
  IdMaps ids;
  m.target = graph_from_json(detail::need(j, "target", where), &ids, where + ".target");
  auto read = [&](const char* key, std::size_t count, bool vertices) {
    const json& a = detail::need(j, key, where);
    const std::string at = where + "." + key;
    if (!a.is_array() || a.size() != count)
      schema_error(at, "expected an array with " + std::to_string(count) + " entries");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string ai = at + "[" + std::to_string(i) + "]";
      out.push_back(vertices ? ids.vertex_of(a[i], ai) : ids.edge_of(a[i], ai));
    }
    return out;
  };
  m.map.f0 = read("f0", source.graph.vertex_count(), true);
  m.map.f1 = read("f1", source.graph.edge_count(), false);
  return m;
}

inline json model_to_json(const ModelFile& m) {
  if (m.algebra && !m.graph && !m.open_graph) return algebra_to_json(*m.algebra);
  json j;
  if (m.open_graph) j = open_graph_to_json(*m.open_graph);
  else if (m.graph) j = graph_to_json(*m.graph);
  if (m.morphism) j["morphism"] = morphism_to_json(*m.morphism);
  return j;
}

inline ModelFile model_from_json(const json& j) {
  if (!j.is_object() && !j.is_string()) schema_error("file", "expected a JSON object");
  ModelFile m;
  if (j.is_string() || j.contains("elements") || j.contains("builtin_id")) {
    m.algebra = algebra_from_json(j);
    return m;
  }
  // Wrapped form: {"graph": ...} or {"open_graph": ...}
  if (j.contains("open_graph")) {
    m.open_graph = open_graph_from_json(j.at("open_graph"));
  } else if (j.contains("graph")) {
    m.graph = graph_from_json(j.at("graph"));
  } else if (j.contains("inner")) {
    m.open_graph = open_graph_from_json(j);
  } else if (j.contains("vertices")) {
    m.graph = graph_from_json(j);
  } else {
    schema_error("file", "expected a graph, open graph or algebra");
  }
  if (j.contains("morphism")) m.morphism = morphism_from_json(j.at("morphism"), m.labeled_graph(), "morphism");
  return m;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw Error(ErrorCode::schema, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                       std::string(e.what()));
  }
}

inline ModelFile parse(const std::string& text) {
  try {
    return model_from_json(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, e.what());
  }
}

inline std::string emit(const ModelFile& m) { return model_to_json(m).dump(2) + "\n"; }
inline std::string emit(const LabeledGraph& g) { return graph_to_json(g).dump(2) + "\n"; }
inline std::string emit(const OpenGraph& o) { return open_graph_to_json(o).dump(2) + "\n"; }

// "e1:2,e3:1" with edge names or dense ids; coefficients parsed in `algebra`.
inline Chain parse_chain(const std::string& text, const Graph& g, const LabelAlgebra& algebra = algebras::nat_add()) {
  Chain c(Carrier::edges, algebra);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const std::string key = item.substr(0, colon);
    const std::string coeff = colon == std::string::npos ? "1" : item.substr(colon + 1);
    std::size_t e;
    if (auto named = g.find_edge(key)) {
      e = *named;
    } else {
      try {
        std::size_t used = 0;
        e = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw Error(ErrorCode::dangling_id, "no edge '" + key + "'");
      }
      g.check_edge(e);
    }
    c.add_term(e, algebra.parse(coeff));
  }
  return c;
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_dot(const LabeledGraph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(name) << " {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    os << "  v" << v << " [label=" << detail::dot_quote(g.graph.vertex_name(v)) << "];\n";
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e)
    os << "  v" << g.graph.src(e) << " -> v" << g.graph.tgt(e)
       << " [label=" << detail::dot_quote(g.algebra.format(g.label(e))) << "];\n";
  os << "}\n";
  return os.str();
}

// Feet are drawn as boxes joined to their vertices by dashed, unlabeled arrows.
inline std::string to_dot(const OpenGraph& o, const std::string& name = "G") {
  std::ostringstream os;
  const LabeledGraph& g = o.inner;
  os << "digraph " << detail::dot_quote(name) << " {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    os << "  v" << v << " [label=" << detail::dot_quote(g.graph.vertex_name(v)) << "];\n";
  for (std::size_t i = 0; i < o.left_foot.size(); ++i)
    os << "  a" << i << " [shape=box, label=" << detail::dot_quote(o.left_foot[i]) << "];\n";
  for (std::size_t i = 0; i < o.right_foot.size(); ++i)
    os << "  b" << i << " [shape=box, label=" << detail::dot_quote(o.right_foot[i]) << "];\n";
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e)
    os << "  v" << g.graph.src(e) << " -> v" << g.graph.tgt(e)
       << " [label=" << detail::dot_quote(g.algebra.format(g.label(e))) << "];\n";
  for (std::size_t i = 0; i < o.leg_in.size(); ++i) os << "  a" << i << " -> v" << o.leg_in[i] << " [style=dashed];\n";
  for (std::size_t i = 0; i < o.leg_out.size(); ++i) os << "  b" << i << " -> v" << o.leg_out[i] << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mlgraph::io
