#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlgraph/error.hpp"
#include "mlgraph/label_algebra.hpp"

namespace mlgraph {

// Outcome of a yes/no check, with the first offending id when it fails.
struct Verdict {
  bool ok = true;
  std::optional<std::size_t> witness;
  std::string reason;

  explicit operator bool() const { return ok; }

  static Verdict pass() { return {}; }
  static Verdict fail(std::size_t id, std::string why) { return {false, id, std::move(why)}; }
};

// Finite directed multigraph with dense vertex and edge ids.
class Graph {
 public:
  std::size_t add_vertex(std::string name = {}) {
    if (name.empty()) name = "v" + std::to_string(vertex_names_.size());
    vertex_names_.push_back(std::move(name));
    return vertex_names_.size() - 1;
  }

  std::size_t add_edge(std::size_t s, std::size_t t, std::string name = {}) {
    check_vertex(s);
    check_vertex(t);
    if (name.empty()) name = "e" + std::to_string(src_.size());
    src_.push_back(s);
    tgt_.push_back(t);
    edge_names_.push_back(std::move(name));
    return src_.size() - 1;
  }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return src_.size(); }
  std::size_t src(std::size_t e) const { return src_.at(e); }
  std::size_t tgt(std::size_t e) const { return tgt_.at(e); }
  const std::string& vertex_name(std::size_t v) const { return vertex_names_.at(v); }
  const std::string& edge_name(std::size_t e) const { return edge_names_.at(e); }
  void rename_vertex(std::size_t v, std::string name) { vertex_names_.at(v) = std::move(name); }
  void rename_edge(std::size_t e, std::string name) { edge_names_.at(e) = std::move(name); }

  std::optional<std::size_t> find_vertex(std::string_view name) const {
    for (std::size_t v = 0; v < vertex_names_.size(); ++v)
      if (vertex_names_[v] == name) return v;
    return std::nullopt;
  }
  std::optional<std::size_t> find_edge(std::string_view name) const {
    for (std::size_t e = 0; e < edge_names_.size(); ++e)
      if (edge_names_[e] == name) return e;
    return std::nullopt;
  }
  std::size_t vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw Error(ErrorCode::dangling_id, "no vertex named '" + std::string(name) + "'");
  }
  std::size_t edge(std::string_view name) const {
    if (auto e = find_edge(name)) return *e;
    throw Error(ErrorCode::dangling_id, "no edge named '" + std::string(name) + "'");
  }

  std::vector<std::size_t> out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < src_.size(); ++e)
      if (src_[e] == v) out.push_back(e);
    return out;
  }

  void check_vertex(std::size_t v) const {
    if (v >= vertex_names_.size())
      throw Error(ErrorCode::dangling_id, "vertex id " + std::to_string(v) + " does not exist");
  }
  void check_edge(std::size_t e) const {
    if (e >= src_.size()) throw Error(ErrorCode::dangling_id, "edge id " + std::to_string(e) + " does not exist");
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
};

struct LabeledGraph {
  Graph graph;
  LabelAlgebra algebra;
  std::vector<Element> labels;

  LabeledGraph() = default;
  LabeledGraph(Graph g, LabelAlgebra a, std::vector<Element> ls)
      : graph(std::move(g)), algebra(std::move(a)), labels(std::move(ls)) {
    check();
  }
  explicit LabeledGraph(LabelAlgebra a) : algebra(std::move(a)) {}

  std::size_t add_vertex(std::string name = {}) { return graph.add_vertex(std::move(name)); }

  std::size_t add_edge(std::size_t s, std::size_t t, const Element& label, std::string name = {}) {
    algebra.check_member(label);
    labels.push_back(label);
    return graph.add_edge(s, t, std::move(name));
  }

  // Convenience: endpoints and label by name.
  std::size_t add_edge(std::string_view s, std::string_view t, std::string_view label, std::string name = {}) {
    return add_edge(graph.vertex(s), graph.vertex(t), algebra.parse(label), std::move(name));
  }

  const Element& label(std::size_t e) const { return labels.at(e); }

  void check() const {
    if (labels.size() != graph.edge_count())
      throw Error(ErrorCode::structural, "labeling has " + std::to_string(labels.size()) + " entries for " +
                                             std::to_string(graph.edge_count()) + " edges");
    for (std::size_t e = 0; e < labels.size(); ++e)
      if (!algebra.contains(labels[e]))
        throw Error(ErrorCode::unknown_element, "label of edge '" + graph.edge_name(e) + "' is not in " + algebra.name());
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.graph == b.graph && a.algebra == b.algebra && a.labels == b.labels;
  }
};

// f = (f0 on vertices, f1 on edges).
struct GraphMorphism {
  std::vector<std::size_t> f0;
  std::vector<std::size_t> f1;

  static GraphMorphism identity(const Graph& g) {
    GraphMorphism m;
    m.f0.resize(g.vertex_count());
    m.f1.resize(g.edge_count());
    std::iota(m.f0.begin(), m.f0.end(), 0);
    std::iota(m.f1.begin(), m.f1.end(), 0);
    return m;
  }

  friend bool operator==(const GraphMorphism&, const GraphMorphism&) = default;
};

// g after f.
inline GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
  GraphMorphism h;
  for (auto v : f.f0) h.f0.push_back(g.f0.at(v));
  for (auto e : f.f1) h.f1.push_back(g.f1.at(e));
  return h;
}

inline void check_morphism_shape(const GraphMorphism& m, const Graph& source, const Graph& target) {
  if (m.f0.size() != source.vertex_count())
    throw Error(ErrorCode::structural, "vertex map has " + std::to_string(m.f0.size()) + " entries, source has " +
                                           std::to_string(source.vertex_count()) + " vertices");
  if (m.f1.size() != source.edge_count())
    throw Error(ErrorCode::structural, "edge map has " + std::to_string(m.f1.size()) + " entries, source has " +
                                           std::to_string(source.edge_count()) + " edges");
  for (auto v : m.f0) target.check_vertex(v);
  for (auto e : m.f1) target.check_edge(e);
}

// Lists every source edge at which f0 . s = s' . f1 or f0 . t = t' . f1 fails.
inline ValidationReport validate_morphism(const GraphMorphism& m, const Graph& source, const Graph& target) {
  check_morphism_shape(m, source, target);
  ValidationReport report;
  for (std::size_t e = 0; e < source.edge_count(); ++e) {
    const std::size_t fe = m.f1[e];
    if (m.f0[source.src(e)] != target.src(fe)) report.violations.push_back({"source square", source.edge_name(e)});
    if (m.f0[source.tgt(e)] != target.tgt(fe)) report.violations.push_back({"target square", source.edge_name(e)});
  }
  return report;
}

inline void require_same_algebra(const LabelAlgebra& a, const LabelAlgebra& b) {
  if (a != b) throw Error(ErrorCode::algebra_mismatch, "graphs are labeled in " + a.name() + " and " + b.name());
}

inline Verdict is_label_preserving(const GraphMorphism& m, const LabeledGraph& src, const LabeledGraph& dst) {
  require_same_algebra(src.algebra, dst.algebra);
  check_morphism_shape(m, src.graph, dst.graph);
  for (std::size_t e = 0; e < src.graph.edge_count(); ++e)
    if (dst.label(m.f1[e]) != src.label(e))
      return Verdict::fail(e, "label of '" + src.graph.edge_name(e) + "' is not preserved");
  return Verdict::pass();
}

// The unique labeling of m's source that makes m label-preserving.
inline LabeledGraph pullback_labeling(const GraphMorphism& m, const Graph& source, const LabeledGraph& dst) {
  check_morphism_shape(m, source, dst.graph);
  std::vector<Element> labels;
  labels.reserve(source.edge_count());
  for (auto fe : m.f1) labels.push_back(dst.label(fe));
  return LabeledGraph(source, dst.algebra, std::move(labels));
}

inline LabeledGraph change_labels(const MonoidHom& h, const LabeledGraph& g) {
  require_same_algebra(g.algebra, h.source());
  std::vector<Element> labels;
  labels.reserve(g.labels.size());
  for (const auto& x : g.labels) labels.push_back(h(x));
  return LabeledGraph(g.graph, h.target(), std::move(labels));
}

// Disjoint pieces of the underlying undirected graph. Blocks list vertices in
// increasing order and are sorted by their smallest vertex.
inline std::vector<std::vector<std::size_t>> undirected_components(const Graph& g) {
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto a = find(g.src(e)), b = find(g.tgt(e));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) blocks[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : blocks) out.push_back(std::move(members));
  return out;
}

// ---------------------------------------------------------------------------
// Semiautomata

struct Semiautomaton {
  std::vector<std::string> states;
  std::vector<std::string> inputs;
  // action[a][v] is the state reached from v on input a.
  std::vector<std::vector<std::size_t>> action;
};

inline constexpr std::size_t kTransformationMonoidGuard = 5000;

// The graph of a semiautomaton labeled in the transformation monoid generated
// by its inputs. Edge (a, v) goes v -> action[a][v], is named "a@v" and is
// listed input-major. Monoid elements are transformations written as image
// vectors; mul[f][g] is "g then f", so a path's grade is the composite action.
inline LabeledGraph from_semiautomaton(const Semiautomaton& sa) {
  const std::size_t n = sa.states.size();
  if (sa.action.size() != sa.inputs.size())
    throw Error(ErrorCode::structural, "action needs one row per input");
  for (const auto& row : sa.action) {
    if (row.size() != n) throw Error(ErrorCode::structural, "action row must have one entry per state");
    for (auto v : row)
      if (v >= n) throw Error(ErrorCode::dangling_id, "action targets a state that does not exist");
  }

  using Map = std::vector<std::size_t>;
  std::vector<Map> elems;
  std::map<Map, std::size_t> index;
  auto intern = [&](const Map& f) {
    auto [it, inserted] = index.emplace(f, elems.size());
    if (inserted) {
      if (elems.size() >= kTransformationMonoidGuard)
        throw Error(ErrorCode::guard_exceeded, "transformation monoid exceeds " +
                                                   std::to_string(kTransformationMonoidGuard) + " elements");
      elems.push_back(f);
    }
    return it->second;
  };
  auto then = [&](const Map& first, const Map& second) {
    Map r(n);
    for (std::size_t v = 0; v < n; ++v) r[v] = second[first[v]];
    return r;
  };

  Map id(n);
  std::iota(id.begin(), id.end(), 0);
  intern(id);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& gen : sa.action) intern(then(elems[i], gen));

  const std::size_t m = elems.size();
  Table mul(m);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) mul.set(f, g, index.at(then(elems[g], elems[f])));

  std::vector<std::string> names;
  for (const auto& f : elems) {
    std::string s = "[";
    for (std::size_t v = 0; v < n; ++v) s += (v ? "," : "") + std::to_string(f[v]);
    names.push_back(s + "]");
  }
  names[0] = "id";
  auto algebra = LabelAlgebra::monoid("Trans", std::move(names), std::move(mul), 0, {false, false});

  LabeledGraph out(algebra);
  for (const auto& s : sa.states) out.add_vertex(s);
  for (std::size_t a = 0; a < sa.inputs.size(); ++a) {
    const Element label = Element::index(index.at(sa.action[a]));
    for (std::size_t v = 0; v < n; ++v) out.add_edge(v, sa.action[a][v], label, sa.inputs[a] + "@" + sa.states[v]);
  }
  return out;
}

}  // namespace mlgraph
