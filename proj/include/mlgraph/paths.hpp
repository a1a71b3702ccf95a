#pragma once

// Paths in the free category on a labeled graph, their grades, Kleisli
// morphisms (edges sent to paths) and bounded motif search.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mlgraph/graph.hpp"

namespace mlgraph {

struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> edges;

  static Path identity(std::size_t v) { return {v, {}}; }
  std::size_t length() const { return edges.size(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

inline bool is_valid_path(const Path& p, const Graph& g) {
  if (p.start >= g.vertex_count()) return false;
  std::size_t at = p.start;
  for (auto e : p.edges) {
    if (e >= g.edge_count() || g.src(e) != at) return false;
    at = g.tgt(e);
  }
  return true;
}

inline void check_path(const Path& p, const Graph& g) {
  if (!is_valid_path(p, g)) throw Error(ErrorCode::structural, "edge sequence is not a path");
}

inline std::size_t path_end(const Path& p, const Graph& g) {
  check_path(p, g);
  return p.edges.empty() ? p.start : g.tgt(p.edges.back());
}

// Vertices visited, start first; length + 1 entries.
inline std::vector<std::size_t> path_vertices(const Path& p, const Graph& g) {
  check_path(p, g);
  std::vector<std::size_t> out{p.start};
  for (auto e : p.edges) out.push_back(g.tgt(e));
  return out;
}

// l(e_n) ... l(e_1): each later edge multiplies on the left.
inline Element grade(const Path& p, const LabeledGraph& g) {
  check_path(p, g.graph);
  Element acc = g.algebra.one();
  for (auto e : p.edges) acc = g.algebra.multiply(g.label(e), acc);
  return acc;
}

// p followed by q.
inline Path compose_paths(const Path& p, const Path& q, const Graph& g) {
  if (path_end(p, g) != q.start) throw Error(ErrorCode::structural, "paths do not meet");
  check_path(q, g);
  Path r = p;
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return r;
}

// ---------------------------------------------------------------------------
// Kleisli morphisms

struct KleisliMorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<Path> edge_paths;

  friend bool operator==(const KleisliMorphism&, const KleisliMorphism&) = default;
  friend auto operator<=>(const KleisliMorphism&, const KleisliMorphism&) = default;

  // Every edge becomes the length-1 path on its image.
  static KleisliMorphism from_graph_morphism(const GraphMorphism& m, const Graph& target) {
    KleisliMorphism k;
    k.vertex_map = m.f0;
    for (auto e : m.f1) k.edge_paths.push_back(Path{target.src(e), {e}});
    return k;
  }

  static KleisliMorphism identity(const Graph& g) { return from_graph_morphism(GraphMorphism::identity(g), g); }
};

// Grades are compared after applying `phi` to the source label, so this also
// serves as the Kleisli form of the change-of-labels morphism check.
inline Verdict is_kleisli_morphism(const KleisliMorphism& k, const LabeledGraph& src, const LabeledGraph& dst,
                                   const MonoidHom* phi = nullptr) {
  if (phi) {
    require_same_algebra(src.algebra, phi->source());
    require_same_algebra(dst.algebra, phi->target());
  } else {
    require_same_algebra(src.algebra, dst.algebra);
  }
  if (k.vertex_map.size() != src.graph.vertex_count() || k.edge_paths.size() != src.graph.edge_count())
    throw Error(ErrorCode::structural, "Kleisli morphism does not cover its source graph");
  for (auto v : k.vertex_map) dst.graph.check_vertex(v);
  for (std::size_t e = 0; e < src.graph.edge_count(); ++e) {
    const Path& p = k.edge_paths[e];
    const std::string& name = src.graph.edge_name(e);
    if (!is_valid_path(p, dst.graph)) return Verdict::fail(e, "image of '" + name + "' is not a path");
    if (p.start != k.vertex_map[src.graph.src(e)])
      return Verdict::fail(e, "image of '" + name + "' starts at the wrong vertex");
    if (path_end(p, dst.graph) != k.vertex_map[src.graph.tgt(e)])
      return Verdict::fail(e, "image of '" + name + "' ends at the wrong vertex");
    const Element want = phi ? (*phi)(src.label(e)) : src.label(e);
    if (grade(p, dst) != want)
      return Verdict::fail(e, "image of '" + name + "' has grade " + dst.algebra.format(grade(p, dst)) +
                                  ", expected " + dst.algebra.format(want));
  }
  return Verdict::pass();
}

// The image of a source path under k.
inline Path apply_kleisli(const KleisliMorphism& k, const Path& p, const Graph& src) {
  check_path(p, src);
  Path out = Path::identity(k.vertex_map.at(p.start));
  for (auto e : p.edges) {
    const Path& piece = k.edge_paths.at(e);
    out.edges.insert(out.edges.end(), piece.edges.begin(), piece.edges.end());
  }
  return out;
}

// g after f, by substituting g's paths into f's.
inline KleisliMorphism compose(const KleisliMorphism& g, const KleisliMorphism& f, const Graph& middle) {
  KleisliMorphism h;
  for (auto v : f.vertex_map) h.vertex_map.push_back(g.vertex_map.at(v));
  for (const auto& p : f.edge_paths) h.edge_paths.push_back(apply_kleisli(g, p, middle));
  return h;
}

// ---------------------------------------------------------------------------
// Walk enumeration and motif search

// All walks of length min_len..max_len, grouped by (start, end) and sorted
// lexicographically by edge sequence.
inline std::map<std::pair<std::size_t, std::size_t>, std::vector<Path>> bounded_walks(const Graph& g,
                                                                                       std::size_t max_len,
                                                                                       std::size_t min_len = 1) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Path>> out;
  std::vector<std::vector<std::size_t>> adj(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) adj[g.src(e)].push_back(e);
  Path cur;
  auto rec = [&](auto&& self, std::size_t at) -> void {
    if (cur.edges.size() >= min_len) out[{cur.start, at}].push_back(cur);
    if (cur.edges.size() == max_len) return;
    for (auto e : adj[at]) {
      cur.edges.push_back(e);
      self(self, g.tgt(e));
      cur.edges.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    cur = Path::identity(v);
    rec(rec, v);
  }
  for (auto& [key, paths] : out) std::sort(paths.begin(), paths.end());
  return out;
}

struct MotifOptions {
  std::size_t max_path_len = 6;
  std::size_t max_results = 10000;
  // When false, no motif edge may be sent to an empty path.
  bool allow_identity_paths = false;
};

struct MotifSearchResult {
  std::vector<KleisliMorphism> matches;
  bool truncated = false;
};

// All Kleisli morphisms motif -> host whose edge images have length at most
// max_path_len. Ordered by vertex assignment, then by the edge-id sequences of
// the images in motif-edge order.
inline MotifSearchResult find_motifs(const LabeledGraph& motif, const LabeledGraph& host, const MotifOptions& opt = {}) {
  require_same_algebra(motif.algebra, host.algebra);
  if (opt.max_path_len < 1) throw Error(ErrorCode::unsupported, "max_path_len must be at least 1");
  const Graph& mg = motif.graph;
  const std::size_t nv = mg.vertex_count();
  const std::size_t ne = mg.edge_count();
  const auto walks = bounded_walks(host.graph, opt.max_path_len, opt.allow_identity_paths ? 0 : 1);

  // Candidate grades per walk, computed once.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<Path, Element>>> graded;
  for (const auto& [key, paths] : walks)
    for (const auto& p : paths) graded[key].emplace_back(p, grade(p, host));

  // Motif edges become checkable once their later endpoint is assigned.
  std::vector<std::vector<std::size_t>> ready(nv);
  for (std::size_t e = 0; e < ne; ++e) ready[std::max(mg.src(e), mg.tgt(e))].push_back(e);

  MotifSearchResult result;
  std::vector<std::size_t> assign(nv);
  std::vector<std::vector<Path>> options(ne);

  auto candidates = [&](std::size_t e) {
    std::vector<Path> out;
    auto it = graded.find({assign[mg.src(e)], assign[mg.tgt(e)]});
    if (it == graded.end()) return out;
    for (const auto& [p, gr] : it->second)
      if (gr == motif.label(e)) out.push_back(p);
    return out;
  };

  auto emit_products = [&]() {
    KleisliMorphism k;
    k.vertex_map = assign;
    k.edge_paths.resize(ne);
    auto rec = [&](auto&& self, std::size_t e) -> bool {
      if (e == ne) {
        if (result.matches.size() >= opt.max_results) {
          result.truncated = true;
          return false;
        }
        result.matches.push_back(k);
        return true;
      }
      for (const auto& p : options[e]) {
        k.edge_paths[e] = p;
        if (!self(self, e + 1)) return false;
      }
      return true;
    };
    return rec(rec, 0);
  };

  auto search = [&](auto&& self, std::size_t v) -> bool {
    if (v == nv) return emit_products();
    for (std::size_t h = 0; h < host.graph.vertex_count(); ++h) {
      assign[v] = h;
      bool viable = true;
      for (auto e : ready[v]) {
        options[e] = candidates(e);
        if (options[e].empty()) {
          viable = false;
          break;
        }
      }
      if (viable && !self(self, v + 1)) return false;
    }
    return true;
  };
  search(search, 0);
  return result;
}

// ---------------------------------------------------------------------------
// Named {+,-} motifs

inline std::vector<std::string> builtin_motif_names() {
  return {"positive-autoregulation",
          "negative-autoregulation",
          "positive-stimulation",
          "negative-stimulation",
          "positive-feedback-loop",
          "negative-feedback-loop",
          "double-negative-feedback-loop",
          "coherent-feedforward",
          "incoherent-feedforward",
          "double-negative-feedforward",
          "branch-pp",
          "branch-pm",
          "branch-mm",
          "gate-pp",
          "gate-pm",
          "gate-mm",
          "overlapping-feedforward-gate-pp",
          "overlapping-feedforward-gate-pm",
          "overlapping-feedforward-gate-mm",
          "overlapping-feedforward-branch-pp",
          "overlapping-feedforward-branch-pm",
          "overlapping-feedforward-branch-mm"};
}

inline LabeledGraph builtin_motif(std::string_view name) {
  struct Shape {
    std::vector<std::string> vertices;
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
  };
  static const std::map<std::string, Shape, std::less<>> catalog = {
      {"positive-autoregulation", {{"v"}, {{"v", "v", "+"}}}},
      {"negative-autoregulation", {{"v"}, {{"v", "v", "-"}}}},
      {"positive-stimulation", {{"v", "w"}, {{"v", "w", "+"}}}},
      {"negative-stimulation", {{"w", "v"}, {{"w", "v", "-"}}}},
      {"positive-feedback-loop", {{"v", "w"}, {{"v", "w", "+"}, {"w", "v", "+"}}}},
      {"negative-feedback-loop", {{"v", "w"}, {{"v", "w", "+"}, {"w", "v", "-"}}}},
      {"double-negative-feedback-loop", {{"v", "w"}, {{"v", "w", "-"}, {"w", "v", "-"}}}},
      {"coherent-feedforward", {{"v", "w"}, {{"v", "w", "+"}, {"v", "w", "+"}}}},
      {"incoherent-feedforward", {{"v", "w"}, {{"v", "w", "+"}, {"v", "w", "-"}}}},
      {"double-negative-feedforward", {{"v", "w"}, {{"v", "w", "-"}, {"v", "w", "-"}}}},
      {"branch-pp", {{"u", "v", "w"}, {{"u", "v", "+"}, {"u", "w", "+"}}}},
      {"branch-pm", {{"u", "v", "w"}, {{"u", "v", "+"}, {"u", "w", "-"}}}},
      {"branch-mm", {{"u", "v", "w"}, {{"u", "v", "-"}, {"u", "w", "-"}}}},
      {"gate-pp", {{"v", "w", "u"}, {{"v", "u", "+"}, {"w", "u", "+"}}}},
      {"gate-pm", {{"v", "w", "u"}, {{"v", "u", "+"}, {"w", "u", "-"}}}},
      {"gate-mm", {{"v", "w", "u"}, {{"v", "u", "-"}, {"w", "u", "-"}}}},
      {"overlapping-feedforward-gate-pp",
       {{"v", "w", "u"}, {{"v", "u", "+"}, {"v", "w", "+"}, {"v", "w", "+"}, {"w", "u", "+"}}}},
      {"overlapping-feedforward-gate-pm",
       {{"v", "w", "u"}, {{"v", "u", "+"}, {"v", "w", "+"}, {"v", "w", "+"}, {"w", "u", "-"}}}},
      {"overlapping-feedforward-gate-mm",
       {{"v", "w", "u"}, {{"v", "u", "-"}, {"v", "w", "+"}, {"v", "w", "+"}, {"w", "u", "-"}}}},
      {"overlapping-feedforward-branch-pp",
       {{"u", "v", "w"}, {{"u", "v", "+"}, {"u", "w", "+"}, {"v", "w", "-"}, {"v", "w", "+"}}}},
      {"overlapping-feedforward-branch-pm",
       {{"u", "v", "w"}, {{"u", "v", "+"}, {"u", "w", "-"}, {"v", "w", "-"}, {"v", "w", "+"}}}},
      {"overlapping-feedforward-branch-mm",
       {{"u", "v", "w"}, {{"u", "v", "-"}, {"u", "w", "-"}, {"v", "w", "-"}, {"v", "w", "+"}}}},
  };
  auto it = catalog.find(name);
  if (it == catalog.end()) throw Error(ErrorCode::unsupported, "unknown motif '" + std::string(name) + "'");
  LabeledGraph g(algebras::sign());
  for (const auto& v : it->second.vertices) g.add_vertex(v);
  for (const auto& [s, t, l] : it->second.edges) g.add_edge(s, t, l);
  return g;
}

}  // namespace mlgraph
