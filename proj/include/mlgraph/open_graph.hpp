#pragma once

// Open labeled graphs: a labeled graph X with two finite feet A and B and leg
// functions A -> V(X) <- B. Composition glues along the shared foot (a pushout
// of vertex sets), tensor is disjoint union.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mlgraph/grothendieck.hpp"

namespace mlgraph {

struct OpenGraph {
  LabeledGraph inner;
  std::vector<std::string> left_foot;
  std::vector<std::string> right_foot;
  std::vector<std::size_t> leg_in;   // left_foot[i] -> inner vertex
  std::vector<std::size_t> leg_out;  // right_foot[i] -> inner vertex

  void check() const {
    inner.check();
    if (leg_in.size() != left_foot.size() || leg_out.size() != right_foot.size())
      throw Error(ErrorCode::structural, "every foot element needs exactly one leg");
    for (auto v : leg_in) inner.graph.check_vertex(v);
    for (auto v : leg_out) inner.graph.check_vertex(v);
    for (const auto* foot : {&left_foot, &right_foot}) {
      std::set<std::string> seen(foot->begin(), foot->end());
      if (seen.size() != foot->size()) throw Error(ErrorCode::structural, "foot element names must be distinct");
    }
  }

  std::optional<std::size_t> left_index(std::string_view name) const { return index_in(left_foot, name); }
  std::optional<std::size_t> right_index(std::string_view name) const { return index_in(right_foot, name); }

  static bool injective(const std::vector<std::size_t>& leg) {
    std::set<std::size_t> s(leg.begin(), leg.end());
    return s.size() == leg.size();
  }

  friend bool operator==(const OpenGraph&, const OpenGraph&) = default;

 private:
  static std::optional<std::size_t> index_in(const std::vector<std::string>& foot, std::string_view name) {
    for (std::size_t i = 0; i < foot.size(); ++i)
      if (foot[i] == name) return i;
    return std::nullopt;
  }
};

// The identity cospan on a foot: inner graph has one vertex per element and
// no edges, both legs are the identity.
inline OpenGraph identity_open_graph(const std::vector<std::string>& foot, const LabelAlgebra& algebra) {
  OpenGraph g;
  g.inner = LabeledGraph(algebra);
  for (std::size_t i = 0; i < foot.size(); ++i) {
    g.inner.add_vertex(foot[i]);
    g.leg_in.push_back(i);
    g.leg_out.push_back(i);
  }
  g.left_foot = g.right_foot = foot;
  g.check();
  return g;
}

inline OpenGraph empty_open_graph(const LabelAlgebra& algebra) { return identity_open_graph({}, algebra); }

namespace detail {

inline std::string unique_name(std::set<std::string>& taken, std::string name) {
  while (taken.count(name)) name += "'";
  taken.insert(name);
  return name;
}

}  // namespace detail

struct Composite {
  OpenGraph result;
  std::vector<std::size_t> x_vertex;  // X vertex -> composite vertex
  std::vector<std::size_t> y_vertex;  // Y vertex -> composite vertex
  std::size_t y_edge_offset = 0;      // Y edge e becomes composite edge offset + e
};

inline Composite compose_with_maps(const OpenGraph& x, const OpenGraph& y) {
  x.check();
  y.check();
  require_same_algebra(x.inner.algebra, y.inner.algebra);
  if (std::set<std::string>(x.right_foot.begin(), x.right_foot.end()) !=
      std::set<std::string>(y.left_foot.begin(), y.left_foot.end()))
    throw Error(ErrorCode::foot_mismatch, "right foot of the first graph differs from left foot of the second");

  const std::size_t nx = x.inner.graph.vertex_count();
  const std::size_t n = nx + y.inner.graph.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t b = 0; b < x.right_foot.size(); ++b) {
    const std::size_t yv = y.leg_in[*y.left_index(x.right_foot[b])];
    auto r1 = find(x.leg_out[b]), r2 = find(nx + yv);
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }

  auto name_of = [&](std::size_t i) -> const std::string& {
    return i < nx ? x.inner.graph.vertex_name(i) : y.inner.graph.vertex_name(i - nx);
  };

  Composite c;
  c.result.inner = LabeledGraph(x.inner.algebra);
  std::vector<std::size_t> renum(n, 0);
  std::set<std::string> taken;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) renum[i] = c.result.inner.add_vertex(detail::unique_name(taken, name_of(i)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = renum[find(i)];
    (i < nx ? c.x_vertex : c.y_vertex).push_back(v);
  }

  std::set<std::string> edge_names;
  for (std::size_t e = 0; e < x.inner.graph.edge_count(); ++e)
    c.result.inner.add_edge(c.x_vertex[x.inner.graph.src(e)], c.x_vertex[x.inner.graph.tgt(e)], x.inner.label(e),
                            detail::unique_name(edge_names, x.inner.graph.edge_name(e)));
  c.y_edge_offset = x.inner.graph.edge_count();
  for (std::size_t e = 0; e < y.inner.graph.edge_count(); ++e)
    c.result.inner.add_edge(c.y_vertex[y.inner.graph.src(e)], c.y_vertex[y.inner.graph.tgt(e)], y.inner.label(e),
                            detail::unique_name(edge_names, y.inner.graph.edge_name(e)));

  c.result.left_foot = x.left_foot;
  for (auto v : x.leg_in) c.result.leg_in.push_back(c.x_vertex[v]);
  c.result.right_foot = y.right_foot;
  for (auto v : y.leg_out) c.result.leg_out.push_back(c.y_vertex[v]);
  return c;
}

inline OpenGraph compose(const OpenGraph& x, const OpenGraph& y) { return compose_with_maps(x, y).result; }

// Disjoint union. Foot names from y that collide with x's get primes.
inline OpenGraph tensor(const OpenGraph& x, const OpenGraph& y) {
  x.check();
  y.check();
  require_same_algebra(x.inner.algebra, y.inner.algebra);
  OpenGraph r;
  r.inner = LabeledGraph(x.inner.algebra);
  std::set<std::string> vnames, enames;
  const std::size_t nx = x.inner.graph.vertex_count();
  for (const auto* g : {&x.inner, &y.inner})
    for (std::size_t v = 0; v < g->graph.vertex_count(); ++v)
      r.inner.add_vertex(detail::unique_name(vnames, g->graph.vertex_name(v)));
  for (std::size_t e = 0; e < x.inner.graph.edge_count(); ++e)
    r.inner.add_edge(x.inner.graph.src(e), x.inner.graph.tgt(e), x.inner.label(e),
                     detail::unique_name(enames, x.inner.graph.edge_name(e)));
  for (std::size_t e = 0; e < y.inner.graph.edge_count(); ++e)
    r.inner.add_edge(nx + y.inner.graph.src(e), nx + y.inner.graph.tgt(e), y.inner.label(e),
                     detail::unique_name(enames, y.inner.graph.edge_name(e)));
  std::set<std::string> left(x.left_foot.begin(), x.left_foot.end());
  std::set<std::string> right(x.right_foot.begin(), x.right_foot.end());
  r.left_foot = x.left_foot;
  r.right_foot = x.right_foot;
  r.leg_in = x.leg_in;
  r.leg_out = x.leg_out;
  for (std::size_t i = 0; i < y.left_foot.size(); ++i) {
    r.left_foot.push_back(detail::unique_name(left, y.left_foot[i]));
    r.leg_in.push_back(nx + y.leg_in[i]);
  }
  for (std::size_t i = 0; i < y.right_foot.size(); ++i) {
    r.right_foot.push_back(detail::unique_name(right, y.right_foot[i]));
    r.leg_out.push_back(nx + y.leg_out[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Isomorphism

struct Isomorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

inline constexpr std::size_t kIsoVertexGuard = 12;

// Label-respecting isomorphism a -> b by backtracking over vertices.
// `fixed` pins some vertices of a to vertices of b up front.
inline std::optional<Isomorphism> iso_check(const LabeledGraph& a, const LabeledGraph& b,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& fixed = {},
                                            std::size_t guard = kIsoVertexGuard) {
  const Graph& ga = a.graph;
  const Graph& gb = b.graph;
  const std::size_t n = ga.vertex_count();
  if (n != gb.vertex_count() || ga.edge_count() != gb.edge_count() || a.algebra != b.algebra) return std::nullopt;
  if (n > guard)
    throw Error(ErrorCode::guard_exceeded, "isomorphism search is limited to " + std::to_string(guard) + " vertices");

  using Bag = std::vector<Element>;
  auto bags = [](const LabeledGraph& g) {
    std::map<std::pair<std::size_t, std::size_t>, Bag> m;
    for (std::size_t e = 0; e < g.graph.edge_count(); ++e) m[{g.graph.src(e), g.graph.tgt(e)}].push_back(g.label(e));
    for (auto& [k, bag] : m) std::sort(bag.begin(), bag.end());
    return m;
  };
  const auto ba = bags(a), bb = bags(b);
  static const Bag empty;
  auto bag = [&](const auto& m, std::size_t u, std::size_t v) -> const Bag& {
    auto it = m.find({u, v});
    return it == m.end() ? empty : it->second;
  };
  auto signature = [](const LabeledGraph& g, std::size_t v) {
    std::vector<std::pair<int, Element>> sig;
    for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
      if (g.graph.src(e) == v) sig.emplace_back(0, g.label(e));
      if (g.graph.tgt(e) == v) sig.emplace_back(1, g.label(e));
      if (g.graph.src(e) == v && g.graph.tgt(e) == v) sig.emplace_back(2, g.label(e));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  std::vector<std::vector<std::pair<int, Element>>> sa(n), sb(n);
  for (std::size_t v = 0; v < n; ++v) {
    sa[v] = signature(a, v);
    sb[v] = signature(b, v);
  }

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pin(n, unset);
  for (auto [u, v] : fixed) {
    if (u >= n || v >= n) return std::nullopt;
    if (pin[u] != unset && pin[u] != v) return std::nullopt;
    pin[u] = v;
  }

  std::vector<std::size_t> map(n, unset);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t u, std::size_t img) {
    if (sa[u] != sb[img]) return false;
    for (std::size_t w = 0; w <= u; ++w) {
      const std::size_t wi = (w == u) ? img : map[w];
      if (bag(ba, u, w) != bag(bb, img, wi) || bag(ba, w, u) != bag(bb, wi, img)) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t u) -> bool {
    if (u == n) return true;
    for (std::size_t img = 0; img < n; ++img) {
      if (used[img] || (pin[u] != unset && pin[u] != img) || !consistent(u, img)) continue;
      map[u] = img;
      used[img] = true;
      if (self(self, u + 1)) return true;
      used[img] = false;
    }
    map[u] = unset;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  // Edges: within each (u, v) group pair off equal labels in order.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> eb;
  for (std::size_t e = 0; e < gb.edge_count(); ++e) eb[{gb.src(e), gb.tgt(e)}].push_back(e);
  Isomorphism iso{map, std::vector<std::size_t>(ga.edge_count())};
  std::vector<bool> taken(gb.edge_count(), false);
  for (std::size_t e = 0; e < ga.edge_count(); ++e) {
    for (auto f : eb[{map[ga.src(e)], map[ga.tgt(e)]}])
      if (!taken[f] && b.label(f) == a.label(e)) {
        taken[f] = true;
        iso.edge_map[e] = f;
        break;
      }
  }
  return iso;
}

// Isomorphism of open graphs: an inner isomorphism compatible with the legs,
// where foot element i on one side corresponds to foot element perm[i].
inline std::optional<Isomorphism> open_iso_check(const OpenGraph& x, const OpenGraph& y,
                                                 const std::vector<std::size_t>& left_perm,
                                                 const std::vector<std::size_t>& right_perm,
                                                 std::size_t guard = kIsoVertexGuard) {
  if (x.left_foot.size() != y.left_foot.size() || x.right_foot.size() != y.right_foot.size()) return std::nullopt;
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (std::size_t i = 0; i < x.leg_in.size(); ++i) fixed.emplace_back(x.leg_in[i], y.leg_in[left_perm.at(i)]);
  for (std::size_t i = 0; i < x.leg_out.size(); ++i) fixed.emplace_back(x.leg_out[i], y.leg_out[right_perm.at(i)]);
  return iso_check(x.inner, y.inner, fixed, guard);
}

// Feet matched by name.
inline std::optional<Isomorphism> open_iso_check(const OpenGraph& x, const OpenGraph& y,
                                                 std::size_t guard = kIsoVertexGuard) {
  if (std::set<std::string>(x.left_foot.begin(), x.left_foot.end()) !=
          std::set<std::string>(y.left_foot.begin(), y.left_foot.end()) ||
      std::set<std::string>(x.right_foot.begin(), x.right_foot.end()) !=
          std::set<std::string>(y.right_foot.begin(), y.right_foot.end()))
    return std::nullopt;
  std::vector<std::size_t> lp, rp;
  for (const auto& a : x.left_foot) lp.push_back(*y.left_index(a));
  for (const auto& b : x.right_foot) rp.push_back(*y.right_index(b));
  return open_iso_check(x, y, lp, rp, guard);
}

// ---------------------------------------------------------------------------
// 2-morphisms

// Foot maps plus an inner map, either a graph morphism or a Kleisli morphism.
struct OpenGraphMap {
  std::vector<std::size_t> left;   // A -> A'
  std::vector<std::size_t> right;  // B -> B'
  std::variant<GraphMorphism, KleisliMorphism> inner;
};

inline OpenGraphMap identity_2morphism(const OpenGraph& x, MorphismMode mode = MorphismMode::set) {
  OpenGraphMap m;
  m.left.resize(x.left_foot.size());
  m.right.resize(x.right_foot.size());
  std::iota(m.left.begin(), m.left.end(), 0);
  std::iota(m.right.begin(), m.right.end(), 0);
  if (mode == MorphismMode::kleisli)
    m.inner = KleisliMorphism::identity(x.inner.graph);
  else
    m.inner = GraphMorphism::identity(x.inner.graph);
  return m;
}

struct TwoMorphismVerdict {
  bool ok = true;
  std::string where;  // "left foot", "right foot" or "inner"
  std::optional<std::size_t> witness;
  std::string reason;

  explicit operator bool() const { return ok; }
};

inline TwoMorphismVerdict check_2morphism(const OpenGraphMap& m, const OpenGraph& x, const OpenGraph& y,
                                          MorphismMode mode) {
  x.check();
  y.check();
  if (m.left.size() != x.left_foot.size() || m.right.size() != x.right_foot.size())
    throw Error(ErrorCode::structural, "foot maps must cover both feet");
  for (auto a : m.left)
    if (a >= y.left_foot.size()) throw Error(ErrorCode::dangling_id, "left foot map leaves the target foot");
  for (auto b : m.right)
    if (b >= y.right_foot.size()) throw Error(ErrorCode::dangling_id, "right foot map leaves the target foot");

  const std::vector<std::size_t>* vmap = nullptr;
  if (auto* g = std::get_if<GraphMorphism>(&m.inner)) {
    check_morphism_shape(*g, x.inner.graph, y.inner.graph);
    vmap = &g->f0;
  } else {
    vmap = &std::get<KleisliMorphism>(m.inner).vertex_map;
    if (vmap->size() != x.inner.graph.vertex_count())
      throw Error(ErrorCode::structural, "vertex map must cover the source graph");
  }

  for (std::size_t a = 0; a < m.left.size(); ++a)
    if ((*vmap)[x.leg_in[a]] != y.leg_in[m.left[a]])
      return {false, "left foot", a, "square fails at '" + x.left_foot[a] + "'"};
  for (std::size_t b = 0; b < m.right.size(); ++b)
    if ((*vmap)[x.leg_out[b]] != y.leg_out[m.right[b]])
      return {false, "right foot", b, "square fails at '" + x.right_foot[b] + "'"};

  Verdict v;
  if (mode == MorphismMode::kleisli) {
    const KleisliMorphism k = std::holds_alternative<KleisliMorphism>(m.inner)
                                  ? std::get<KleisliMorphism>(m.inner)
                                  : KleisliMorphism::from_graph_morphism(std::get<GraphMorphism>(m.inner), y.inner.graph);
    v = is_kleisli_morphism(k, x.inner, y.inner);
  } else {
    const auto* g = std::get_if<GraphMorphism>(&m.inner);
    if (!g) throw Error(ErrorCode::unsupported, "set and additive 2-morphisms need a graph morphism inside");
    if (auto r = validate_morphism(*g, x.inner.graph, y.inner.graph); !r.ok())
      return {false, "inner", std::nullopt, r.summary()};
    v = mode == MorphismMode::set ? is_label_preserving(*g, x.inner, y.inner) : is_additive_morphism(*g, x.inner, y.inner);
  }
  if (!v) return {false, "inner", v.witness, v.reason};
  return {};
}

// beta after alpha, for x -> y -> z. Mixed kinds are composed as Kleisli maps.
inline OpenGraphMap vertical_compose(const OpenGraphMap& beta, const OpenGraphMap& alpha, const Graph& y,
                                     const Graph& z) {
  OpenGraphMap r;
  for (auto a : alpha.left) r.left.push_back(beta.left.at(a));
  for (auto b : alpha.right) r.right.push_back(beta.right.at(b));
  const auto* ga = std::get_if<GraphMorphism>(&alpha.inner);
  const auto* gb = std::get_if<GraphMorphism>(&beta.inner);
  if (ga && gb) {
    r.inner = compose(*gb, *ga);
    return r;
  }
  auto as_k = [](const OpenGraphMap& m, const Graph& target) {
    if (auto* k = std::get_if<KleisliMorphism>(&m.inner)) return *k;
    return KleisliMorphism::from_graph_morphism(std::get<GraphMorphism>(m.inner), target);
  };
  r.inner = compose(as_k(beta, z), as_k(alpha, y), y);
  return r;
}

// Side by side: alpha : x -> x', beta : y -> y' with alpha.right == beta.left
// on the shared foot. Only plain graph morphisms are supported; composing
// Kleisli 2-morphisms horizontally is not implemented.
inline OpenGraphMap horizontal_compose(const OpenGraphMap& alpha, const OpenGraph& x, const OpenGraph& x2,
                                       const OpenGraphMap& beta, const OpenGraph& y, const OpenGraph& y2) {
  const auto* ga = std::get_if<GraphMorphism>(&alpha.inner);
  const auto* gb = std::get_if<GraphMorphism>(&beta.inner);
  if (!ga || !gb) throw Error(ErrorCode::unsupported, "horizontal composition of Kleisli 2-morphisms is not implemented");
  for (std::size_t b = 0; b < x.right_foot.size(); ++b) {
    const std::size_t yb = *y.left_index(x.right_foot[b]);
    if (x2.right_foot.at(alpha.right[b]) != y2.left_foot.at(beta.left[yb]))
      throw Error(ErrorCode::foot_mismatch, "the two 2-morphisms disagree on the shared foot");
  }
  const Composite src = compose_with_maps(x, y);
  const Composite dst = compose_with_maps(x2, y2);
  OpenGraphMap r;
  r.left = alpha.left;
  r.right = beta.right;
  GraphMorphism g;
  g.f0.assign(src.result.inner.graph.vertex_count(), 0);
  for (std::size_t v = 0; v < x.inner.graph.vertex_count(); ++v) g.f0[src.x_vertex[v]] = dst.x_vertex[ga->f0[v]];
  for (std::size_t v = 0; v < y.inner.graph.vertex_count(); ++v) g.f0[src.y_vertex[v]] = dst.y_vertex[gb->f0[v]];
  for (auto e : ga->f1) g.f1.push_back(e);
  for (auto e : gb->f1) g.f1.push_back(dst.y_edge_offset + e);
  r.inner = g;
  return r;
}

}  // namespace mlgraph
