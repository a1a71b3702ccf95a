#pragma once

// Gluing two open graphs along a shared foot and asking which cycles of the
// result were already there (inherited) and which only exist after gluing
// (emergent).

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "mlgraph/homology.hpp"
#include "mlgraph/open_graph.hpp"

namespace mlgraph {

enum class Side { x, y };

inline char side_letter(Side s) { return s == Side::x ? 'x' : 'y'; }

struct GluedGraph {
  LabeledGraph composite;
  std::vector<Side> edge_side;
  LabeledGraph x;  // the two pieces, with their own vertex and edge ids
  LabeledGraph y;
  std::vector<std::size_t> x_vertex;  // piece vertex -> composite vertex
  std::vector<std::size_t> y_vertex;
  std::size_t y_edge_offset = 0;      // piece edges keep their order, X first
  std::vector<std::size_t> shared;    // composite ids of the glued vertices, sorted

  std::size_t x_edge(std::size_t e) const { return e; }
  std::size_t y_edge(std::size_t e) const { return y_edge_offset + e; }
};

// Both inclusion legs into the shared foot must be injective.
inline GluedGraph glue(const OpenGraph& x, const OpenGraph& y) {
  if (!OpenGraph::injective(x.leg_out))
    throw Error(ErrorCode::not_monic, "right leg of the first graph identifies two foot elements");
  if (!OpenGraph::injective(y.leg_in))
    throw Error(ErrorCode::not_monic, "left leg of the second graph identifies two foot elements");
  const Composite c = compose_with_maps(x, y);
  GluedGraph g;
  g.composite = c.result.inner;
  g.x = x.inner;
  g.y = y.inner;
  g.x_vertex = c.x_vertex;
  g.y_vertex = c.y_vertex;
  g.y_edge_offset = c.y_edge_offset;
  g.edge_side.assign(x.inner.graph.edge_count(), Side::x);
  g.edge_side.resize(g.composite.graph.edge_count(), Side::y);
  std::set<std::size_t> shared;
  for (auto v : x.leg_out) shared.insert(c.x_vertex[v]);
  g.shared.assign(shared.begin(), shared.end());
  return g;
}

// ---------------------------------------------------------------------------
// Grade words

// A word in x and y read left to right along a path.
struct GradeWord {
  std::string letters;

  // Idempotent quotient: runs of one letter merge.
  GradeWord collapsed() const {
    GradeWord w;
    for (char c : letters)
      if (w.letters.empty() || w.letters.back() != c) w.letters.push_back(c);
    return w;
  }

  // "xxxyyx" renders as "x^3y^2x"; the empty word is "1".
  std::string to_string() const {
    if (letters.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters.size();) {
      std::size_t j = i;
      while (j < letters.size() && letters[j] == letters[i]) ++j;
      out += letters[i];
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  friend bool operator==(const GradeWord&, const GradeWord&) = default;
};

inline GradeWord grade_word(const Path& p, const GluedGraph& g, bool collapse) {
  check_path(p, g.composite.graph);
  GradeWord w;
  for (auto e : p.edges) w.letters.push_back(side_letter(g.edge_side[e]));
  return collapse ? w.collapsed() : w;
}

// ---------------------------------------------------------------------------
// Side projections and the equalizer tests

inline Chain side_projection(const Chain& c, const GluedGraph& g, Side side) {
  check_edge_chain(c, g.composite.graph);
  Chain out(Carrier::edges, c.algebra());
  for (const auto& [e, x] : c.coeffs())
    if (g.edge_side[e] == side) out.add_term(e, x);
  return out;
}

// Both side projections are cycles: c lies in the image of H1(X) + H1(Y).
inline bool is_inherited_cycle(const Chain& c, const GluedGraph& g) {
  const Graph& u = g.composite.graph;
  return is_cycle(side_projection(c, g, Side::x), u) && is_cycle(side_projection(c, g, Side::y), u);
}

enum class MvTest { two_sided, one_sided_x, one_sided_y, q_form_x, q_form_y };

namespace detail {

inline Chain restrict_to(const Chain& v, const std::vector<std::size_t>& keep) {
  Chain out(Carrier::vertices, v.algebra());
  for (auto id : keep)
    if (auto x = v.at(id); x != v.algebra().zero()) out.add_term(id, x);
  return out;
}

}  // namespace detail

inline bool mv_condition(const Chain& c, const GluedGraph& g, MvTest test) {
  const Graph& u = g.composite.graph;
  auto balanced = [&](Side side, bool q) {
    auto [s, t] = boundary_pair(side_projection(c, g, side), u);
    if (!q) return s == t;
    return detail::restrict_to(s, g.shared) == detail::restrict_to(t, g.shared);
  };
  switch (test) {
    case MvTest::two_sided: return balanced(Side::x, false) && balanced(Side::y, false);
    case MvTest::one_sided_x: return balanced(Side::x, false);
    case MvTest::one_sided_y: return balanced(Side::y, false);
    case MvTest::q_form_x: return balanced(Side::x, true);
    case MvTest::q_form_y: return balanced(Side::y, true);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Verification against an independent image of iota

struct MvReport {
  bool cancellative = false;
  std::size_t cycles = 0;
  std::size_t inherited = 0;  // members of the iota image
  std::size_t emergent = 0;
  std::vector<Chain> two_sided_mismatches;  // must stay empty
  std::vector<Chain> one_sided_x_mismatches;
  std::vector<Chain> one_sided_y_mismatches;
  std::vector<Chain> q_form_x_mismatches;
  std::vector<Chain> q_form_y_mismatches;

  bool one_sided_agrees() const { return one_sided_x_mismatches.empty() && one_sided_y_mismatches.empty(); }
  bool q_form_agrees() const { return q_form_x_mismatches.empty() && q_form_y_mismatches.empty(); }

  // The two-sided test must always match. The other forms must match
  // whenever the coefficients are cancellative.
  bool ok() const { return two_sided_mismatches.empty() && (!cancellative || (one_sided_agrees() && q_form_agrees())); }
};

namespace detail {

inline Chain relocate(const Chain& c, std::size_t offset) {
  Chain out(Carrier::edges, c.algebra());
  for (const auto& [e, x] : c.coeffs()) out.add_term(e + offset, x);
  return out;
}

inline std::vector<Chain> enumerate_cycles(const Graph& g, const LabelAlgebra& coeffs, std::size_t bound) {
  if (coeffs.builtin_id() == Builtin::nat_add) return brute_force_circulations(g, bound);
  return brute_force_h1(g, coeffs);
}

}  // namespace detail

// Enumerates the cycles of the composite (finite coefficient table, or N with
// coefficients up to `bound`) and compares every equalizer test with
// membership in iota(H1(X) + H1(Y)), where the pieces' cycle sets are
// enumerated on their own graphs and summed.
inline MvReport mv_check(const GluedGraph& g, const LabelAlgebra& coeffs, std::size_t bound = 1) {
  if (!coeffs.is_finite() && coeffs.builtin_id() != Builtin::nat_add)
    throw Error(ErrorCode::unsupported, "mv_check needs a finite coefficient table or NatAdd");
  MvReport r;
  r.cancellative = is_cancellative(coeffs).cancellative;

  std::set<Chain> image;
  const auto hx = detail::enumerate_cycles(g.x.graph, coeffs, bound);
  const auto hy = detail::enumerate_cycles(g.y.graph, coeffs, bound);
  for (const auto& a : hx)
    for (const auto& b : hy) image.insert(detail::relocate(a, 0) + detail::relocate(b, g.y_edge_offset));

  for (const auto& c : detail::enumerate_cycles(g.composite.graph, coeffs, bound)) {
    ++r.cycles;
    const bool in_image = image.count(c) > 0;
    (in_image ? r.inherited : r.emergent)++;
    if (mv_condition(c, g, MvTest::two_sided) != in_image) r.two_sided_mismatches.push_back(c);
    if (mv_condition(c, g, MvTest::one_sided_x) != in_image) r.one_sided_x_mismatches.push_back(c);
    if (mv_condition(c, g, MvTest::one_sided_y) != in_image) r.one_sided_y_mismatches.push_back(c);
    if (mv_condition(c, g, MvTest::q_form_x) != in_image) r.q_form_x_mismatches.push_back(c);
    if (mv_condition(c, g, MvTest::q_form_y) != in_image) r.q_form_y_mismatches.push_back(c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Report on simple loops

struct LoopEmergence {
  SimpleLoop loop;
  bool inherited = false;
  GradeWord word;  // collapsed, read from the canonical starting edge
  Element polarity;
};

struct EmergenceReport {
  std::size_t x_loops = 0;
  std::size_t y_loops = 0;
  std::vector<LoopEmergence> loops;
  bool truncated = false;

  std::size_t emergent_count() const {
    std::size_t n = 0;
    for (const auto& l : loops) n += l.inherited ? 0 : 1;
    return n;
  }
};

inline EmergenceReport emergence_report(const GluedGraph& g) {
  EmergenceReport r;
  r.x_loops = simple_loops(g.x.graph).loops.size();
  r.y_loops = simple_loops(g.y.graph).loops.size();
  auto all = simple_loops(g.composite.graph);
  r.truncated = all.truncated;
  for (const auto& l : all.loops) {
    LoopEmergence le;
    le.loop = l;
    le.inherited = is_inherited_cycle(l.indicator(), g);
    le.word = grade_word(l.path(g.composite.graph), g, true);
    le.polarity = loop_polarity(l, g.composite);
    r.loops.push_back(std::move(le));
  }
  return r;
}

}  // namespace mlgraph
