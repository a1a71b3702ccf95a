// Acceptance checks, one line per criterion. Exits nonzero if any fails.

#include <functional>
#include <iostream>
#include <sstream>

#include "mlgraph/mlgraph.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mlgraph;
namespace A = mlgraph::algebras;
using testsupport::load_fixture;
using testsupport::load_graph;
using testsupport::load_open;
using testsupport::Rng;

namespace {

// Collects the reasons a criterion failed; empty means pass.
struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) why << "; ";
    why << what;
    ok = false;
  }
};

std::vector<std::size_t> to_codes(const Chain& c, std::size_t edge_count) {
  std::vector<std::size_t> v(edge_count, 0);
  for (const auto& [e, x] : c.coeffs()) v[e] = x.is_index() ? x.idx() : detail::nat_value(x).convert_to<std::size_t>();
  return v;
}

Chain from_codes(const oracle::Vec& v, const LabelAlgebra& a, std::size_t zero) {
  Chain c(Carrier::edges, a);
  for (std::size_t e = 0; e < v.size(); ++e) {
    if (v[e] == zero) continue;
    c.add_term(e, a.is_finite() ? Element::index(v[e]) : Element::number(static_cast<long long>(v[e])));
  }
  return c;
}

// A simple loop found by walking forward until a vertex repeats.
std::optional<std::vector<std::size_t>> random_simple_loop(Rng& rng, const Graph& g) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::size_t v = testsupport::uniform(rng, 0, g.vertex_count() - 1);
    std::vector<std::size_t> edges;
    std::map<std::size_t, std::size_t> first_seen{{v, 0}};
    for (;;) {
      std::vector<std::size_t> out;
      for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (g.src(e) == v) out.push_back(e);
      if (out.empty()) break;
      const auto e = out[testsupport::uniform(rng, 0, out.size() - 1)];
      edges.push_back(e);
      v = g.tgt(e);
      if (auto it = first_seen.find(v); it != first_seen.end())
        return std::vector<std::size_t>(edges.begin() + static_cast<std::ptrdiff_t>(it->second), edges.end());
      first_seen[v] = edges.size();
    }
  }
  return std::nullopt;
}

std::set<oracle::Occurrence> as_occurrences(const std::vector<KleisliMorphism>& ks) {
  std::set<oracle::Occurrence> out;
  for (const auto& k : ks) {
    std::vector<std::vector<std::size_t>> ps;
    for (const auto& p : k.edge_paths) ps.push_back(p.edges);
    out.insert({k.vertex_map, ps});
  }
  return out;
}

// Compares every equalizer test on the glued graph against an image of iota
// built from cycles enumerated on the two pieces separately.
void compare_with_iota(Check& c, const GluedGraph& g, const LabelAlgebra& coeffs, const oracle::Coeffs& k,
                       const std::string& tag) {
  const auto cx = oracle::cycles(g.x.graph, k);
  const auto cy = oracle::cycles(g.y.graph, k);
  std::set<oracle::Vec> image;
  for (const auto& a : cx)
    for (const auto& b : cy) {
      oracle::Vec v = a;
      v.insert(v.end(), b.begin(), b.end());
      image.insert(v);
    }
  const bool cancellative = oracle::is_cancellative(k);
  for (const auto& v : oracle::cycles(g.composite.graph, k)) {
    const bool inherited = image.count(v) > 0;
    const auto chain = from_codes(v, coeffs, k.zero);
    c.expect(mv_condition(chain, g, MvTest::two_sided) == inherited, tag + ": two-sided test disagrees");
    if (!cancellative) continue;
    for (auto t : {MvTest::one_sided_x, MvTest::one_sided_y, MvTest::q_form_x, MvTest::q_form_y})
      c.expect(mv_condition(chain, g, t) == inherited, tag + ": one-sided or quotient test disagrees");
  }
  const auto rep = mv_check(g, coeffs, 1);
  c.expect(rep.cancellative == cancellative, tag + ": cancellation verdicts differ");
  c.expect(rep.ok(), tag + ": library self-check failed");
}

GluedGraph random_glue(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const auto b = testsupport::foot_names("b", testsupport::uniform(rng, 0, 2));
  const auto x = testsupport::random_open_graph(rng, A::sign(), {}, b, max_vertices, max_edges, true);
  const auto y = testsupport::random_open_graph(rng, A::sign(), b, {}, max_vertices, max_edges, true);
  return glue(x, y);
}

Path named_path(const Graph& g, std::initializer_list<const char*> edges) {
  Path p;
  for (auto n : edges) p.edges.push_back(g.edge(n));
  p.start = g.src(p.edges.front());
  return p;
}

// ---------------------------------------------------------------------------

void loop_counts(Check& c) {
  const std::vector<std::pair<const char*, std::size_t>> expected = {
      {"g2.json", 1}, {"p2.json", 0}, {"q4.json", 4}, {"r5.json", 6}};
  for (const auto& [file, n] : expected) {
    const auto got = simple_loops(load_graph(file).graph).loops.size();
    c.expect(got == n, std::string(file) + " has " + std::to_string(got) + " loops");
  }
}

void relation_counts(Check& c) {
  for (const auto& [file, n] : std::vector<std::pair<const char*, std::size_t>>{{"q4.json", 1}, {"r5.json", 3}}) {
    const auto g = load_graph(file);
    const auto rels = find_relations(simple_loops(g.graph).loops, g.graph.edge_count());
    c.expect(rels.size() == n, std::string(file) + " has " + std::to_string(rels.size()) + " relations");
  }
}

void minimal_circulations_are_loops(Check& c) {
  Rng rng(1001);
  for (int i = 0; i < 200 && c.ok; ++i) {
    const auto g = testsupport::random_graph(rng, 6, 8);
    std::set<oracle::Vec> loops;
    for (const auto& l : simple_loops(g).loops) loops.insert(oracle::indicator(l.edges, g.edge_count()));
    const auto minimal = oracle::minimal_nonzero(oracle::cycles(g, oracle::naturals(2)));
    c.expect(minimal == loops, "graph " + std::to_string(i) + ": minimal circulations differ from simple loops");
    std::set<oracle::Vec> lib;
    for (const auto& m : minimal_cycles(brute_force_circulations(g, 2))) lib.insert(to_codes(m, g.edge_count()));
    c.expect(lib == loops, "graph " + std::to_string(i) + ": library minimal cycles differ");
  }
}

void decomposition_resums(Check& c) {
  Rng rng(1002);
  int done = 0;
  while (done < 200 && c.ok) {
    const auto g = testsupport::random_graph(rng, 6, 9);
    if (g.edge_count() == 0) continue;
    std::map<std::size_t, long long> coeffs;
    const std::size_t parts = testsupport::uniform(rng, 1, 3);
    for (std::size_t k = 0; k < parts; ++k) {
      const auto loop = random_simple_loop(rng, g);
      if (!loop) break;
      const auto mult = static_cast<long long>(testsupport::uniform(rng, 1, 3));
      for (auto e : *loop) coeffs[e] += mult;
    }
    if (coeffs.empty()) continue;
    ++done;
    const auto chain = Chain::natural(Carrier::edges, coeffs);
    const auto pieces = decompose_cycle(chain, g);
    c.expect(resum(pieces) == chain, "decomposition does not re-sum to " + chain.format([&](std::size_t e) { return g.edge_name(e); }));
    for (const auto& [l, n] : pieces) {
      c.expect(oracle::is_simple_loop(l.edges, g), "part is not a simple loop");
      c.expect(n > 0, "non-positive multiplicity");
    }
  }
}

void mayer_vietoris(Check& c) {
  Rng rng(1003);
  for (int i = 0; i < 100 && c.ok; ++i) {
    const auto g = random_glue(rng, 3, 3);
    compare_with_iota(c, g, A::nat_add(), oracle::naturals(1), "N glue " + std::to_string(i));
  }
  for (std::size_t t = 0; t < 3 && c.ok; ++t) {
    const auto table = testsupport::random_commutative_table(rng, 3 + t % 2, "T" + std::to_string(t));
    const auto k = oracle::from_table(table);
    for (int i = 0; i < 20 && c.ok; ++i) {
      const auto g = random_glue(rng, 3, 2);
      compare_with_iota(c, g, table, k, table.name() + " glue " + std::to_string(i));
    }
  }

  // over ({0,1}, or) a cycle can pass the one-sided test without being inherited
  const auto b = glue(load_open("bool_x.json"), load_open("bool_y.json"));
  Chain all(Carrier::edges, b.composite.algebra);
  for (const char* n : {"e1", "e2", "e3"}) all.add_term(b.composite.graph.edge(n), b.composite.algebra.parse("1"));
  c.expect(is_cycle(all, b.composite.graph), "boolean example is not a cycle");
  c.expect(mv_condition(all, b, MvTest::one_sided_x), "boolean example fails the one-sided test");
  c.expect(!is_inherited_cycle(all, b), "boolean example is inherited");
  compare_with_iota(c, b, A::boolean_rig(), oracle::from_table(A::boolean_rig()), "boolean example");
}

void intro_emergence(Check& c) {
  const auto g = glue(load_open("intro_red.json"), load_open("intro_blue.json"));
  const auto rep = emergence_report(g);
  c.expect(rep.x_loops == 0 && rep.y_loops == 0, "pieces have loops");
  c.expect(!rep.loops.empty(), "composite has no loops");
  c.expect(rep.emergent_count() == rep.loops.size(), "some composite loop is inherited");
  const auto p = named_path(g.composite.graph, {"r1", "r3", "r4", "u1", "u2", "r7"});
  c.expect(grade_word(p, g, false).to_string() == "x^3y^2x", "full word is " + grade_word(p, g, false).to_string());
  c.expect(grade_word(p, g, true).to_string() == "xyx", "collapsed word is " + grade_word(p, g, true).to_string());
}

void open_graph_laws(Check& c) {
  Rng rng(1004);
  const auto alg = A::sign();
  for (int i = 0; i < 100 && c.ok; ++i) {
    std::vector<std::vector<std::string>> feet;
    for (const char* p : {"a", "b", "c", "d"}) feet.push_back(testsupport::foot_names(p, testsupport::uniform(rng, 0, 2)));
    const auto x = testsupport::random_open_graph(rng, alg, feet[0], feet[1], 4, 4);
    const auto y = testsupport::random_open_graph(rng, alg, feet[1], feet[2], 4, 4);
    const auto z = testsupport::random_open_graph(rng, alg, feet[2], feet[3], 4, 4);
    const std::string tag = "triple " + std::to_string(i);

    c.expect(open_iso_check(compose(compose(x, y), z), compose(x, compose(y, z))).has_value(),
             tag + ": composition not associative");
    c.expect(open_iso_check(compose(identity_open_graph(x.left_foot, alg), x), x).has_value(), tag + ": left unit");
    c.expect(open_iso_check(compose(x, identity_open_graph(x.right_foot, alg)), x).has_value(), tag + ": right unit");
    c.expect(open_iso_check(tensor(tensor(x, y), z), tensor(x, tensor(y, z))).has_value(),
             tag + ": tensor not associative");
    c.expect(open_iso_check(tensor(empty_open_graph(alg), x), x).has_value(), tag + ": tensor unit");

    const auto ex = x.inner.graph.edge_count(), ey = y.inner.graph.edge_count();
    c.expect(compose(x, y).inner.graph.edge_count() == ex + ey, tag + ": composite edge count");
    c.expect(tensor(x, z).inner.graph.edge_count() == ex + z.inner.graph.edge_count(), tag + ": tensor edge count");
  }
}

void motifs(Check& c) {
  const auto h = load_graph("host_h.json");
  MotifOptions opt;
  opt.max_path_len = 3;
  const auto res = find_motifs(builtin_motif("positive-autoregulation"), h, opt);
  const KleisliMorphism expected{{h.graph.vertex("A")}, {named_path(h.graph, {"e1", "e2", "e8"})}};
  c.expect(std::find(res.matches.begin(), res.matches.end(), expected) != res.matches.end(),
           "autoregulation at A via e1,e2,e8 not found");
  c.expect(h.algebra.format(grade(expected.edge_paths[0], h)) == "+", "grade of e1,e2,e8 is not +");

  Rng rng(1005);
  opt.max_results = 1000000;
  for (int i = 0; i < 50 && c.ok; ++i) {
    const auto host = testsupport::random_labeled(rng, A::sign0(), 6, 7);
    const auto motif = testsupport::random_labeled(rng, A::sign0(), 2, 2);
    const auto found = find_motifs(motif, host, opt);
    c.expect(!found.truncated, "pair " + std::to_string(i) + " truncated");
    c.expect(as_occurrences(found.matches) == oracle::motif_occurrences(motif, host, 3),
             "pair " + std::to_string(i) + " differs from exhaustive search");
  }
}

void label_algebras(Check& c) {
  for (const auto& name : A::names()) {
    const auto r = validate_algebra(*A::by_name(name));
    c.expect(r.ok(), name + ": " + r.summary());
  }
  const auto p = power_rig(A::sign());
  const auto s = A::s_rig();
  c.expect(validate_algebra(p).ok(), "power rig of SIGN is not a rig");
  std::vector<std::size_t> map(4);
  map[p.parse("{}").idx()] = s.parse("0").idx();
  map[p.parse("{+}").idx()] = s.parse("1").idx();
  map[p.parse("{-}").idx()] = s.parse("-1").idx();
  map[p.parse("{+,-}").idx()] = s.parse("i").idx();
  c.expect(is_isomorphism(p, s, map), "power rig of SIGN is not S under the given map");
}

void relabeling(Check& c) {
  const auto coffee = load_fixture("coffee_shop.json");
  const auto pushed = pushforward_labeling(coffee.morphism->map, *coffee.graph, coffee.morphism->target.graph);
  c.expect(pushed.labels.size() == 1 && pushed.algebra.format(pushed.labels[0]) == "175", "coffee shop total");

  const auto ref = load_fixture("refinement.json");
  const auto pulled = pullback_labeling(ref.morphism->map, ref.graph->graph, ref.morphism->target);
  c.expect(pulled.labels.size() == 2, "refinement has two fine edges");
  for (const auto& l : pulled.labels) c.expect(pulled.algebra.format(l) == "+", "pulled label is not +");

  Rng rng(1006);
  for (int i = 0; i < 100 && c.ok; ++i) {
    const auto g3 = testsupport::random_graph(rng, 3, 4);
    const auto [g2, gm] = testsupport::random_graph_over(rng, g3, 4, 6);
    const auto [g1, fm] = testsupport::random_graph_over(rng, g2, 5, 8);
    const auto gf = compose(gm, fm);
    const auto src = testsupport::random_labeled(rng, A::nat_add(), g1);
    const auto direct = pushforward_labeling(gf, src, g3);
    const auto staged = pushforward_labeling(gm, pushforward_labeling(fm, src, g2), g3);
    c.expect(direct == staged, "pushforward not functorial in pair " + std::to_string(i));
    c.expect(direct.labels == oracle::pushforward(gf.f1, src.labels, A::nat_add(), g3.edge_count()),
             "pushforward differs from fibre sums in pair " + std::to_string(i));
  }
  for (int i = 0; i < 100 && c.ok; ++i) {
    const auto g3 = testsupport::random_graph(rng, 3, 4);
    const auto [g2, gm] = testsupport::random_graph_over(rng, g3, 4, 6);
    const auto [g1, fm] = testsupport::random_graph_over(rng, g2, 5, 8);
    const auto top = testsupport::random_labeled(rng, A::sign0(), g3);
    const auto direct = pullback_labeling(compose(gm, fm), g1, top);
    const auto staged = pullback_labeling(fm, g1, pullback_labeling(gm, g2, top));
    c.expect(direct == staged, "pullback not functorial in pair " + std::to_string(i));
    for (std::size_t e = 0; e < g1.edge_count(); ++e)
      c.expect(direct.labels[e] == top.labels[gm.f1[fm.f1[e]]], "pullback label differs from target label");
  }
}

void homework(Check& c) {
  const auto g = load_graph("homework.json");
  const auto loops = simple_loops(g.graph).loops;
  c.expect(loops.size() == 2, std::to_string(loops.size()) + " loops");
  std::multiset<std::string> pol;
  for (const auto& l : loops) pol.insert(g.algebra.format(loop_polarity(l, g)));
  c.expect(pol == std::multiset<std::string>{"+", "-"}, "polarities are not one + and one -");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"simple loop counts G2 P2 Q4 R5", loop_counts},
      {"relation counts Q4 R5", relation_counts},
      {"minimal circulations are simple loops", minimal_circulations_are_loops},
      {"cycle decomposition re-sums", decomposition_resums},
      {"equalizer tests match inherited cycles", mayer_vietoris},
      {"intro composite loops are emergent", intro_emergence},
      {"open graph composition and tensor laws", open_graph_laws},
      {"motif search", motifs},
      {"label algebras", label_algebras},
      {"pushforward and pullback", relabeling},
      {"homework loops", homework},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!c.ok) std::cout << " (" << c.why.str() << ")";
    std::cout << "\n";
    failed += c.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
