#include <gtest/gtest.h>

#include "mlgraph/mlgraph.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mlgraph;
namespace A = mlgraph::algebras;
using testsupport::load_graph;

namespace {

Chain nat(std::map<std::size_t, long long> c) { return Chain::natural(Carrier::edges, c); }

std::set<std::vector<std::size_t>> loop_sets(const Graph& g) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& l : simple_loops(g).loops) out.insert(l.edges);
  return out;
}

}  // namespace

TEST(Boundary, ZeroChain) {
  const auto g = load_graph("q4.json");
  const auto [s, t] = boundary_pair(Chain(Carrier::edges, A::nat_add()), g.graph);
  EXPECT_TRUE(s.is_zero());
  EXPECT_TRUE(t.is_zero());
}

TEST(Boundary, SquareAndParallelPair) {
  const auto q4 = load_graph("q4.json");
  const auto [s, t] = boundary_pair(nat({{0, 1}, {2, 1}}), q4.graph);
  EXPECT_EQ(s, t);
  EXPECT_EQ(s, Chain::natural(Carrier::vertices, {{0, 1}, {1, 1}}));

  const auto p2 = load_graph("p2.json");
  const auto [s2, t2] = boundary_pair(nat({{0, 1}, {1, 1}}), p2.graph);
  EXPECT_EQ(s2, Chain::natural(Carrier::vertices, {{0, 2}}));
  EXPECT_EQ(t2, Chain::natural(Carrier::vertices, {{1, 2}}));
  EXPECT_NE(s2, t2);
}

TEST(Boundary, RejectsVertexChainsAndStrayEdges) {
  const auto g = load_graph("g2.json");
  EXPECT_THROW(boundary_pair(Chain::natural(Carrier::vertices, {{0, 1}}), g.graph), Error);
  EXPECT_THROW(boundary_pair(nat({{5, 1}}), g.graph), Error);
  EXPECT_THROW(Chain(Carrier::edges, from_semiautomaton({{"0", "1"}, {"s", "c"}, {{1, 0}, {0, 0}}}).algebra), Error);
}

TEST(Cycle, Examples) {
  const auto g2 = load_graph("g2.json");
  EXPECT_TRUE(is_cycle(nat({{0, 1}, {1, 1}}), g2.graph));
  EXPECT_FALSE(is_cycle(nat({{0, 1}}), g2.graph));
  for (const auto& l : simple_loops(load_graph("host_h.json").graph).loops)
    EXPECT_TRUE(is_cycle(l.indicator(), load_graph("host_h.json").graph));

  // over ({0,1}, or) three edges balance even though one alone does not
  const auto glued = compose(testsupport::load_open("bool_x.json"), testsupport::load_open("bool_y.json"));
  const auto& b = glued.inner;
  Chain all(Carrier::edges, b.algebra);
  for (std::size_t e = 0; e < 3; ++e) all.add_term(e, b.algebra.parse("1"));
  EXPECT_TRUE(is_cycle(all, b.graph));
  Chain e3(Carrier::edges, b.algebra);
  e3.add_term(2, b.algebra.parse("1"));
  EXPECT_FALSE(is_cycle(e3, b.graph));
}

TEST(H0, ComponentCount) {
  const auto g2 = load_graph("g2.json");
  const auto r = h0(g2.graph, A::nat_add());
  EXPECT_EQ(r.components, 1u);
  EXPECT_EQ(r.description, "NatAdd");
  Graph empty;
  for (int i = 0; i < 4; ++i) empty.add_vertex();
  EXPECT_EQ(h0(empty, A::nat_add()).components, 4u);
  EXPECT_EQ(h0(empty, A::nat_add()).description, "NatAdd^4");
  const auto intro = compose(testsupport::load_open("intro_red.json"), testsupport::load_open("intro_blue.json"));
  EXPECT_EQ(h0(intro.inner.graph, A::nat_add()).components, 1u);
}

TEST(H0, MatchesBfs) {
  testsupport::Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    const auto g = testsupport::random_graph(rng, 8, 6, 0);
    EXPECT_EQ(h0(g, A::boolean_rig()).components, oracle::bfs_components(g));
  }
}

TEST(SimpleLoops, SmallGraphs) {
  EXPECT_EQ(simple_loops(load_graph("g2.json").graph).loops.size(), 1u);
  EXPECT_EQ(simple_loops(load_graph("p2.json").graph).loops.size(), 0u);
  EXPECT_EQ(loop_sets(load_graph("q4.json").graph),
            (std::set<std::vector<std::size_t>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  EXPECT_EQ(simple_loops(load_graph("r5.json").graph).loops.size(), 6u);
}

TEST(SimpleLoops, SelfLoopsAndCap) {
  Graph g;
  g.add_vertex();
  g.add_edge(0, 0);
  g.add_edge(0, 0);
  EXPECT_EQ(loop_sets(g), (std::set<std::vector<std::size_t>>{{0}, {1}}));
  const auto q4 = load_graph("q4.json");
  const auto capped = simple_loops(q4.graph, 2);
  EXPECT_TRUE(capped.truncated);
  EXPECT_EQ(capped.loops.size(), 2u);
}

TEST(SimpleLoops, OutputIsCanonicalAndSimple) {
  testsupport::Rng rng(72);
  for (int i = 0; i < 100; ++i) {
    const auto g = testsupport::random_graph(rng, 5, 9);
    const auto loops = simple_loops(g).loops;
    EXPECT_TRUE(std::is_sorted(loops.begin(), loops.end()));
    for (const auto& l : loops) {
      EXPECT_TRUE(oracle::is_simple_loop(l.edges, g));
      EXPECT_EQ(SimpleLoop::canonical(l.edges), l);
      EXPECT_EQ(l.edges.front(), *std::min_element(l.edges.begin(), l.edges.end()));
    }
  }
}

TEST(Decompose, Examples) {
  const auto g2 = load_graph("g2.json");
  EXPECT_TRUE(decompose_cycle(Chain(Carrier::edges, A::nat_add()), g2.graph).empty());
  const auto twice = decompose_cycle(nat({{0, 2}, {1, 2}}), g2.graph);
  ASSERT_EQ(twice.size(), 1u);
  EXPECT_EQ(twice.begin()->second, 2);

  const auto q4 = load_graph("q4.json");
  const auto full = nat({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  const auto parts = decompose_cycle(full, q4.graph);
  EXPECT_EQ(parts.size(), 2u);
  EXPECT_EQ(resum(parts), full);
  std::set<std::vector<std::size_t>> used;
  for (const auto& [l, n] : parts) used.insert(l.edges);
  const bool ad = used == std::set<std::vector<std::size_t>>{{0, 2}, {1, 3}};
  const bool bc = used == std::set<std::vector<std::size_t>>{{0, 3}, {1, 2}};
  EXPECT_TRUE(ad || bc);
}

TEST(Decompose, RejectsNonCycles) {
  const auto g2 = load_graph("g2.json");
  try {
    decompose_cycle(nat({{0, 1}}), g2.graph);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_cycle);
  }
}

TEST(Feedback, Sums) {
  auto g2 = load_graph("g2.json");
  g2.labels = {Element::number(3), Element::number(2)};
  EXPECT_EQ(feedback(simple_loops(g2.graph).loops[0], g2), Element::number(5));
  g2.labels = {Element::number(0), Element::number(0)};
  EXPECT_EQ(feedback(simple_loops(g2.graph).loops[0], g2), Element::number(0));
  const auto q4 = load_graph("q4.json");
  EXPECT_EQ(feedback(nat({{0, 1}, {2, 1}}), q4), Element::number(2));
}

TEST(Feedback, IsAdditive) {
  testsupport::Rng rng(73);
  for (int i = 0; i < 50; ++i) {
    const auto g = testsupport::random_labeled(rng, A::nat_add(), 4, 6);
    const auto cs = brute_force_circulations(g.graph, 1);
    for (std::size_t a = 0; a < cs.size() && a < 6; ++a)
      for (std::size_t b = 0; b < cs.size() && b < 6; ++b)
        EXPECT_EQ(feedback(cs[a] + cs[b], g), A::nat_add().add(feedback(cs[a], g), feedback(cs[b], g)));
  }
}

TEST(Polarity, HomeworkLoops) {
  const auto hw = load_graph("homework.json");
  std::map<std::size_t, std::string> by_length;
  for (const auto& l : simple_loops(hw.graph).loops) {
    std::vector<std::string> signs;
    for (auto e : l.edges) signs.push_back(hw.algebra.format(hw.labels[e]));
    EXPECT_EQ(hw.algebra.format(loop_polarity(l, hw)), oracle::sign_product(signs));
    by_length[l.edges.size()] = hw.algebra.format(loop_polarity(l, hw));
  }
  EXPECT_EQ(by_length[4], "+");
  EXPECT_EQ(by_length[3], "-");

  const auto unit = change_labels(MonoidHom::collapse(hw.algebra), hw);
  for (const auto& l : simple_loops(unit.graph).loops) EXPECT_EQ(unit.algebra.format(loop_polarity(l, unit)), "1");
}

TEST(Polarity, RotationInvariantForCommutativeLabels) {
  testsupport::Rng rng(74);
  for (int i = 0; i < 50; ++i) {
    const auto g = testsupport::random_labeled(rng, A::sign0(), 4, 8);
    for (const auto& l : simple_loops(g.graph).loops) {
      auto edges = l.edges;
      for (std::size_t r = 0; r < edges.size(); ++r) {
        std::rotate(edges.begin(), edges.begin() + 1, edges.end());
        EXPECT_EQ(grade(Path{g.graph.src(edges[0]), edges}, g), loop_polarity(l, g));
      }
    }
  }
}

TEST(Relations, Counts) {
  const auto g2 = load_graph("g2.json");
  EXPECT_TRUE(find_relations(simple_loops(g2.graph).loops, 2).empty());

  const auto q4 = load_graph("q4.json");
  const auto rq = find_relations(simple_loops(q4.graph).loops, 4);
  ASSERT_EQ(rq.size(), 1u);
  // loops in order: {e1,e3}, {e1,e4}, {e2,e3}, {e2,e4}; a + d = b + c
  EXPECT_EQ(rq[0].lhs, (std::vector<Integer>{0, 1, 1, 0}));
  EXPECT_EQ(rq[0].rhs, (std::vector<Integer>{1, 0, 0, 1}));

  const auto r5 = load_graph("r5.json");
  const auto loops = simple_loops(r5.graph).loops;
  const auto rr = find_relations(loops, 5);
  EXPECT_EQ(rr.size(), 3u);
  for (const auto& r : rr) {
    // both sides give the same chain
    std::vector<Integer> l(5, 0), s(5, 0);
    for (std::size_t i = 0; i < loops.size(); ++i)
      for (auto e : loops[i].edges) l[e] += r.lhs[i], s[e] += r.rhs[i];
    EXPECT_EQ(l, s);
    EXPECT_NE(r.lhs, r.rhs);
  }
}

TEST(BruteForce, FiniteCoefficients) {
  const auto g2 = load_graph("g2.json");
  const auto p2 = load_graph("p2.json");
  const auto hb = brute_force_h1(g2.graph, A::boolean_rig());
  ASSERT_EQ(hb.size(), 2u);
  EXPECT_TRUE(hb[0].is_zero());
  EXPECT_EQ(hb[1].coeffs().size(), 2u);
  const auto hz = brute_force_h1(p2.graph, A::cyclic(2));
  ASSERT_EQ(hz.size(), 2u);
  EXPECT_EQ(hz[1].coeffs().size(), 2u);
  Graph edgeless;
  edgeless.add_vertex();
  EXPECT_EQ(brute_force_h1(edgeless, A::cyclic(3)).size(), 1u);
}

TEST(BruteForce, GroupsIgnoreDirectionNaturalsDoNot) {
  const auto g2 = load_graph("g2.json");
  const auto p2 = load_graph("p2.json");
  for (std::size_t n : {2, 3, 5}) EXPECT_EQ(brute_force_h1(g2.graph, A::cyclic(n)).size(), brute_force_h1(p2.graph, A::cyclic(n)).size());
  EXPECT_NE(brute_force_circulations(g2.graph, 3).size(), brute_force_circulations(p2.graph, 3).size());
}

TEST(BruteForce, Circulations) {
  const auto g2 = load_graph("g2.json");
  EXPECT_EQ(brute_force_circulations(g2.graph, 1).size(), 2u);
  const auto q4 = load_graph("q4.json");
  const auto cq = brute_force_circulations(q4.graph, 1);
  EXPECT_EQ(cq.size(), 6u);
  EXPECT_EQ(oracle::cycles(q4.graph, oracle::naturals(1)).size(), 6u);
  Graph dag;
  for (int i = 0; i < 3; ++i) dag.add_vertex();
  dag.add_edge(0, 1);
  dag.add_edge(1, 2);
  dag.add_edge(0, 2);
  const auto cd = brute_force_circulations(dag, 3);
  ASSERT_EQ(cd.size(), 1u);
  EXPECT_TRUE(cd[0].is_zero());
}

TEST(BruteForce, GuardAgainstBlowup) {
  Graph g;
  g.add_vertex();
  for (int i = 0; i < 21; ++i) g.add_edge(0, 0);
  EXPECT_THROW(brute_force_circulations(g, 1), Error);
}

TEST(Report, R5) {
  const auto r5 = load_graph("r5.json");
  const auto rep = homology_report(r5, 1);
  EXPECT_EQ(rep.h0.components, 1u);
  EXPECT_EQ(rep.minimal_cycles.size(), 6u);
  EXPECT_EQ(rep.relations.size(), 3u);
  EXPECT_EQ(rep.feedbacks.size(), 6u);
  for (const auto& f : rep.feedbacks) EXPECT_EQ(f, Element::number(2));
}
