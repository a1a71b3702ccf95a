#pragma once

// Chains with coefficients in a commutative monoid, cycles (chains whose
// source and target boundaries agree), H0 via components, simple loops as the
// minimal cycles over N, flow decomposition, feedback and bounded relation
// search. Brute-force enumerators double as test oracles.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlgraph/paths.hpp"

namespace mlgraph {

enum class Carrier { edges, vertices };

// Finitely supported map id -> coefficient. Zero coefficients are never stored.
class Chain {
 public:
  Chain(Carrier carrier, LabelAlgebra algebra) : carrier_(carrier), algebra_(std::move(algebra)) {
    if (!algebra_.additive_commutative())
      throw Error(ErrorCode::not_commutative, "chains need a commutative coefficient algebra, got " + algebra_.name());
  }

  // An N-chain from integer multiplicities.
  static Chain natural(Carrier carrier, const std::map<std::size_t, long long>& coeffs) {
    Chain c(carrier, algebras::nat_add());
    for (auto [id, n] : coeffs) c.add_term(id, Element::number(n));
    return c;
  }

  Carrier carrier() const { return carrier_; }
  const LabelAlgebra& algebra() const { return algebra_; }
  const std::map<std::size_t, Element>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Element at(std::size_t id) const {
    auto it = coeffs_.find(id);
    return it == coeffs_.end() ? algebra_.zero() : it->second;
  }

  void add_term(std::size_t id, const Element& x) {
    const Element sum = algebra_.add(at(id), x);
    if (sum == algebra_.zero())
      coeffs_.erase(id);
    else
      coeffs_[id] = sum;
  }

  friend Chain operator+(Chain a, const Chain& b) {
    if (a.carrier_ != b.carrier_) throw Error(ErrorCode::structural, "cannot add edge and vertex chains");
    require_same_algebra(a.algebra_, b.algebra_);
    for (const auto& [id, x] : b.coeffs_) a.add_term(id, x);
    return a;
  }

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.carrier_ == b.carrier_ && a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const Chain& a, const Chain& b) { return a.coeffs_ < b.coeffs_; }

  std::string format(const std::function<std::string(std::size_t)>& name) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [id, x] : coeffs_) {
      if (!out.empty()) out += " + ";
      const std::string c = algebra_.format(x);
      out += (c == "1" && !algebra_.is_finite() ? "" : c + "*") + name(id);
    }
    return out;
  }

 private:
  Carrier carrier_;
  LabelAlgebra algebra_;
  std::map<std::size_t, Element> coeffs_;
};

inline void check_edge_chain(const Chain& c, const Graph& g) {
  if (c.carrier() != Carrier::edges) throw Error(ErrorCode::structural, "expected an edge chain");
  for (const auto& [e, x] : c.coeffs()) g.check_edge(e);
}

// (sum c_e s(e), sum c_e t(e)).
inline std::pair<Chain, Chain> boundary_pair(const Chain& c, const Graph& g) {
  check_edge_chain(c, g);
  Chain s(Carrier::vertices, c.algebra()), t(Carrier::vertices, c.algebra());
  for (const auto& [e, x] : c.coeffs()) {
    s.add_term(g.src(e), x);
    t.add_term(g.tgt(e), x);
  }
  return {s, t};
}

inline bool is_cycle(const Chain& c, const Graph& g) {
  auto [s, t] = boundary_pair(c, g);
  return s == t;
}

struct H0Result {
  std::size_t components = 0;
  std::string description;
};

// H0(G, C) is the free C-span on the undirected components of G.
inline H0Result h0(const Graph& g, const LabelAlgebra& algebra) {
  if (!algebra.additive_commutative())
    throw Error(ErrorCode::not_commutative, "homology needs a commutative coefficient algebra");
  H0Result r;
  r.components = undirected_components(g).size();
  r.description = r.components == 0 ? "0" : algebra.name() + (r.components == 1 ? "" : "^" + std::to_string(r.components));
  return r;
}

// ---------------------------------------------------------------------------
// Simple loops

// A directed circuit visiting no vertex twice, stored as the lexicographically
// smallest rotation of its edge sequence.
struct SimpleLoop {
  std::vector<std::size_t> edges;

  friend bool operator==(const SimpleLoop&, const SimpleLoop&) = default;
  friend auto operator<=>(const SimpleLoop&, const SimpleLoop&) = default;

  static SimpleLoop canonical(std::vector<std::size_t> edges) {
    std::vector<std::size_t> best = edges;
    for (std::size_t r = 1; r < edges.size(); ++r) {
      std::rotate(edges.begin(), edges.begin() + 1, edges.end());
      best = std::min(best, edges);
    }
    return {best};
  }

  Path path(const Graph& g) const {
    if (edges.empty()) throw Error(ErrorCode::structural, "empty loop");
    return Path{g.src(edges.front()), edges};
  }

  Chain indicator(const LabelAlgebra& algebra = algebras::nat_add()) const {
    Chain c(Carrier::edges, algebra);
    const Element one = algebra.is_finite() ? one_of(algebra) : Element::number(1);
    for (auto e : edges) c.add_term(e, one);
    return c;
  }

 private:
  // For finite coefficient tables the multiplicity-one coefficient is the rig
  // unit when there is one, otherwise the element named "1".
  static Element one_of(const LabelAlgebra& a) {
    if (a.is_rig()) return a.one();
    if (auto e = a.find("1")) return *e;
    throw Error(ErrorCode::unsupported, "no coefficient '1' in " + a.name());
  }
};

inline bool is_simple_loop(const std::vector<std::size_t>& edges, const Graph& g) {
  if (edges.empty()) return false;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t e = edges[i];
    if (e >= g.edge_count()) return false;
    if (g.tgt(e) != g.src(edges[(i + 1) % edges.size()])) return false;
    if (!seen.insert(g.src(e)).second) return false;
  }
  return true;
}

inline constexpr std::size_t kLoopCap = 10000;

struct LoopEnumeration {
  std::vector<SimpleLoop> loops;
  bool truncated = false;
};

// Johnson's elementary-circuit search, over edges so parallel edges give
// distinct loops. Loops come out canonicalized and sorted.
inline LoopEnumeration simple_loops(const Graph& g, std::size_t cap = kLoopCap) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) out[g.src(e)].push_back(e);

  LoopEnumeration result;
  std::vector<bool> blocked(n);
  std::vector<std::set<std::size_t>> blockers(n);
  std::vector<std::size_t> stack;
  std::size_t s = 0;

  auto unblock = [&](auto&& self, std::size_t u) -> void {
    blocked[u] = false;
    auto pending = std::move(blockers[u]);
    blockers[u].clear();
    for (auto w : pending)
      if (blocked[w]) self(self, w);
  };

  auto circuit = [&](auto&& self, std::size_t v) -> bool {
    bool found = false;
    blocked[v] = true;
    for (auto e : out[v]) {
      if (result.truncated) break;
      const std::size_t w = g.tgt(e);
      if (w < s) continue;
      stack.push_back(e);
      if (w == s) {
        if (result.loops.size() >= cap) {
          result.truncated = true;
        } else {
          result.loops.push_back(SimpleLoop::canonical(stack));
          found = true;
        }
      } else if (!blocked[w] && self(self, w)) {
        found = true;
      }
      stack.pop_back();
    }
    if (found) {
      unblock(unblock, v);
    } else {
      for (auto e : out[v])
        if (g.tgt(e) >= s) blockers[g.tgt(e)].insert(v);
    }
    return found;
  };

  for (s = 0; s < n && !result.truncated; ++s) {
    std::fill(blocked.begin(), blocked.end(), false);
    for (auto& b : blockers) b.clear();
    circuit(circuit, s);
  }
  std::sort(result.loops.begin(), result.loops.end());
  return result;
}

// ---------------------------------------------------------------------------
// N-chains

namespace detail {

inline void require_natural(const Chain& c) {
  const Builtin b = c.algebra().builtin_id();
  if (b != Builtin::nat_add && b != Builtin::nat_rig)
    throw Error(ErrorCode::unsupported, "expected N coefficients, got " + c.algebra().name());
}

inline Integer nat_value(const Element& x) { return numerator(x.num()); }

}  // namespace detail

// Splits an N-cycle into simple loops: start at the smallest edge still
// carrying weight, keep taking the smallest positive out-edge until a vertex
// repeats, subtract that loop as many times as it fits, repeat.
inline std::map<SimpleLoop, Integer> decompose_cycle(const Chain& c, const Graph& g) {
  detail::require_natural(c);
  check_edge_chain(c, g);
  if (!is_cycle(c, g)) throw Error(ErrorCode::not_a_cycle, "source and target boundaries differ");
  std::map<std::size_t, Integer> w;
  for (const auto& [e, x] : c.coeffs()) w[e] = detail::nat_value(x);

  std::map<SimpleLoop, Integer> parts;
  while (!w.empty()) {
    std::vector<std::size_t> walk;
    std::map<std::size_t, std::size_t> seen_at;  // vertex -> position in walk
    std::size_t v = g.src(w.begin()->first);
    std::vector<std::size_t> loop;
    while (true) {
      seen_at[v] = walk.size();
      std::optional<std::size_t> next;
      for (const auto& [e, k] : w)
        if (g.src(e) == v) {
          next = e;
          break;
        }
      if (!next) throw Error(ErrorCode::not_a_cycle, "walk got stuck");
      walk.push_back(*next);
      v = g.tgt(*next);
      if (auto it = seen_at.find(v); it != seen_at.end()) {
        loop.assign(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
        break;
      }
    }
    Integer m = w.at(loop.front());
    for (auto e : loop) m = std::min(m, w.at(e));
    for (auto e : loop)
      if ((w[e] -= m) == 0) w.erase(e);
    parts[SimpleLoop::canonical(loop)] += m;
  }
  return parts;
}

inline Chain resum(const std::map<SimpleLoop, Integer>& parts) {
  Chain c(Carrier::edges, algebras::nat_add());
  for (const auto& [loop, m] : parts)
    for (auto e : loop.edges) c.add_term(e, Element::number(Rational(m)));
  return c;
}

// sum_e n_e * l(e) for an N-chain n, evaluated in the labels' additive view.
inline Element feedback(const Chain& c, const LabeledGraph& g) {
  detail::require_natural(c);
  check_edge_chain(c, g.graph);
  Element acc = g.algebra.zero();
  for (const auto& [e, x] : c.coeffs()) acc = g.algebra.add(acc, g.algebra.scale(detail::nat_value(x), g.label(e)));
  return acc;
}

inline Element feedback(const SimpleLoop& loop, const LabeledGraph& g) { return feedback(loop.indicator(), g); }

// Product of labels around the loop, read from its canonical starting edge.
inline Element loop_polarity(const SimpleLoop& loop, const LabeledGraph& g) { return grade(loop.path(g.graph), g); }

// ---------------------------------------------------------------------------
// Relations among loops

struct Relation {
  std::vector<Integer> lhs;
  std::vector<Integer> rhs;

  friend bool operator==(const Relation&, const Relation&) = default;
};

inline constexpr std::size_t kEnumerationGuard = 1000000;

namespace detail {

inline std::size_t checked_power(std::size_t base, std::size_t exp, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > kEnumerationGuard / std::max<std::size_t>(base, 1))
      throw Error(ErrorCode::guard_exceeded, std::string(what) + " would enumerate more than " +
                                                 std::to_string(kEnumerationGuard) + " cases");
    r *= base;
  }
  return r;
}

// Odometer over [0, base)^len, calling f with each vector.
template <class F>
void for_each_vector(std::size_t len, std::size_t base, F&& f) {
  std::vector<std::size_t> v(len, 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < len && ++v[i] == base) v[i++] = 0;
    if (i == len) return;
  }
}

}  // namespace detail

// Pairs of N-combinations of the given loops, coefficients at most `bound`,
// with equal chain sums and disjoint supports. Each unordered pair appears
// once, with the lexicographically smaller coefficient vector on the left.
inline std::vector<Relation> find_relations(const std::vector<SimpleLoop>& loops, std::size_t edge_count,
                                            std::size_t bound = 1) {
  if (bound < 1) throw Error(ErrorCode::unsupported, "relation bound must be at least 1");
  detail::checked_power(bound + 1, loops.size(), "find_relations");
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> by_sum;
  detail::for_each_vector(loops.size(), bound + 1, [&](const std::vector<std::size_t>& coef) {
    std::vector<std::size_t> sum(edge_count, 0);
    for (std::size_t i = 0; i < loops.size(); ++i)
      for (auto e : loops[i].edges) sum.at(e) += coef[i];
    by_sum[sum].push_back(coef);
  });
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> found;
  for (auto& [sum, group] : by_sum) {
    std::sort(group.begin(), group.end());
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        bool disjoint = true;
        for (std::size_t k = 0; k < loops.size() && disjoint; ++k) disjoint = group[i][k] == 0 || group[j][k] == 0;
        if (disjoint) found.emplace_back(group[i], group[j]);
      }
  }
  std::sort(found.begin(), found.end());
  std::vector<Relation> out;
  for (const auto& [l, r] : found) {
    Relation rel;
    for (auto x : l) rel.lhs.emplace_back(x);
    for (auto x : r) rel.rhs.emplace_back(x);
    out.push_back(std::move(rel));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration oracles

// Every edge chain over a finite coefficient table that is a cycle.
inline std::vector<Chain> brute_force_h1(const Graph& g, const LabelAlgebra& algebra) {
  if (!algebra.is_finite()) throw Error(ErrorCode::unsupported, "brute_force_h1 needs a finite table");
  if (!algebra.additive_commutative())
    throw Error(ErrorCode::not_commutative, "homology needs a commutative coefficient algebra");
  const std::size_t k = algebra.size();
  const std::size_t ne = g.edge_count(), nv = g.vertex_count();
  detail::checked_power(k, ne, "brute_force_h1");
  const Table& add = algebra.is_rig() ? algebra.add_table() : algebra.mul_table();
  const std::size_t zero = algebra.zero_index();
  std::vector<Chain> out;
  std::vector<std::size_t> s(nv), t(nv);
  detail::for_each_vector(ne, k, [&](const std::vector<std::size_t>& coef) {
    std::fill(s.begin(), s.end(), zero);
    std::fill(t.begin(), t.end(), zero);
    for (std::size_t e = 0; e < ne; ++e) {
      s[g.src(e)] = add.at(s[g.src(e)], coef[e]);
      t[g.tgt(e)] = add.at(t[g.tgt(e)], coef[e]);
    }
    if (s != t) return;
    Chain c(Carrier::edges, algebra);
    for (std::size_t e = 0; e < ne; ++e)
      if (coef[e] != zero) c.add_term(e, Element::index(coef[e]));
    out.push_back(std::move(c));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Every N-cycle with all coefficients at most `bound`.
inline std::vector<Chain> brute_force_circulations(const Graph& g, std::size_t bound) {
  const std::size_t ne = g.edge_count(), nv = g.vertex_count();
  detail::checked_power(bound + 1, ne, "brute_force_circulations");
  std::vector<Chain> out;
  std::vector<long long> net(nv);
  detail::for_each_vector(ne, bound + 1, [&](const std::vector<std::size_t>& coef) {
    std::fill(net.begin(), net.end(), 0);
    for (std::size_t e = 0; e < ne; ++e) {
      net[g.src(e)] += static_cast<long long>(coef[e]);
      net[g.tgt(e)] -= static_cast<long long>(coef[e]);
    }
    if (std::any_of(net.begin(), net.end(), [](long long x) { return x != 0; })) return;
    std::map<std::size_t, long long> m;
    for (std::size_t e = 0; e < ne; ++e)
      if (coef[e]) m[e] = static_cast<long long>(coef[e]);
    out.push_back(Chain::natural(Carrier::edges, m));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Nonzero N-chains with no other nonzero chain of the set below them in the
// componentwise order (x <= y iff y = x + a for some a).
inline std::vector<Chain> minimal_cycles(const std::vector<Chain>& cycles) {
  auto leq = [](const Chain& x, const Chain& y) {
    for (const auto& [e, a] : x.coeffs())
      if (y.at(e).num() < a.num()) return false;
    return true;
  };
  std::vector<Chain> out;
  for (const auto& x : cycles) {
    detail::require_natural(x);
    if (x.is_zero()) continue;
    bool minimal = true;
    for (const auto& y : cycles)
      if (!y.is_zero() && !(y == x) && leq(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct CycleReport {
  H0Result h0;
  std::vector<SimpleLoop> minimal_cycles;
  std::vector<Element> feedbacks;  // additive feedback, when the labels admit it
  std::vector<Element> polarities;
  std::vector<Relation> relations;
  bool truncated = false;
};

inline CycleReport homology_report(const LabeledGraph& g, std::size_t bound = 1) {
  CycleReport r;
  r.h0 = h0(g.graph, algebras::nat_add());
  auto loops = simple_loops(g.graph);
  r.minimal_cycles = loops.loops;
  r.truncated = loops.truncated;
  for (const auto& l : r.minimal_cycles) {
    r.polarities.push_back(loop_polarity(l, g));
    if (g.algebra.additive_commutative()) r.feedbacks.push_back(feedback(l, g));
  }
  r.relations = find_relations(r.minimal_cycles, g.graph.edge_count(), bound);
  return r;
}

}  // namespace mlgraph
