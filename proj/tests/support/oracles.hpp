#pragma once

// Reference computations written directly from the definitions. None of them
// call the library routine they are used to check.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "mlgraph/mlgraph.hpp"

namespace oracle {

using mlgraph::Graph;

// Number of weakly connected components, by breadth-first search.
inline std::size_t bfs_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    adj[g.src(e)].push_back(g.tgt(e));
    adj[g.tgt(e)].push_back(g.src(e));
  }
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : adj[v])
        if (!seen[w]) seen[w] = true, q.push(w);
    }
  }
  return count;
}

inline std::string sign_product(const std::vector<std::string>& signs) {
  int minus = 0;
  for (const auto& s : signs) minus += s == "-" ? 1 : 0;
  return minus % 2 ? "-" : "+";
}

// A commutative monoid of coefficients given by value codes 0..count-1.
struct Coeffs {
  std::size_t count;
  std::function<std::size_t(std::size_t, std::size_t)> add;
  std::size_t zero;
};

// Naturals 0..bound. Sums may exceed the bound; they are only compared.
inline Coeffs naturals(std::size_t bound) {
  return {bound + 1, [](std::size_t a, std::size_t b) { return a + b; }, 0};
}

inline Coeffs from_table(const mlgraph::LabelAlgebra& a) {
  auto rows = a.is_rig() ? a.add_table().rows() : a.mul_table().rows();
  return {a.size(), [rows](std::size_t x, std::size_t y) { return rows[x][y]; }, a.zero_index()};
}

using Vec = std::vector<std::size_t>;

inline bool balanced(const Vec& c, const Graph& g, const Coeffs& k, const std::vector<bool>* only = nullptr) {
  Vec s(g.vertex_count(), k.zero), t(g.vertex_count(), k.zero);
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (only && !(*only)[e]) continue;
    s[g.src(e)] = k.add(s[g.src(e)], c[e]);
    t[g.tgt(e)] = k.add(t[g.tgt(e)], c[e]);
  }
  return s == t;
}

// Every coefficient vector whose source and target sums agree.
inline std::vector<Vec> cycles(const Graph& g, const Coeffs& k) {
  std::vector<Vec> out;
  Vec c(g.edge_count(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      if (balanced(c, g, k)) out.push_back(c);
      return;
    }
    for (std::size_t v = 0; v < k.count; ++v) {
      c[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Nonzero cycles with no other nonzero cycle pointwise below them.
inline std::set<Vec> minimal_nonzero(const std::vector<Vec>& cs) {
  auto zero = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }); };
  auto below = [](const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  std::set<Vec> out;
  for (const auto& c : cs) {
    if (zero(c)) continue;
    bool minimal = true;
    for (const auto& d : cs)
      if (!zero(d) && d != c && below(d, c)) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(c);
  }
  return out;
}

// Closed walk, wraps around, no vertex visited twice.
inline bool is_simple_loop(const std::vector<std::size_t>& edges, const Graph& g) {
  if (edges.empty()) return false;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (g.tgt(edges[i]) != g.src(edges[(i + 1) % edges.size()])) return false;
    if (!seen.insert(g.src(edges[i])).second) return false;
  }
  return true;
}

inline Vec indicator(const std::vector<std::size_t>& edges, std::size_t edge_count) {
  Vec v(edge_count, 0);
  for (auto e : edges) v[e] += 1;
  return v;
}

inline bool is_cancellative(const Coeffs& k) {
  for (std::size_t c = 0; c < k.count; ++c)
    for (std::size_t d = 0; d < k.count; ++d)
      for (std::size_t e = 0; e < k.count; ++e)
        if (c != d && k.add(c, e) == k.add(d, e)) return false;
  return true;
}

// All walks (as edge lists) from `from` to `to` of length 1..max_len.
inline std::vector<std::vector<std::size_t>> walks(const Graph& g, std::size_t from, std::size_t to,
                                                   std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (!cur.empty() && v == to) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (g.src(e) != v) continue;
      cur.push_back(e);
      rec(g.tgt(e));
      cur.pop_back();
    }
  };
  rec(from);
  return out;
}

// Product of labels along the walk, later edges on the left, folded from the
// right end.
inline mlgraph::Element grade(const std::vector<std::size_t>& walk, const mlgraph::LabeledGraph& g) {
  mlgraph::Element acc = g.algebra.one();
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) acc = g.algebra.multiply(acc, g.labels[*it]);
  return acc;
}

// Every assignment of motif vertices to host vertices and motif edges to host
// walks of length 1..max_len with matching grade.
using Occurrence = std::pair<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>>;

inline std::set<Occurrence> motif_occurrences(const mlgraph::LabeledGraph& motif, const mlgraph::LabeledGraph& host,
                                              std::size_t max_len) {
  std::set<Occurrence> out;
  const std::size_t nm = motif.graph.vertex_count(), nh = host.graph.vertex_count();
  std::vector<std::size_t> vm(nm, 0);
  std::function<void(std::size_t)> assign_vertices = [&](std::size_t i) {
    if (i == nm) {
      std::vector<std::vector<std::vector<std::size_t>>> choices;
      for (std::size_t e = 0; e < motif.graph.edge_count(); ++e) {
        std::vector<std::vector<std::size_t>> ok;
        for (auto& w : walks(host.graph, vm[motif.graph.src(e)], vm[motif.graph.tgt(e)], max_len))
          if (grade(w, host) == motif.labels[e]) ok.push_back(w);
        choices.push_back(std::move(ok));
      }
      std::vector<std::vector<std::size_t>> pick(choices.size());
      std::function<void(std::size_t)> assign_edges = [&](std::size_t e) {
        if (e == choices.size()) {
          out.insert({vm, pick});
          return;
        }
        for (const auto& w : choices[e]) {
          pick[e] = w;
          assign_edges(e + 1);
        }
      };
      assign_edges(0);
      return;
    }
    for (std::size_t h = 0; h < nh; ++h) {
      vm[i] = h;
      assign_vertices(i + 1);
    }
  };
  assign_vertices(0);
  return out;
}

// Target labels as sums over fibres, written without the library's helpers.
inline std::vector<mlgraph::Element> pushforward(const std::vector<std::size_t>& f1,
                                                 const std::vector<mlgraph::Element>& labels,
                                                 const mlgraph::LabelAlgebra& a, std::size_t target_edges) {
  std::vector<mlgraph::Element> out(target_edges, a.zero());
  for (std::size_t e = 0; e < f1.size(); ++e) out[f1[e]] = a.add(out[f1[e]], labels[e]);
  return out;
}

}  // namespace oracle
