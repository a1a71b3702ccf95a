#pragma once

#include <vector>

#include "mlgraph/graph.hpp"

namespace mlgraph {

// A graph morphism between graphs labeled in one commutative monoid (or the
// additive monoid of a rig). Construction rejects anything else.
class AdditiveMorphism {
 public:
  AdditiveMorphism(GraphMorphism m, LabeledGraph source, LabeledGraph target)
      : map_(std::move(m)), source_(std::move(source)), target_(std::move(target)) {
    require_same_algebra(source_.algebra, target_.algebra);
    if (!source_.algebra.additive_commutative())
      throw Error(ErrorCode::not_commutative, "additive morphisms need a commutative algebra, got " +
                                                  source_.algebra.name());
    check_morphism_shape(map_, source_.graph, target_.graph);
  }

  const GraphMorphism& map() const { return map_; }
  const LabeledGraph& source() const { return source_; }
  const LabeledGraph& target() const { return target_; }

 private:
  GraphMorphism map_;
  LabeledGraph source_;
  LabeledGraph target_;
};

namespace detail {

inline std::vector<Element> fiber_sums(const GraphMorphism& m, const LabeledGraph& src, std::size_t target_edges) {
  std::vector<Element> sums(target_edges, src.algebra.zero());
  for (std::size_t e = 0; e < src.graph.edge_count(); ++e) sums[m.f1[e]] = src.algebra.add(sums[m.f1[e]], src.label(e));
  return sums;
}

}  // namespace detail

// Each target edge must carry the sum of the labels on its fiber; an empty
// fiber sums to zero. Witness is the first failing target edge.
inline Verdict is_additive_morphism(const AdditiveMorphism& a) {
  const Graph& s = a.source().graph;
  const Graph& t = a.target().graph;
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const std::size_t fe = a.map().f1[e];
    if (a.map().f0[s.src(e)] != t.src(fe) || a.map().f0[s.tgt(e)] != t.tgt(fe))
      return Verdict::fail(e, "underlying map breaks a square at source edge '" + s.edge_name(e) + "'");
  }
  const auto sums = detail::fiber_sums(a.map(), a.source(), a.target().graph.edge_count());
  for (std::size_t e = 0; e < sums.size(); ++e)
    if (sums[e] != a.target().label(e))
      return Verdict::fail(e, "edge '" + a.target().graph.edge_name(e) + "' is labeled " +
                                  a.target().algebra.format(a.target().label(e)) + " but its fiber sums to " +
                                  a.target().algebra.format(sums[e]));
  return Verdict::pass();
}

inline Verdict is_additive_morphism(const GraphMorphism& m, const LabeledGraph& src, const LabeledGraph& dst) {
  return is_additive_morphism(AdditiveMorphism(m, src, dst));
}

// The unique labeling of m's target making m additive.
inline LabeledGraph pushforward_labeling(const GraphMorphism& m, const LabeledGraph& src, const Graph& target) {
  if (!src.algebra.additive_commutative())
    throw Error(ErrorCode::not_commutative, "pushforward needs a commutative algebra, got " + src.algebra.name());
  check_morphism_shape(m, src.graph, target);
  return LabeledGraph(target, src.algebra, detail::fiber_sums(m, src, target.edge_count()));
}

}  // namespace mlgraph
