#pragma once

// Morphisms that change the label algebra along the way: a pair (phi, f) with
// phi a homomorphism of label algebras and f a map of underlying graphs.

#include "mlgraph/additive.hpp"
#include "mlgraph/paths.hpp"

namespace mlgraph {

enum class MorphismMode { set, kleisli, additive };

inline MorphismMode parse_mode(std::string_view s) {
  if (s == "set") return MorphismMode::set;
  if (s == "kleisli") return MorphismMode::kleisli;
  if (s == "additive") return MorphismMode::additive;
  throw Error(ErrorCode::unsupported, "unknown morphism mode '" + std::string(s) + "'");
}

// set:      l' . f1 = phi . l
// additive: pushing phi . l forward along f gives l'
// kleisli:  f read as a Kleisli morphism with length-one images
inline Verdict grothendieck_morphism_check(const MonoidHom& phi, const GraphMorphism& m, const LabeledGraph& src,
                                           const LabeledGraph& dst, MorphismMode mode) {
  require_same_algebra(src.algebra, phi.source());
  require_same_algebra(dst.algebra, phi.target());
  if (auto r = validate_morphism(m, src.graph, dst.graph); !r.ok())
    throw Error(ErrorCode::structural, "not a graph morphism: " + r.summary());
  switch (mode) {
    case MorphismMode::set:
      for (std::size_t e = 0; e < src.graph.edge_count(); ++e)
        if (dst.label(m.f1[e]) != phi(src.label(e)))
          return Verdict::fail(e, "edge '" + src.graph.edge_name(e) + "' maps to a differently labeled edge");
      return Verdict::pass();
    case MorphismMode::additive:
      return is_additive_morphism(m, change_labels(phi, src), dst);
    case MorphismMode::kleisli:
      return is_kleisli_morphism(KleisliMorphism::from_graph_morphism(m, dst.graph), src, dst, &phi);
  }
  return Verdict::pass();
}

inline Verdict grothendieck_morphism_check(const MonoidHom& phi, const KleisliMorphism& k, const LabeledGraph& src,
                                           const LabeledGraph& dst) {
  return is_kleisli_morphism(k, src, dst, &phi);
}

}  // namespace mlgraph
