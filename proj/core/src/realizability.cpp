#include <cmath>

#include "kgc/product_system.hpp"

namespace kgc {

namespace {

std::string color_prefix(std::size_t color) {
  if (color < 22) return std::string(1, static_cast<char>('e' + color));
  return "c" + std::to_string(color + 1) + "_";
}

// Re-derives the skeleton of the witness and checks the unitaries found by
// the search against it; without unitaries, asks the search again.
bool reverify(const KGraphPresentation& witness, const Skeleton& target,
              const IsoSearchOptions& search,
              const std::optional<std::vector<CorrMorphism>>& thetas) {
  const Skeleton rebuilt = skeleton_from_kgraph(witness);
  if (thetas) return iso_residual(rebuilt, target, *thetas) < search.tol;
  const IsoVerdict v = skeleton_iso_search(rebuilt, target, search);
  return v.status == IsoStatus::isomorphic && v.residual < search.tol;
}

}  // namespace

DirectedGraph canonical_graph(const DimMatrix& dims, std::size_t color) {
  std::vector<Edge> edges;
  const std::string prefix = color_prefix(color);
  std::size_t next = 0;
  for (Vertex v = 0; v < dims.size(); ++v)
    for (Vertex w = 0; w < dims.size(); ++w)
      for (std::size_t c = 0; c < dims(v, w); ++c)
        edges.push_back({prefix + std::to_string(next++), v, w});
  return DirectedGraph(dims.size(), std::move(edges));
}

RealizabilityVerdict realizability(const Skeleton& skeleton, const RealizeOptions& options) {
  RealizabilityVerdict verdict;
  const std::size_t k = skeleton.rank();
  std::vector<DirectedGraph> graphs;
  for (std::size_t i = 0; i < k; ++i) graphs.push_back(canonical_graph(skeleton.fiber(i).dims(), i));
  IsoSearchOptions search = options.search;
  search.seed = options.seed;

  if (k == 1) {
    verdict.status = RealizeStatus::realizable;
    verdict.witness = KGraphPresentation(std::move(graphs), {});
    verdict.reason = "rank one: every correspondence is a graph correspondence";
    return verdict;
  }

  if (has_omega(skeleton)) {
    const Complex w = omega(skeleton).value;
    verdict.candidates_examined = 1;
    verdict.residual = std::abs(w - Complex(1.0, 0.0));
    if (verdict.residual < 1e-9) {
      Square sq = make_square(graphs[0], graphs[1], {{{0, 0}, {0, 0}}});
      KGraphPresentation witness(std::move(graphs), {std::move(sq)});
      if (reverify(witness, skeleton, search, std::nullopt)) {
        verdict.status = RealizeStatus::realizable;
        verdict.witness = std::move(witness);
        verdict.reason = "omega = 1";
        return verdict;
      }
      verdict.status = RealizeStatus::unknown;
      verdict.reason = "witness failed re-verification";
      return verdict;
    }
    verdict.status = RealizeStatus::not_realizable;
    verdict.reason = "omega != 1";
    return verdict;
  }

  PresentationEnumerator candidates(graphs);
  bool undecided = false;
  while (candidates.examined() < options.max_candidates) {
    auto candidate = candidates.next();
    verdict.candidates_examined = candidates.examined();
    if (!candidate) {
      if (undecided) {
        verdict.status = RealizeStatus::unknown;
        verdict.reason = "candidates exhausted, some comparisons undecided";
      } else {
        verdict.status = RealizeStatus::not_realizable;
        verdict.reason = candidates.yielded() == 0
                             ? "no k-graph has these adjacency matrices"
                             : "every candidate is provably non-isomorphic";
      }
      return verdict;
    }
    const Skeleton s = skeleton_from_kgraph(*candidate);
    const IsoVerdict iso = skeleton_iso_search(s, skeleton, search);
    if (iso.status == IsoStatus::isomorphic) {
      if (reverify(*candidate, skeleton, search, iso.witness)) {
        verdict.status = RealizeStatus::realizable;
        verdict.residual = iso.residual;
        verdict.witness = std::move(candidate);
        verdict.reason = "matched candidate " + std::to_string(candidates.examined());
        return verdict;
      }
      undecided = true;
    } else if (iso.status == IsoStatus::unknown) {
      undecided = true;
    }
  }
  verdict.status = RealizeStatus::unknown;
  verdict.reason = "candidate cap reached";
  return verdict;
}

}  // namespace kgc
