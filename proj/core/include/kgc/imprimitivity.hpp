#pragma once

// Imprimitivity bimodules over c0(V) for a finite discrete V.
//
// As a right Hilbert module, X splits by columns: X p_w has dimension
// c_w = sum_v dims(v, w), so K(X) is the direct sum of the matrix algebras
// M_{c_w}. The left action sends p_v to the projection onto the row-v blocks.
// It is an isomorphism of c0(V) onto K(X), and X is full, exactly when every
// c_w = 1 and each column's single entry sits in a distinct row: dims is a
// permutation matrix. The induced (Rieffel) permutation h sends w to the row
// of that entry, and X is then the graph correspondence of (V, V, h, id).
//
// Line bundles over a finite discrete space are trivial, so every
// imprimitivity bimodule here is realizable; the Picard obstruction only
// appears for genuinely topological vertex spaces.

#include <optional>
#include <string>
#include <vector>

#include "kgc/correspondence.hpp"

namespace kgc {

struct ImprimitivityReport {
  bool is_imprimitivity = false;
  /// A symmetric imprimitivity bimodule (f.xi = xi.f), i.e. dims = identity.
  bool is_symmetric = false;
  /// h(w) = v with dims(v, w) = 1.
  std::optional<std::vector<Vertex>> rieffel_permutation;
  std::string reason;
};

ImprimitivityReport analyze(const Correspondence& x);

struct GraphRealization {
  DirectedGraph graph;  // edges "v<w>" with r = h(w), s = w
  CorrMorphism iso;     // x -> graph_correspondence(graph), every block [1]
};

/// Throws std::invalid_argument if x is not an imprimitivity bimodule.
GraphRealization realize_as_graph(const Correspondence& x);

}  // namespace kgc
