#include "kgc/imprimitivity.hpp"

#include <stdexcept>

namespace kgc {

ImprimitivityReport analyze(const Correspondence& x) {
  ImprimitivityReport report;
  const DimMatrix& d = x.dims();
  const std::size_t n = d.size();
  for (Vertex w = 0; w < n; ++w) {
    const std::size_t c = d.column_sum(w);
    if (c == 0) {
      report.reason = "not full: column " + std::to_string(w) + " is zero";
      return report;
    }
    if (c > 1) {
      report.reason = "left action misses K(X): column " + std::to_string(w) + " has dimension " +
                      std::to_string(c);
      return report;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (d.row_sum(v) == 0) {
      report.reason = "left action not injective: row " + std::to_string(v) + " is zero";
      return report;
    }
  // Every column has a single 1 and no row is empty, so dims is a permutation.
  std::vector<Vertex> h(n);
  for (Vertex w = 0; w < n; ++w)
    for (Vertex v = 0; v < n; ++v)
      if (d(v, w) == 1) h[w] = v;
  report.is_imprimitivity = true;
  report.is_symmetric = d.is_identity();
  report.rieffel_permutation = std::move(h);
  report.reason = report.is_symmetric ? "trivial imprimitivity bimodule"
                                      : "imprimitivity bimodule with nontrivial permutation";
  return report;
}

GraphRealization realize_as_graph(const Correspondence& x) {
  const ImprimitivityReport report = analyze(x);
  if (!report.is_imprimitivity)
    throw std::invalid_argument("realize_as_graph: " + report.reason);
  const auto& h = *report.rieffel_permutation;
  std::vector<Edge> edges;
  for (Vertex w = 0; w < h.size(); ++w) edges.push_back({"v" + std::to_string(w), h[w], w});
  DirectedGraph graph(h.size(), std::move(edges));
  CorrMorphism iso(x, graph_correspondence(graph));
  for (Vertex w = 0; w < h.size(); ++w) iso.block(h[w], w)(0, 0) = 1.0;
  return {std::move(graph), std::move(iso)};
}

}  // namespace kgc
