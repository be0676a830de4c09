#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the routine it is meant to check.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kgc/correspondence.hpp"
#include "kgc/graphs.hpp"
#include "kgc/random.hpp"

namespace kgc::oracle {

inline std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Block kron(const Block& a, const Block& b) {
  Block out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DimMatrix matmul(const DimMatrix& a, const DimMatrix& b) {
  const std::size_t n = a.size();
  DimMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t s = 0;
      for (std::size_t t = 0; t < n; ++t) s += a(i, t) * b(t, j);
      c(i, j) = s;
    }
  return c;
}

inline DimMatrix count_edges(const DirectedGraph& g) {
  DimMatrix a(g.vertex_count());
  for (const Edge& e : g.edges()) ++a(e.range, e.source);
  return a;
}

/// All composable pairs (e, f), scanning E x F.
inline std::vector<std::pair<std::size_t, std::size_t>> composable_pairs(const DirectedGraph& e,
                                                                         const DirectedGraph& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < e.edge_count(); ++a)
    for (std::size_t b = 0; b < f.edge_count(); ++b)
      if (e.edge(a).source == f.edge(b).range) out.emplace_back(a, b);
  return out;
}

/// Square count from the pair lists: product of factorials of the (r, s)
/// class sizes, or 0 when some class sizes differ.
inline std::size_t square_count(const DirectedGraph& e, const DirectedGraph& f) {
  const std::size_t n = e.vertex_count();
  std::vector<std::size_t> left(n * n, 0), right(n * n, 0);
  for (auto [a, b] : composable_pairs(e, f)) ++left[e.edge(a).range * n + f.edge(b).source];
  for (auto [b, a] : composable_pairs(f, e)) ++right[f.edge(b).range * n + e.edge(a).source];
  if (left != right) return 0;
  std::size_t r = 1;
  for (std::size_t c : left) r *= factorial(c);
  return r;
}

/// Counts range/source preserving bijections by trying every permutation of
/// the whole target pair list. Only for tiny inputs.
inline std::size_t square_count_brute(const DirectedGraph& e, const DirectedGraph& f) {
  const auto from = composable_pairs(e, f);
  const auto to = composable_pairs(f, e);
  if (from.size() != to.size()) return 0;
  std::vector<std::size_t> perm(to.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t p = 0; p < from.size() && ok; ++p) {
      const auto [a, b] = from[p];
      const auto [c, d] = to[perm[p]];
      ok = e.edge(a).range == f.edge(c).range && f.edge(b).source == e.edge(d).source;
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Random graph whose adjacency entries are uniform in [0, max_entry].
inline DirectedGraph random_graph(std::size_t n, std::size_t max_entry, Rng& rng,
                                  const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> count(0, max_entry);
  std::vector<Edge> edges;
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t c = count(rng); c > 0; --c)
        edges.push_back({prefix + std::to_string(next++), v, w});
  std::shuffle(edges.begin(), edges.end(), rng);
  return DirectedGraph(n, std::move(edges));
}

/// Label-level commuting squares, for direct cube checks.
using LabelSquare = std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>>;

inline LabelSquare label_square(const DirectedGraph& gi, const DirectedGraph& gj,
                                const Square& sq) {
  const auto from = composable_pairs(gi, gj);
  const auto to = composable_pairs(gj, gi);
  LabelSquare out;
  for (std::size_t p = 0; p < from.size(); ++p) {
    const auto [c, d] = to[sq.image[p]];
    out[{gi.edge(from[p].first).label, gj.edge(from[p].second).label}] = {gj.edge(c).label,
                                                                          gi.edge(d).label};
  }
  return out;
}

/// Cube condition for a rank-3 presentation, written out on labels.
inline bool cube_holds(const DirectedGraph& e1, const DirectedGraph& e2, const DirectedGraph& e3,
                       const LabelSquare& t12, const LabelSquare& t13, const LabelSquare& t23) {
  for (const Edge& e : e1.edges())
    for (const Edge& f : e2.edges())
      for (const Edge& g : e3.edges()) {
        if (e.source != f.range || f.source != g.range) continue;
        // Route one: (f g), then (e g'), then (e' f').
        const auto [g1, f1] = t23.at({f.label, g.label});
        const auto [g2, e2l] = t13.at({e.label, g1});
        const auto [f2, e3l] = t12.at({e2l, f1});
        // Route two: (e f), then (e' g), then (f' g').
        const auto [fa, ea] = t12.at({e.label, f.label});
        const auto [ga, eb] = t13.at({ea, g.label});
        const auto [gb, fb] = t23.at({fa, ga});
        if (g2 != gb || f2 != fb || e3l != eb) return false;
      }
  return true;
}

/// The braid of a one-vertex 2-graph from its degree (1,1) structure maps.
/// beta_12 sends e (x) f to the path (e,f) and is the identity reindexing;
/// beta_21 sends f (x) e to the path whose square image is (f,e). Returns
/// beta_21^{-1} beta_12.
inline Block braid_from_beta(const DirectedGraph& e1, const DirectedGraph& e2, const Square& sq) {
  const auto a = static_cast<Eigen::Index>(e1.edge_count());
  const auto b = static_cast<Eigen::Index>(e2.edge_count());
  const Block beta12 = Block::Identity(a * b, a * b);
  Block beta21 = Block::Zero(a * b, a * b);
  const auto from = composable_pairs(e1, e2);
  const auto to = composable_pairs(e2, e1);
  for (std::size_t p = 0; p < from.size(); ++p) {
    const auto [f, e] = to[sq.image[p]];
    beta21(static_cast<Eigen::Index>(from[p].first) * b + static_cast<Eigen::Index>(from[p].second),
           static_cast<Eigen::Index>(f) * a + static_cast<Eigen::Index>(e)) = 1.0;
  }
  return beta21.inverse() * beta12;
}

/// Left-action oracle for the imprimitivity criterion. Builds phi(p_v) in
/// the compacts, the direct sum over columns w of full matrix algebras of
/// size c_w, and checks injectivity, surjectivity and fullness by rank.
inline bool imprimitivity_by_compacts(const DimMatrix& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> c(n, 0);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v) c[w] += d(v, w);
  std::size_t compact_dim = 0;
  for (std::size_t w = 0; w < n; ++w) compact_dim += c[w] * c[w];
  if (std::any_of(c.begin(), c.end(), [](std::size_t x) { return x == 0; })) return false;
  Eigen::MatrixXd images(static_cast<Eigen::Index>(compact_dim), static_cast<Eigen::Index>(n));
  images.setZero();
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t base = 0;
    for (std::size_t w = 0; w < n; ++w) {
      std::size_t row = 0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t p = 0; p < d(u, w); ++p, ++row)
          if (u == v)
            images(static_cast<Eigen::Index>(base + row * c[w] + row),
                   static_cast<Eigen::Index>(v)) = 1.0;
      base += c[w] * c[w];
    }
  }
  const auto rank = static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(images).rank());
  return rank == n && rank == compact_dim;
}

}  // namespace kgc::oracle
