#pragma once

// Finite directed graphs over the vertex set {0, .., n-1}, fibred products,
// and k-graphs presented by their degree-one graphs plus commuting squares.
//
// Convention throughout: an edge e has range r(e) and source s(e), and the
// composite ef exists when s(e) = r(f).

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgc/dim_matrix.hpp"

namespace kgc {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::string label;
  Vertex range = 0;
  Vertex source = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A finite directed graph. Edge-list order is part of the value: it fixes
/// the basis order of every correspondence built from the graph.
class DirectedGraph {
 public:
  /// Throws std::invalid_argument on vertex_count == 0, out-of-range
  /// endpoints, or duplicate labels.
  DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  std::optional<std::size_t> find(std::string_view label) const;

  /// adjacency()(v, w) counts edges with range v and source w.
  DimMatrix adjacency() const;

  /// Position of edge e among the edges sharing its (range, source) pair.
  std::size_t block_position(std::size_t e) const { return block_position_.at(e); }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> block_position_;
};

/// E*F: edges are the composable pairs (e, f), s(e) = r(f), ordered
/// lexicographically by (index of e, index of f).
struct FibredProductGraph {
  DirectedGraph graph;
  std::vector<std::size_t> left_index;
  std::vector<std::size_t> right_index;
  std::size_t right_edge_count = 0;
  std::vector<std::size_t> pair_lookup;  // e * right_edge_count + f -> edge or npos

  /// Index of (e, f) in the fibred product, if composable.
  std::optional<std::size_t> find(std::size_t e, std::size_t f) const;
};

FibredProductGraph fibred_product(const DirectedGraph& left, const DirectedGraph& right);

/// (V, V, id, id): one loop "v<i>" per vertex.
DirectedGraph identity_graph(std::size_t vertex_count);

/// An edge bijection phi with r(phi(e)) = r(e) and s(phi(e)) = s(e), matched
/// block by block in edge order. Exists iff the adjacency matrices agree.
std::optional<std::vector<std::size_t>> vertex_fixing_iso(const DirectedGraph& from,
                                                          const DirectedGraph& to);

/// A commuting-square bijection (E_i*E_j)^1 -> (E_j*E_i)^1. image[p] is the
/// index in E_j*E_i of the image of the p-th edge of E_i*E_j; npos marks an
/// unassigned pair.
struct Square {
  std::vector<std::size_t> image;

  friend bool operator==(const Square&, const Square&) = default;
};

/// Index of the unordered color pair i < j among the k(k-1)/2 pairs.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t k);

/// A k-graph given by its degree-e_i graphs E_0..E_{k-1} (colors are 0-based
/// here, 1-based in files) and one square per pair i < j.
class KGraphPresentation {
 public:
  /// Checks structure only: k >= 1, shared vertex count, one square per pair
  /// sized to the fibred product, image indices in range or npos. Whether the
  /// squares are bijective and satisfy the cube condition is validate_kgraph's
  /// job.
  KGraphPresentation(std::vector<DirectedGraph> graphs, std::vector<Square> squares);

  std::size_t rank() const noexcept { return graphs_.size(); }
  std::size_t vertex_count() const { return graphs_.front().vertex_count(); }
  const DirectedGraph& graph(std::size_t i) const { return graphs_.at(i); }
  const std::vector<DirectedGraph>& graphs() const noexcept { return graphs_; }
  const Square& square(std::size_t i, std::size_t j) const;
  const std::vector<Square>& squares() const noexcept { return squares_; }

  friend bool operator==(const KGraphPresentation&, const KGraphPresentation&) = default;

 private:
  std::vector<DirectedGraph> graphs_;
  std::vector<Square> squares_;
};

struct Violation {
  enum class Kind { unassigned, not_injective, range_source, cube };
  Kind kind;
  std::size_t i = 0, j = 0, l = 0;  // colors involved; l unused except for cube
  std::vector<std::size_t> edges;   // offending pair or triple (edge indices)
  std::vector<std::size_t> first_route;   // cube only: (g~, f~, e~) per route
  std::vector<std::size_t> second_route;
  std::string message;
};

struct KGraphVerdict {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Checks that every square preserves range and source and is a bijection,
/// and, for k >= 3, the cube condition on every composable triple
/// (e, f, g) in E_i x E_j x E_l, i < j < l: rewriting efg into color order
/// (l, j, i) by theta_jl, theta_il, theta_ij must agree with rewriting by
/// theta_ij, theta_il, theta_jl.
KGraphVerdict validate_kgraph(const KGraphPresentation& presentation);

/// theta_ij(e, f) = (f~, e~) with f~e~ = ef. For i > j the inverse of
/// theta_ji is used, so e is still a color-i edge and f a color-j edge.
/// Throws std::invalid_argument if s(e) != r(f) or the square is undefined
/// there.
std::pair<std::size_t, std::size_t> factor(const KGraphPresentation& presentation,
                                           std::size_t i, std::size_t j, std::size_t e,
                                           std::size_t f);

/// Streams every range/source-preserving bijection (E*F)^1 -> (F*E)^1.
///
/// Blocks are the (r, s) pairs in ascending order; within a block the
/// permutations run in lexicographic order, and the last block varies
/// fastest. The stream is empty iff A_E A_F != A_F A_E.
class SquareEnumerator {
 public:
  SquareEnumerator(const DirectedGraph& left, const DirectedGraph& right,
                   std::size_t limit = npos);

  std::optional<Square> next();

  /// True once the limit was reached while further squares remained.
  bool truncated() const noexcept { return truncated_; }
  std::size_t yielded() const noexcept { return yielded_; }

 private:
  struct Block {
    std::vector<std::size_t> sources;  // indices in left*right
    std::vector<std::size_t> targets;  // indices in right*left
    std::vector<std::size_t> perm;
  };

  bool advance();
  Square current() const;

  std::size_t source_edge_count_ = 0;
  std::vector<Block> blocks_;
  std::size_t limit_;
  std::size_t yielded_ = 0;
  bool exhausted_ = false;
  bool started_ = false;
  bool truncated_ = false;
};

struct SquareEnumeration {
  std::vector<Square> squares;
  bool truncated = false;
};

SquareEnumeration enumerate_squares(const DirectedGraph& left, const DirectedGraph& right,
                                    std::size_t limit = npos);

/// Builds a square from explicit (e, f) -> (f~, e~) assignments given as edge
/// indices into E_i, E_j. Throws on non-composable pairs or repeated sources.
Square make_square(const DirectedGraph& first, const DirectedGraph& second,
                   const std::vector<std::pair<std::pair<std::size_t, std::size_t>,
                                               std::pair<std::size_t, std::size_t>>>& rules);

/// Streams the presentations over fixed graphs E_0..E_{k-1}: the cartesian
/// product of the per-pair square streams (pairs in pair_index order, the
/// last pair varying fastest). For k >= 3 only presentations passing
/// validate_kgraph are yielded; `examined()` counts every combination tried.
class PresentationEnumerator {
 public:
  explicit PresentationEnumerator(std::vector<DirectedGraph> graphs, std::size_t limit = npos);

  std::optional<KGraphPresentation> next();

  bool truncated() const noexcept { return truncated_; }
  std::size_t yielded() const noexcept { return yielded_; }
  std::size_t examined() const noexcept { return examined_; }

 private:
  std::optional<std::vector<Square>> next_combination();

  std::vector<DirectedGraph> graphs_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<SquareEnumerator> streams_;
  std::vector<Square> current_;
  std::size_t limit_;
  std::size_t yielded_ = 0;
  std::size_t examined_ = 0;
  bool started_ = false;
  bool exhausted_ = false;
  bool truncated_ = false;
};

}  // namespace kgc
