#pragma once

// Finite-dimensional c0(V)-correspondences, modelled as V x V graded vector
// spaces with the standard inner product on each block, and the bimodule
// maps between them.
//
// A correspondence with dims D has blocks X_{v,w} = p_v X p_w of dimension
// D(v, w). Its global basis runs over (v, w, p) lexicographically. A bimodule
// map must preserve the grading, so a morphism stores one matrix per block:
// rows index the target block basis, columns the source block basis.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgc/dim_matrix.hpp"
#include "kgc/graphs.hpp"

namespace kgc {

using Complex = std::complex<double>;
using Block = Eigen::MatrixXcd;

inline constexpr double kStructuralTolerance = 1e-9;

class Correspondence {
 public:
  using BasisLabels = std::vector<std::vector<std::string>>;  // per block v * n + w

  explicit Correspondence(DimMatrix dims);
  Correspondence(DimMatrix dims, BasisLabels labels);

  std::size_t vertex_count() const noexcept { return dims_.size(); }
  const DimMatrix& dims() const noexcept { return dims_; }
  std::size_t dim(Vertex v, Vertex w) const { return dims_(v, w); }
  std::size_t total_dim() const { return dims_.total(); }
  const std::optional<BasisLabels>& labels() const noexcept { return labels_; }

  /// c0(V) itself: dims = identity.
  static Correspondence base(std::size_t vertex_count);

  friend bool operator==(const Correspondence&, const Correspondence&) = default;

 private:
  DimMatrix dims_;
  std::optional<BasisLabels> labels_;
};

/// X_E: block (v, w) is spanned by chi_e for the edges with r(e) = v and
/// s(e) = w, in edge-list order.
Correspondence graph_correspondence(const DirectedGraph& graph);

/// Basis of X (x) Y. Block (v, w) is spanned by e^X_{(v,u),p} (x) e^Y_{(u,w),q}
/// ordered by u, then p, then q.
class TensorBasisMap {
 public:
  struct Entry {
    Vertex u;
    std::size_t p;
    std::size_t q;
  };

  TensorBasisMap(const DimMatrix& left, const DimMatrix& right);

  const std::vector<Entry>& block(Vertex v, Vertex w) const { return entries_[v * n_ + w]; }
  /// Offset of the u-segment inside block (v, w).
  std::size_t offset(Vertex v, Vertex w, Vertex u) const {
    return offsets_[(v * n_ + w) * n_ + u];
  }
  std::size_t index_of(Vertex v, Vertex w, Vertex u, std::size_t p, std::size_t q) const {
    return offset(v, w, u) + p * right_(u, w) + q;
  }

 private:
  std::size_t n_;
  DimMatrix right_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::size_t> offsets_;
};

struct TensorProduct {
  Correspondence space;
  TensorBasisMap basis;
};

TensorProduct tensor(const Correspondence& left, const Correspondence& right);

class CorrMorphism {
 public:
  /// The zero map.
  CorrMorphism(Correspondence source, Correspondence target);
  /// blocks are indexed v * n + w and must have shape
  /// target.dim(v, w) x source.dim(v, w).
  CorrMorphism(Correspondence source, Correspondence target, std::vector<Block> blocks);

  const Correspondence& source() const noexcept { return source_; }
  const Correspondence& target() const noexcept { return target_; }
  std::size_t vertex_count() const noexcept { return source_.vertex_count(); }
  const Block& block(Vertex v, Vertex w) const { return blocks_.at(v * vertex_count() + w); }
  Block& block(Vertex v, Vertex w) { return blocks_.at(v * vertex_count() + w); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

 private:
  Correspondence source_;
  Correspondence target_;
  std::vector<Block> blocks_;
};

CorrMorphism identity(const Correspondence& x);
/// after o before.
CorrMorphism compose(const CorrMorphism& after, const CorrMorphism& before);
CorrMorphism adjoint(const CorrMorphism& u);
CorrMorphism scalar_mul(Complex c, const CorrMorphism& u);

/// max over blocks of max(|U*U - I|_max, |UU* - I|_max); infinity when a
/// block is not square.
double unitarity_residual(const CorrMorphism& u);
bool is_unitary(const CorrMorphism& u, double tol = kStructuralTolerance);

/// Largest entrywise difference; throws on shape mismatch.
double max_abs_diff(const CorrMorphism& a, const CorrMorphism& b);

/// (U (x) W)(x (x) y) = Ux (x) Wy, in the tensor bases of source and target.
CorrMorphism tensor_morphism(const CorrMorphism& u, const CorrMorphism& w);

/// e_p (x) f_q -> f_q (x) e_p. Only a bimodule map over a single vertex, so
/// vertex_count > 1 is rejected.
CorrMorphism flip_map(const Correspondence& first, const Correspondence& second);

/// The canonical reindexing (X (x) Y) (x) Z -> X (x) (Y (x) Z).
CorrMorphism associator(const Correspondence& x, const Correspondence& y,
                        const Correspondence& z);

/// chi_e (x) chi_f -> chi_(e,f) from X_E (x) X_F onto X_{E*F}.
CorrMorphism fibred_product_iso(const DirectedGraph& left, const DirectedGraph& right);

}  // namespace kgc
