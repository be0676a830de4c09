#include "kgc/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kgc {

Correspondence::Correspondence(DimMatrix dims) : dims_(std::move(dims)) {
  if (dims_.size() == 0) throw std::invalid_argument("correspondence needs at least one vertex");
}

Correspondence::Correspondence(DimMatrix dims, BasisLabels labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  const std::size_t n = dims_.size();
  if (n == 0) throw std::invalid_argument("correspondence needs at least one vertex");
  if (labels_->size() != n * n) throw std::invalid_argument("basis labels: one list per block");
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w)
      if ((*labels_)[v * n + w].size() != dims_(v, w))
        throw std::invalid_argument("basis labels do not match block dimensions");
}

Correspondence Correspondence::base(std::size_t vertex_count) {
  return Correspondence(DimMatrix::identity(vertex_count));
}

Correspondence graph_correspondence(const DirectedGraph& graph) {
  const std::size_t n = graph.vertex_count();
  Correspondence::BasisLabels labels(n * n);
  for (const Edge& e : graph.edges()) labels[e.range * n + e.source].push_back(e.label);
  return Correspondence(graph.adjacency(), std::move(labels));
}

TensorBasisMap::TensorBasisMap(const DimMatrix& left, const DimMatrix& right)
    : n_(left.size()), right_(right), entries_(n_ * n_), offsets_(n_ * n_ * n_, 0) {
  if (left.size() != right.size()) throw std::invalid_argument("tensor: vertex count mismatch");
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex w = 0; w < n_; ++w) {
      auto& list = entries_[v * n_ + w];
      for (Vertex u = 0; u < n_; ++u) {
        offsets_[(v * n_ + w) * n_ + u] = list.size();
        for (std::size_t p = 0; p < left(v, u); ++p)
          for (std::size_t q = 0; q < right(u, w); ++q) list.push_back({u, p, q});
      }
    }
}

TensorProduct tensor(const Correspondence& left, const Correspondence& right) {
  if (left.vertex_count() != right.vertex_count())
    throw std::invalid_argument("tensor: vertex count mismatch");
  TensorBasisMap basis(left.dims(), right.dims());
  DimMatrix dims = left.dims() * right.dims();
  if (left.labels() && right.labels()) {
    const std::size_t n = left.vertex_count();
    Correspondence::BasisLabels labels(n * n);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w)
        for (const auto& t : basis.block(v, w))
          labels[v * n + w].push_back("(" + (*left.labels())[v * n + t.u][t.p] + "," +
                                      (*right.labels())[t.u * n + w][t.q] + ")");
    return {Correspondence(std::move(dims), std::move(labels)), std::move(basis)};
  }
  return {Correspondence(std::move(dims)), std::move(basis)};
}

CorrMorphism::CorrMorphism(Correspondence source, Correspondence target)
    : source_(std::move(source)), target_(std::move(target)) {
  const std::size_t n = source_.vertex_count();
  if (target_.vertex_count() != n) throw std::invalid_argument("morphism: vertex count mismatch");
  blocks_.reserve(n * n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w)
      blocks_.push_back(Block::Zero(static_cast<Eigen::Index>(target_.dim(v, w)),
                                    static_cast<Eigen::Index>(source_.dim(v, w))));
}

CorrMorphism::CorrMorphism(Correspondence source, Correspondence target,
                           std::vector<Block> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
  const std::size_t n = source_.vertex_count();
  if (target_.vertex_count() != n) throw std::invalid_argument("morphism: vertex count mismatch");
  if (blocks_.size() != n * n) throw std::invalid_argument("morphism: need n*n blocks");
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      const Block& b = blocks_[v * n + w];
      if (static_cast<std::size_t>(b.rows()) != target_.dim(v, w) ||
          static_cast<std::size_t>(b.cols()) != source_.dim(v, w))
        throw std::invalid_argument("morphism: block shape does not match dims");
    }
}

CorrMorphism identity(const Correspondence& x) {
  CorrMorphism id(x, x);
  for (Vertex v = 0; v < x.vertex_count(); ++v)
    for (Vertex w = 0; w < x.vertex_count(); ++w) id.block(v, w).setIdentity();
  return id;
}

CorrMorphism compose(const CorrMorphism& after, const CorrMorphism& before) {
  if (after.source().dims() != before.target().dims())
    throw std::invalid_argument("compose: shape mismatch");
  const std::size_t n = before.vertex_count();
  std::vector<Block> blocks;
  blocks.reserve(n * n);
  for (std::size_t b = 0; b < n * n; ++b) blocks.push_back(after.blocks()[b] * before.blocks()[b]);
  return CorrMorphism(before.source(), after.target(), std::move(blocks));
}

CorrMorphism adjoint(const CorrMorphism& u) {
  std::vector<Block> blocks;
  blocks.reserve(u.blocks().size());
  for (const Block& b : u.blocks()) blocks.push_back(b.adjoint());
  return CorrMorphism(u.target(), u.source(), std::move(blocks));
}

CorrMorphism scalar_mul(Complex c, const CorrMorphism& u) {
  std::vector<Block> blocks;
  blocks.reserve(u.blocks().size());
  for (const Block& b : u.blocks()) blocks.push_back(c * b);
  return CorrMorphism(u.source(), u.target(), std::move(blocks));
}

double unitarity_residual(const CorrMorphism& u) {
  double r = 0.0;
  for (const Block& b : u.blocks()) {
    if (b.rows() != b.cols()) return std::numeric_limits<double>::infinity();
    if (b.size() == 0) continue;
    const Block id = Block::Identity(b.rows(), b.cols());
    r = std::max(r, (b.adjoint() * b - id).cwiseAbs().maxCoeff());
    r = std::max(r, (b * b.adjoint() - id).cwiseAbs().maxCoeff());
  }
  return r;
}

bool is_unitary(const CorrMorphism& u, double tol) { return unitarity_residual(u) < tol; }

double max_abs_diff(const CorrMorphism& a, const CorrMorphism& b) {
  if (a.source().dims() != b.source().dims() || a.target().dims() != b.target().dims())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    if (a.blocks()[i].size() > 0)
      r = std::max(r, (a.blocks()[i] - b.blocks()[i]).cwiseAbs().maxCoeff());
  return r;
}

CorrMorphism tensor_morphism(const CorrMorphism& u, const CorrMorphism& w) {
  if (u.vertex_count() != w.vertex_count())
    throw std::invalid_argument("tensor_morphism: vertex count mismatch");
  const std::size_t n = u.vertex_count();
  const TensorProduct src = tensor(u.source(), w.source());
  const TensorProduct dst = tensor(u.target(), w.target());
  CorrMorphism out(src.space, dst.space);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex x = 0; x < n; ++x) {
      Block& b = out.block(v, x);
      for (Vertex m = 0; m < n; ++m) {
        const Block& left = u.block(v, m);
        const Block& right = w.block(m, x);
        if (left.size() == 0 || right.size() == 0) continue;
        const auto r0 = static_cast<Eigen::Index>(dst.basis.offset(v, x, m));
        const auto c0 = static_cast<Eigen::Index>(src.basis.offset(v, x, m));
        for (Eigen::Index a = 0; a < left.rows(); ++a)
          for (Eigen::Index c = 0; c < left.cols(); ++c)
            b.block(r0 + a * right.rows(), c0 + c * right.cols(), right.rows(), right.cols()) =
                left(a, c) * right;
      }
    }
  return out;
}

CorrMorphism flip_map(const Correspondence& first, const Correspondence& second) {
  if (first.vertex_count() != 1 || second.vertex_count() != 1)
    throw std::invalid_argument("flip_map is only a bimodule map over a single vertex");
  const TensorProduct src = tensor(first, second);
  const TensorProduct dst = tensor(second, first);
  CorrMorphism out(src.space, dst.space);
  const std::size_t d1 = first.dim(0, 0), d2 = second.dim(0, 0);
  for (std::size_t p = 0; p < d1; ++p)
    for (std::size_t q = 0; q < d2; ++q)
      out.block(0, 0)(static_cast<Eigen::Index>(dst.basis.index_of(0, 0, 0, q, p)),
                      static_cast<Eigen::Index>(src.basis.index_of(0, 0, 0, p, q))) = 1.0;
  return out;
}

CorrMorphism associator(const Correspondence& x, const Correspondence& y,
                        const Correspondence& z) {
  const TensorProduct xy = tensor(x, y);
  const TensorProduct left = tensor(xy.space, z);
  const TensorProduct yz = tensor(y, z);
  const TensorProduct right = tensor(x, yz.space);
  CorrMorphism out(left.space, right.space);
  const std::size_t n = x.vertex_count();
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      const auto& entries = left.basis.block(v, w);
      for (std::size_t col = 0; col < entries.size(); ++col) {
        // ((x_p (x) y_q) (x) z_r) with x in (v,u1), y in (u1,u2), z in (u2,w).
        const Vertex u2 = entries[col].u;
        const auto& inner = xy.basis.block(v, u2)[entries[col].p];
        const Vertex u1 = inner.u;
        const std::size_t yz_index = yz.basis.index_of(u1, w, u2, inner.q, entries[col].q);
        const std::size_t row = right.basis.index_of(v, w, u1, inner.p, yz_index);
        out.block(v, w)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
      }
    }
  return out;
}

CorrMorphism fibred_product_iso(const DirectedGraph& left, const DirectedGraph& right) {
  const Correspondence xl = graph_correspondence(left);
  const Correspondence xr = graph_correspondence(right);
  const TensorProduct src = tensor(xl, xr);
  const FibredProductGraph fp = fibred_product(left, right);
  CorrMorphism out(src.space, graph_correspondence(fp.graph));
  for (std::size_t p = 0; p < fp.graph.edge_count(); ++p) {
    const Edge& a = left.edge(fp.left_index[p]);
    const Edge& b = right.edge(fp.right_index[p]);
    const std::size_t col = src.basis.index_of(a.range, b.source, a.source,
                                               left.block_position(fp.left_index[p]),
                                               right.block_position(fp.right_index[p]));
    out.block(a.range, b.source)(static_cast<Eigen::Index>(fp.graph.block_position(p)),
                                 static_cast<Eigen::Index>(col)) = 1.0;
  }
  return out;
}

}  // namespace kgc
