#include "kgc/dim_matrix.hpp"

#include <stdexcept>

namespace kgc {

DimMatrix::DimMatrix(std::initializer_list<std::initializer_list<std::size_t>> rows)
    : DimMatrix(rows.size()) {
  std::size_t v = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("DimMatrix: rows must form a square matrix");
    std::size_t w = 0;
    for (std::size_t x : row) (*this)(v, w++) = x;
    ++v;
  }
}

DimMatrix DimMatrix::identity(std::size_t n) {
  DimMatrix m(n);
  for (std::size_t v = 0; v < n; ++v) m(v, v) = 1;
  return m;
}

std::size_t DimMatrix::total() const {
  std::size_t t = 0;
  for (std::size_t x : data_) t += x;
  return t;
}

std::size_t DimMatrix::row_sum(Vertex v) const {
  std::size_t t = 0;
  for (std::size_t w = 0; w < n_; ++w) t += (*this)(v, w);
  return t;
}

std::size_t DimMatrix::column_sum(Vertex w) const {
  std::size_t t = 0;
  for (std::size_t v = 0; v < n_; ++v) t += (*this)(v, w);
  return t;
}

bool DimMatrix::is_identity() const { return *this == identity(n_); }

bool DimMatrix::is_diagonal() const {
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t w = 0; w < n_; ++w)
      if (v != w && (*this)(v, w) != 0) return false;
  return true;
}

bool DimMatrix::is_permutation() const {
  if (n_ == 0) return false;
  for (std::size_t v = 0; v < n_; ++v) {
    for (std::size_t w = 0; w < n_; ++w)
      if ((*this)(v, w) > 1) return false;
    if (row_sum(v) != 1 || column_sum(v) != 1) return false;
  }
  return true;
}

DimMatrix operator*(const DimMatrix& a, const DimMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("DimMatrix product: size mismatch");
  DimMatrix c(a.n_);
  for (std::size_t v = 0; v < a.n_; ++v)
    for (std::size_t u = 0; u < a.n_; ++u) {
      const std::size_t x = a(v, u);
      if (x == 0) continue;
      for (std::size_t w = 0; w < a.n_; ++w) c(v, w) += x * b(u, w);
    }
  return c;
}

}  // namespace kgc
