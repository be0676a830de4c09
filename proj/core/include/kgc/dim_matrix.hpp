#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace kgc {

using Vertex = std::size_t;

/// Square matrix of nonnegative integers indexed by (range, source) vertex
/// pairs. Used both for graph adjacency and for correspondence block
/// dimensions.
class DimMatrix {
 public:
  DimMatrix() = default;
  explicit DimMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  DimMatrix(std::initializer_list<std::initializer_list<std::size_t>> rows);

  static DimMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t operator()(Vertex v, Vertex w) const { return data_[v * n_ + w]; }
  std::size_t& operator()(Vertex v, Vertex w) { return data_[v * n_ + w]; }

  std::size_t total() const;
  std::size_t row_sum(Vertex v) const;
  std::size_t column_sum(Vertex w) const;

  bool is_identity() const;
  bool is_diagonal() const;
  bool is_permutation() const;

  friend DimMatrix operator*(const DimMatrix& a, const DimMatrix& b);
  friend bool operator==(const DimMatrix&, const DimMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> data_;
};

}  // namespace kgc
