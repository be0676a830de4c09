#pragma once

#include <vector>

#include "kgc/correspondence.hpp"

namespace kgc {

/// The iterated tensor product Y_{a_1} (x) ... (x) Y_{a_L} with the
/// right-nested basis Y_{a_1} (x) (Y_{a_2} (x) (...)).
///
/// A basis vector of block (v, w) is a path v = u_0, u_1, .., u_L = w with a
/// basis index p_t of block (u_{t-1}, u_t) of Y_{a_t} at each step. Vectors
/// are ordered lexicographically by (u_1, p_1, u_2, p_2, .., p_L), which is
/// exactly the order produced by repeated tensor() from the right. The empty
/// word is c0(V) itself.
class WordSpace {
 public:
  struct Path {
    std::vector<Vertex> vertices;     // L + 1 entries
    std::vector<std::size_t> indices; // L entries
  };

  WordSpace(std::vector<std::size_t> word, std::vector<DimMatrix> letter_dims,
            std::size_t vertex_count);

  const std::vector<std::size_t>& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  std::size_t vertex_count() const noexcept { return n_; }
  const Correspondence& space() const noexcept { return space_; }
  const DimMatrix& letter_dims(std::size_t position) const { return letter_dims_.at(position); }

  const std::vector<Path>& paths(Vertex v, Vertex w) const { return paths_[v * n_ + w]; }
  std::size_t index_of(const Path& path) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> word_;
  std::vector<DimMatrix> letter_dims_;
  std::vector<DimMatrix> suffix_;  // suffix_[t] = dims of letters t..L-1
  Correspondence space_;
  std::vector<std::vector<Path>> paths_;
};

/// Row-wise action of id (x) B (x) id on a family of matrices whose rows are
/// indexed by `from`'s basis. B : Y_a (x) Y_b -> Y_b (x) Y_a acts on the
/// letters at `position` and `position + 1`; `to` must be `from`'s word with
/// those two letters exchanged. Columns are carried along untouched, so
/// applying a sequence of local moves to an identity matrix builds their
/// product without forming any full-size operator.
std::vector<Block> apply_local(const WordSpace& from, const WordSpace& to,
                               std::size_t position, const CorrMorphism& braid,
                               const std::vector<Block>& rows);

}  // namespace kgc
