#include "kgc/word_space.hpp"

#include <stdexcept>

namespace kgc {

namespace {

void extend_paths(const std::vector<DimMatrix>& dims, std::size_t n, WordSpace::Path& prefix,
                  Vertex w, std::vector<WordSpace::Path>& out) {
  const std::size_t t = prefix.indices.size();
  const Vertex here = prefix.vertices.back();
  if (t == dims.size()) {
    if (here == w) out.push_back(prefix);
    return;
  }
  const bool last = t + 1 == dims.size();
  for (Vertex u = 0; u < n; ++u) {
    if (last && u != w) continue;
    const std::size_t d = dims[t](here, u);
    for (std::size_t p = 0; p < d; ++p) {
      prefix.vertices.push_back(u);
      prefix.indices.push_back(p);
      extend_paths(dims, n, prefix, w, out);
      prefix.vertices.pop_back();
      prefix.indices.pop_back();
    }
  }
}

DimMatrix product_from(const std::vector<DimMatrix>& dims, std::size_t t, std::size_t n) {
  DimMatrix acc = DimMatrix::identity(n);
  for (std::size_t s = dims.size(); s-- > t;) acc = dims[s] * acc;
  return acc;
}

}  // namespace

WordSpace::WordSpace(std::vector<std::size_t> word, std::vector<DimMatrix> letter_dims,
                     std::size_t vertex_count)
    : n_(vertex_count),
      word_(std::move(word)),
      letter_dims_(std::move(letter_dims)),
      space_(product_from(letter_dims_, 0, vertex_count)) {
  if (word_.size() != letter_dims_.size())
    throw std::invalid_argument("WordSpace: one dims matrix per letter");
  suffix_.reserve(word_.size() + 1);
  for (std::size_t t = 0; t <= word_.size(); ++t) suffix_.push_back(product_from(letter_dims_, t, n_));
  paths_.resize(n_ * n_);
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex w = 0; w < n_; ++w) {
      Path prefix{{v}, {}};
      extend_paths(letter_dims_, n_, prefix, w, paths_[v * n_ + w]);
    }
}

std::size_t WordSpace::index_of(const Path& path) const {
  const Vertex w = path.vertices.back();
  std::size_t index = 0;
  for (std::size_t t = 0; t < word_.size(); ++t) {
    const Vertex here = path.vertices[t];
    const Vertex next = path.vertices[t + 1];
    const DimMatrix& rest = suffix_[t + 1];
    for (Vertex u = 0; u < next; ++u) index += letter_dims_[t](here, u) * rest(u, w);
    index += path.indices[t] * rest(next, w);
  }
  return index;
}

std::vector<Block> apply_local(const WordSpace& from, const WordSpace& to,
                               std::size_t position, const CorrMorphism& braid,
                               const std::vector<Block>& rows) {
  const std::size_t n = from.vertex_count();
  if (position + 1 >= from.length()) throw std::invalid_argument("apply_local: bad position");
  const DimMatrix& da = from.letter_dims(position);
  const DimMatrix& db = from.letter_dims(position + 1);
  if (to.letter_dims(position) != db || to.letter_dims(position + 1) != da)
    throw std::invalid_argument("apply_local: target word must swap the two letters");
  const TensorBasisMap src_pair(da, db);
  const TensorBasisMap dst_pair(db, da);

  std::vector<Block> out;
  out.reserve(rows.size());
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      const Block& in = rows[v * n + w];
      const auto& paths = from.paths(v, w);
      if (static_cast<std::size_t>(in.rows()) != paths.size())
        throw std::invalid_argument("apply_local: row count does not match the word space");
      Block res = Block::Zero(static_cast<Eigen::Index>(to.paths(v, w).size()), in.cols());
      for (std::size_t r = 0; r < paths.size(); ++r) {
        const auto& path = paths[r];
        const Vertex a = path.vertices[position];
        const Vertex mid = path.vertices[position + 1];
        const Vertex b = path.vertices[position + 2];
        const std::size_t col =
            src_pair.index_of(a, b, mid, path.indices[position], path.indices[position + 1]);
        const Block& local = braid.block(a, b);
        const auto& targets = dst_pair.block(a, b);
        WordSpace::Path moved = path;
        for (std::size_t t = 0; t < targets.size(); ++t) {
          const Complex c = local(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(col));
          if (c == Complex(0.0, 0.0)) continue;
          moved.vertices[position + 1] = targets[t].u;
          moved.indices[position] = targets[t].p;
          moved.indices[position + 1] = targets[t].q;
          res.row(static_cast<Eigen::Index>(to.index_of(moved))) +=
              c * in.row(static_cast<Eigen::Index>(r));
        }
      }
      out.push_back(std::move(res));
    }
  return out;
}

}  // namespace kgc
