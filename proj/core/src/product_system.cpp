#include "kgc/product_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgc {

Skeleton::Skeleton(std::vector<Correspondence> fibers, std::vector<CorrMorphism> braids)
    : fibers_(std::move(fibers)), braids_(std::move(braids)) {
  const std::size_t k = fibers_.size();
  if (k == 0) throw std::invalid_argument("skeleton needs rank >= 1");
  for (const auto& y : fibers_)
    if (y.vertex_count() != fibers_.front().vertex_count())
      throw std::invalid_argument("skeleton fibers must share the vertex set");
  if (braids_.size() != k * (k - 1) / 2)
    throw std::invalid_argument("skeleton needs one braid T_ij per pair i < j");
  inverse_braids_.reserve(braids_.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const CorrMorphism& t = braids_[pair_index(i, j, k)];
      const std::string name = "T " + std::to_string(i + 1) + " " + std::to_string(j + 1);
      if (t.source().dims() != fibers_[i].dims() * fibers_[j].dims() ||
          t.target().dims() != fibers_[j].dims() * fibers_[i].dims())
        throw std::invalid_argument(name + " must map Y_i (x) Y_j to Y_j (x) Y_i");
      if (!is_unitary(t))
        throw std::invalid_argument(name + " is not unitary (residual " +
                                    std::to_string(unitarity_residual(t)) + ")");
      inverse_braids_.push_back(adjoint(t));
    }
}

const CorrMorphism& Skeleton::braid(std::size_t i, std::size_t j) const {
  return braids_.at(pair_index(i, j, rank()));
}

const CorrMorphism& Skeleton::braid_between(std::size_t a, std::size_t b) const {
  if (a < b) return braids_.at(pair_index(a, b, rank()));
  if (b < a) return inverse_braids_.at(pair_index(b, a, rank()));
  throw std::invalid_argument("braid_between: colors must differ");
}

namespace {

Skeleton build_skeleton(const KGraphPresentation& presentation) {
  const std::size_t k = presentation.rank();
  std::vector<Correspondence> fibers;
  for (const auto& g : presentation.graphs()) fibers.push_back(graph_correspondence(g));
  std::vector<CorrMorphism> braids;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const DirectedGraph& gi = presentation.graph(i);
      const DirectedGraph& gj = presentation.graph(j);
      const TensorProduct src = tensor(fibers[i], fibers[j]);
      const TensorProduct dst = tensor(fibers[j], fibers[i]);
      const FibredProductGraph from = fibred_product(gi, gj);
      const FibredProductGraph to = fibred_product(gj, gi);
      const Square& sq = presentation.square(i, j);
      CorrMorphism t(src.space, dst.space);
      for (std::size_t p = 0; p < from.graph.edge_count(); ++p) {
        if (sq.image[p] == npos) throw std::invalid_argument("square is not a total map");
        const std::size_t e = from.left_index[p], f = from.right_index[p];
        const std::size_t q = sq.image[p];
        const std::size_t ft = to.left_index[q], et = to.right_index[q];
        const Vertex v = gi.edge(e).range, w = gj.edge(f).source;
        const std::size_t col = src.basis.index_of(v, w, gi.edge(e).source, gi.block_position(e),
                                                   gj.block_position(f));
        const std::size_t row = dst.basis.index_of(gj.edge(ft).range, gi.edge(et).source,
                                                   gj.edge(ft).source, gj.block_position(ft),
                                                   gi.block_position(et));
        t.block(v, w)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
      }
      braids.push_back(std::move(t));
    }
  return Skeleton(std::move(fibers), std::move(braids));
}

}  // namespace

Skeleton skeleton_from_kgraph(const KGraphPresentation& presentation) {
  const KGraphVerdict verdict = validate_kgraph(presentation);
  if (!verdict.valid)
    throw std::invalid_argument("invalid k-graph presentation: " +
                                verdict.violations.front().message);
  return build_skeleton(presentation);
}

Skeleton skeleton_from_squares_unchecked(const KGraphPresentation& presentation) {
  return build_skeleton(presentation);
}

HexagonVerdict hexagon_check(const Skeleton& skeleton, double tol) {
  HexagonVerdict verdict;
  const std::size_t k = skeleton.rank();
  if (k <= 2) {
    verdict.vacuous = true;
    return verdict;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        const Correspondence& yi = skeleton.fiber(i);
        const Correspondence& yj = skeleton.fiber(j);
        const Correspondence& yl = skeleton.fiber(l);
        const CorrMorphism& tij = skeleton.braid(i, j);
        const CorrMorphism& til = skeleton.braid(i, l);
        const CorrMorphism& tjl = skeleton.braid(j, l);
        const CorrMorphism id_i = identity(yi), id_j = identity(yj), id_l = identity(yl);

        // (T_jl (x) id_i)(id_j (x) T_il)(T_ij (x) id_l), left-nested throughout.
        CorrMorphism lhs = tensor_morphism(tij, id_l);
        lhs = compose(associator(yj, yi, yl), lhs);
        lhs = compose(tensor_morphism(id_j, til), lhs);
        lhs = compose(adjoint(associator(yj, yl, yi)), lhs);
        lhs = compose(tensor_morphism(tjl, id_i), lhs);

        // (id_l (x) T_ij)(T_il (x) id_j)(id_i (x) T_jl)
        CorrMorphism rhs = associator(yi, yj, yl);
        rhs = compose(tensor_morphism(id_i, tjl), rhs);
        rhs = compose(adjoint(associator(yi, yl, yj)), rhs);
        rhs = compose(tensor_morphism(til, id_j), rhs);
        rhs = compose(associator(yl, yi, yj), rhs);
        rhs = compose(tensor_morphism(id_l, tij), rhs);
        rhs = compose(adjoint(associator(yl, yj, yi)), rhs);

        const double r = max_abs_diff(lhs, rhs);
        verdict.triples.push_back({i, j, l, r});
        verdict.max_residual = std::max(verdict.max_residual, r);
        if (!(r < tol)) verdict.pass = false;
      }
  return verdict;
}

WordSpace word_space(const Skeleton& skeleton, const std::vector<std::size_t>& word) {
  std::vector<DimMatrix> dims;
  dims.reserve(word.size());
  for (std::size_t a : word) {
    if (a >= skeleton.rank()) throw std::invalid_argument("word letter exceeds the rank");
    dims.push_back(skeleton.fiber(a).dims());
  }
  return WordSpace(word, std::move(dims), skeleton.vertex_count());
}

FiberView fiber(const Skeleton& skeleton, const Degree& degree) {
  if (degree.size() != skeleton.rank())
    throw std::invalid_argument("degree must have one entry per generator");
  std::vector<std::size_t> word;
  for (std::size_t i = 0; i < degree.size(); ++i) word.insert(word.end(), degree[i], i);
  WordSpace basis = word_space(skeleton, word);
  return {degree, std::move(word), std::move(basis)};
}

std::vector<std::size_t> canonical_schedule(const std::vector<std::size_t>& word) {
  std::vector<std::size_t> w = word;
  std::vector<std::size_t> schedule;
  for (;;) {
    std::size_t pos = 0;
    while (pos + 1 < w.size() && w[pos] <= w[pos + 1]) ++pos;
    if (pos + 1 >= w.size()) return schedule;
    std::swap(w[pos], w[pos + 1]);
    schedule.push_back(pos);
  }
}

namespace {

// Applies the scheduled braids to `rows`, whose rows index `start`'s basis.
std::vector<Block> run_schedule(const Skeleton& skeleton, const WordSpace& start,
                                std::vector<Block> rows, std::span<const std::size_t> schedule) {
  std::vector<std::size_t> word = start.word();
  WordSpace current = start;
  for (std::size_t pos : schedule) {
    if (pos + 1 >= word.size() || word[pos] <= word[pos + 1])
      throw std::invalid_argument("schedule swaps an in-order pair at position " +
                                  std::to_string(pos));
    const CorrMorphism& b = skeleton.braid_between(word[pos], word[pos + 1]);
    std::swap(word[pos], word[pos + 1]);
    WordSpace next = word_space(skeleton, word);
    rows = apply_local(current, next, pos, b, rows);
    current = std::move(next);
  }
  if (!std::is_sorted(word.begin(), word.end()))
    throw std::invalid_argument("schedule does not sort the word");
  return rows;
}

}  // namespace

CorrMorphism normalize_word(const Skeleton& skeleton, const std::vector<std::size_t>& word,
                            std::span<const std::size_t> schedule) {
  const WordSpace start = word_space(skeleton, word);
  std::vector<std::size_t> sorted = word;
  std::sort(sorted.begin(), sorted.end());
  const WordSpace finish = word_space(skeleton, sorted);
  const CorrMorphism id = identity(start.space());
  return CorrMorphism(start.space(), finish.space(),
                      run_schedule(skeleton, start, id.blocks(), schedule));
}

CorrMorphism structure_map(const Skeleton& skeleton, const Degree& m, const Degree& n,
                           std::span<const std::size_t> schedule) {
  const FiberView fm = fiber(skeleton, m);
  const FiberView fn = fiber(skeleton, n);
  Degree sum(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) sum[i] = m[i] + n[i];
  const FiberView target = fiber(skeleton, sum);

  std::vector<std::size_t> concat = fm.word;
  concat.insert(concat.end(), fn.word.begin(), fn.word.end());
  const WordSpace joined = word_space(skeleton, concat);
  const TensorProduct source = tensor(fm.space(), fn.space());

  // X_m (x) X_n -> word space of word(m) word(n): splice the two paths.
  const std::size_t nv = skeleton.vertex_count();
  std::vector<Block> rows;
  rows.reserve(nv * nv);
  for (Vertex v = 0; v < nv; ++v)
    for (Vertex w = 0; w < nv; ++w) {
      const auto& entries = source.basis.block(v, w);
      Block b = Block::Zero(static_cast<Eigen::Index>(joined.paths(v, w).size()),
                            static_cast<Eigen::Index>(entries.size()));
      for (std::size_t c = 0; c < entries.size(); ++c) {
        const auto& left = fm.basis.paths(v, entries[c].u)[entries[c].p];
        const auto& right = fn.basis.paths(entries[c].u, w)[entries[c].q];
        WordSpace::Path path = left;
        path.vertices.insert(path.vertices.end(), right.vertices.begin() + 1,
                             right.vertices.end());
        path.indices.insert(path.indices.end(), right.indices.begin(), right.indices.end());
        b(static_cast<Eigen::Index>(joined.index_of(path)), static_cast<Eigen::Index>(c)) = 1.0;
      }
      rows.push_back(std::move(b));
    }
  return CorrMorphism(source.space, target.space(),
                      run_schedule(skeleton, joined, std::move(rows), schedule));
}

CorrMorphism structure_map(const Skeleton& skeleton, const Degree& m, const Degree& n) {
  std::vector<std::size_t> concat = fiber(skeleton, m).word;
  const auto tail = fiber(skeleton, n).word;
  concat.insert(concat.end(), tail.begin(), tail.end());
  const auto schedule = canonical_schedule(concat);
  return structure_map(skeleton, m, n, schedule);
}

bool has_omega(const Skeleton& skeleton) {
  return skeleton.rank() == 2 && skeleton.vertex_count() == 1 &&
         skeleton.fiber(0).dim(0, 0) == 1 && skeleton.fiber(1).dim(0, 0) == 1;
}

OmegaInvariant omega(const Skeleton& skeleton) {
  if (!has_omega(skeleton))
    throw std::invalid_argument(
        "omega is defined for rank 2 over one vertex with one-dimensional fibers");
  // The flip is the 1x1 identity in the normative bases.
  const Complex value = skeleton.braid(0, 1).block(0, 0)(0, 0);
  if (!(std::abs(std::abs(value) - 1.0) < 1e-12))
    throw std::domain_error("omega is not unimodular");
  return {value};
}

Skeleton omega_skeleton(Complex omega) {
  const Correspondence c(DimMatrix{{1}});
  return Skeleton({c, c}, {scalar_mul(omega, flip_map(c, c))});
}

Skeleton conjugate(const Skeleton& skeleton, const std::vector<CorrMorphism>& thetas) {
  const std::size_t k = skeleton.rank();
  if (thetas.size() != k) throw std::invalid_argument("conjugate: one unitary per fiber");
  std::vector<Correspondence> fibers;
  for (std::size_t i = 0; i < k; ++i) {
    if (thetas[i].source().dims() != skeleton.fiber(i).dims())
      throw std::invalid_argument("conjugate: unitary does not start at the fiber");
    fibers.push_back(thetas[i].target());
  }
  std::vector<CorrMorphism> braids;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      braids.push_back(compose(tensor_morphism(thetas[j], thetas[i]),
                               compose(skeleton.braid(i, j),
                                       adjoint(tensor_morphism(thetas[i], thetas[j])))));
  return Skeleton(std::move(fibers), std::move(braids));
}

double iso_residual(const Skeleton& from, const Skeleton& to,
                    const std::vector<CorrMorphism>& thetas) {
  double r = 0.0;
  const std::size_t k = from.rank();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const CorrMorphism a = compose(tensor_morphism(thetas[j], thetas[i]), from.braid(i, j));
      const CorrMorphism b = compose(to.braid(i, j), tensor_morphism(thetas[i], thetas[j]));
      r = std::max(r, max_abs_diff(a, b));
    }
  return r;
}

std::string to_string(IsoStatus status) {
  switch (status) {
    case IsoStatus::isomorphic: return "ISOMORPHIC";
    case IsoStatus::not_isomorphic: return "NOT_ISOMORPHIC";
    case IsoStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(RealizeStatus status) {
  switch (status) {
    case RealizeStatus::realizable: return "REALIZABLE";
    case RealizeStatus::not_realizable: return "NOT_REALIZABLE";
    case RealizeStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

}  // namespace kgc
