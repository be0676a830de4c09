#include <cmath>
#include <limits>

#include "kgc/product_system.hpp"
#include "kgc/random.hpp"

namespace kgc {

namespace {

constexpr double kOmegaTolerance = 1e-9;
constexpr double kStagnation = 1e-10;

// Sum of squared Frobenius norms and the max-entry norm of the defects
// (theta_j (x) theta_i) T_ij - R_ij (theta_i (x) theta_j).
struct Defect {
  double squared = 0.0;
  double max_entry = 0.0;
};

Defect defect(const Skeleton& from, const Skeleton& to, const std::vector<CorrMorphism>& thetas) {
  Defect d;
  const std::size_t k = from.rank();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const CorrMorphism a = compose(tensor_morphism(thetas[j], thetas[i]), from.braid(i, j));
      const CorrMorphism b = compose(to.braid(i, j), tensor_morphism(thetas[i], thetas[j]));
      for (std::size_t x = 0; x < a.blocks().size(); ++x) {
        if (a.blocks()[x].size() == 0) continue;
        const Block diff = a.blocks()[x] - b.blocks()[x];
        d.squared += diff.squaredNorm();
        d.max_entry = std::max(d.max_entry, diff.cwiseAbs().maxCoeff());
      }
    }
  return d;
}

// m approximates other (x) X. Adds the contraction of m against `other` over
// the first tensor slot to the gradient blocks of X.
void contract_first_slot(const CorrMorphism& m, const CorrMorphism& other,
                         const DimMatrix& dims_x, std::vector<Block>& grad) {
  const std::size_t n = m.vertex_count();
  const TensorBasisMap basis(other.source().dims(), dims_x);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w)
      for (Vertex u = 0; u < n; ++u) {
        const Block& l = other.block(v, u);
        const auto x = static_cast<Eigen::Index>(dims_x(u, w));
        if (l.size() == 0 || x == 0) continue;
        const auto off = static_cast<Eigen::Index>(basis.offset(v, w, u));
        const Block& mb = m.block(v, w);
        Block& g = grad[u * n + w];
        for (Eigen::Index pr = 0; pr < l.rows(); ++pr)
          for (Eigen::Index pc = 0; pc < l.cols(); ++pc)
            g += std::conj(l(pr, pc)) * mb.block(off + pr * x, off + pc * x, x, x);
      }
}

// m approximates X (x) other; contraction over the second slot.
void contract_second_slot(const CorrMorphism& m, const CorrMorphism& other,
                          const DimMatrix& dims_x, std::vector<Block>& grad) {
  const std::size_t n = m.vertex_count();
  const TensorBasisMap basis(dims_x, other.source().dims());
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w)
      for (Vertex u = 0; u < n; ++u) {
        const auto x = static_cast<Eigen::Index>(dims_x(v, u));
        const Block& r = other.block(u, w);
        if (r.size() == 0 || x == 0) continue;
        const auto off = static_cast<Eigen::Index>(basis.offset(v, w, u));
        const auto d = r.rows();
        const Block& mb = m.block(v, w);
        Block& g = grad[v * n + u];
        for (Eigen::Index pr = 0; pr < x; ++pr)
          for (Eigen::Index pc = 0; pc < x; ++pc)
            g(pr, pc) += (r.conjugate().cwiseProduct(mb.block(off + pr * d, off + pc * d, d, d)))
                             .sum();
      }
}

Block polar_factor(const Block& g) {
  Eigen::JacobiSVD<Block> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// One sweep over the fibers. Each theta_a moves to the polar factor of the
// gradient of the trace objective, shifted by the current theta_a so that the
// step never decreases the objective.
void sweep(const Skeleton& from, const Skeleton& to, std::vector<CorrMorphism>& thetas) {
  const std::size_t k = from.rank();
  const std::size_t n = from.vertex_count();
  for (std::size_t a = 0; a < k; ++a) {
    const DimMatrix& dims = from.fiber(a).dims();
    std::vector<Block> grad;
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w) {
        const auto d = static_cast<Eigen::Index>(dims(v, w));
        grad.push_back(Block::Zero(d, d));
      }
    std::size_t terms = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        if (a != i && a != j) continue;
        ++terms;
        const CorrMorphism& t = from.braid(i, j);
        const CorrMorphism& r = to.braid(i, j);
        // Both approximate theta_j (x) theta_i resp. theta_i (x) theta_j.
        const CorrMorphism m1 =
            compose(r, compose(tensor_morphism(thetas[i], thetas[j]), adjoint(t)));
        const CorrMorphism m2 =
            compose(adjoint(r), compose(tensor_morphism(thetas[j], thetas[i]), t));
        if (a == i) {
          contract_first_slot(m1, thetas[j], dims, grad);
          contract_second_slot(m2, thetas[j], dims, grad);
        } else {
          contract_second_slot(m1, thetas[i], dims, grad);
          contract_first_slot(m2, thetas[i], dims, grad);
        }
      }
    if (terms == 0) continue;
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w) {
        Block& theta = thetas[a].block(v, w);
        if (theta.size() == 0) continue;
        const Block g = grad[v * n + w] + (2.0 * static_cast<double>(terms)) * theta;
        theta = polar_factor(g);
      }
  }
}

}  // namespace

IsoVerdict skeleton_iso_search(const Skeleton& from, const Skeleton& to,
                               const IsoSearchOptions& options) {
  IsoVerdict verdict;
  if (from.rank() != to.rank()) {
    verdict.status = IsoStatus::not_isomorphic;
    verdict.reason = "ranks differ";
    return verdict;
  }
  if (from.vertex_count() != to.vertex_count()) {
    verdict.status = IsoStatus::not_isomorphic;
    verdict.reason = "vertex counts differ";
    return verdict;
  }
  const std::size_t k = from.rank();
  for (std::size_t i = 0; i < k; ++i)
    if (from.fiber(i).dims() != to.fiber(i).dims()) {
      verdict.status = IsoStatus::not_isomorphic;
      verdict.reason = "dimensions of Y" + std::to_string(i + 1) + " differ";
      return verdict;
    }

  auto identity_thetas = [&] {
    std::vector<CorrMorphism> thetas;
    for (std::size_t i = 0; i < k; ++i) {
      CorrMorphism t(from.fiber(i), to.fiber(i));
      for (auto v = Vertex{0}; v < from.vertex_count(); ++v)
        for (auto w = Vertex{0}; w < from.vertex_count(); ++w) t.block(v, w).setIdentity();
      thetas.push_back(std::move(t));
    }
    return thetas;
  };

  if (has_omega(from) && has_omega(to)) {
    const Complex a = omega(from).value, b = omega(to).value;
    const double gap = std::abs(a - b);
    if (gap < kOmegaTolerance) {
      verdict.status = IsoStatus::isomorphic;
      verdict.witness = identity_thetas();
      verdict.residual = iso_residual(from, to, *verdict.witness);
      verdict.reason = "omega invariants agree";
    } else {
      verdict.status = IsoStatus::not_isomorphic;
      verdict.residual = gap;
      verdict.reason = "omega invariants differ";
    }
    return verdict;
  }

  Rng rng(options.seed);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    verdict.restarts_used = restart + 1;
    std::vector<CorrMorphism> thetas;
    if (restart == 0) {
      thetas = identity_thetas();
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        CorrMorphism t = random_unitary(from.fiber(i), rng);
        thetas.push_back(CorrMorphism(from.fiber(i), to.fiber(i), t.blocks()));
      }
    }
    Defect d = defect(from, to, thetas);
    for (std::size_t it = 0; it < options.max_iter && !(d.max_entry < options.tol); ++it) {
      sweep(from, to, thetas);
      const Defect next = defect(from, to, thetas);
      const bool stalled = d.squared - next.squared < kStagnation * d.squared;
      d = next;
      if (stalled) break;
    }
    best = std::min(best, d.max_entry);
    if (d.max_entry < options.tol) {
      // Re-check the witness from scratch before reporting it.
      const double r = iso_residual(from, to, thetas);
      bool unitary = true;
      for (const auto& t : thetas) unitary = unitary && is_unitary(t);
      if (r < options.tol && unitary) {
        verdict.status = IsoStatus::isomorphic;
        verdict.residual = r;
        verdict.witness = std::move(thetas);
        verdict.reason = "search converged";
        return verdict;
      }
    }
  }
  verdict.status = IsoStatus::unknown;
  verdict.residual = best;
  verdict.reason = "no restart reached the tolerance";
  return verdict;
}

}  // namespace kgc
