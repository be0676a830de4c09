#include "kgc/random.hpp"

#include <cmath>
#include <numbers>

namespace kgc {

Block haar_unitary(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Block z(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<Block> qr(z);
  Block q = qr.householderQ() * Block::Identity(n, n);
  const Block& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < n; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

CorrMorphism random_unitary(const Correspondence& x, Rng& rng) {
  CorrMorphism u(x, x);
  for (Vertex v = 0; v < x.vertex_count(); ++v)
    for (Vertex w = 0; w < x.vertex_count(); ++w) u.block(v, w) = haar_unitary(x.dim(v, w), rng);
  return u;
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

}  // namespace kgc
