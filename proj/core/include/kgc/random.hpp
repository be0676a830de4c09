#pragma once

#include <cstdint>
#include <random>

#include "kgc/correspondence.hpp"

namespace kgc {

using Rng = std::mt19937_64;

/// Haar-distributed d x d unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
Block haar_unitary(std::size_t d, Rng& rng);

/// Block-wise Haar unitary automorphism of x.
CorrMorphism random_unitary(const Correspondence& x, Rng& rng);

/// Uniform point on the unit circle.
Complex random_phase(Rng& rng);

}  // namespace kgc
