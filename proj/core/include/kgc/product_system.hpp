#pragma once

// Product systems over N^k of finite-dimensional c0(V)-correspondences,
// handled through their skeletons: generator fibers Y_i = X_{e_i} and
// unitary braids T_ij : Y_i (x) Y_j -> Y_j (x) Y_i for i < j. The full system
// is never materialised; X_m is realised in normal form as the word
// 1^{m_1} 2^{m_2} .. k^{m_k} and the multiplication maps are assembled from
// the braids on demand.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgc/correspondence.hpp"
#include "kgc/graphs.hpp"
#include "kgc/word_space.hpp"

namespace kgc {

using Degree = std::vector<std::size_t>;

class Skeleton {
 public:
  /// braids are indexed by pair_index(i, j, k). Throws std::invalid_argument
  /// unless every T_ij maps Y_i (x) Y_j onto Y_j (x) Y_i and is unitary to
  /// kStructuralTolerance. The hexagonal equations are not enforced here;
  /// see hexagon_check.
  Skeleton(std::vector<Correspondence> fibers, std::vector<CorrMorphism> braids);

  std::size_t rank() const noexcept { return fibers_.size(); }
  std::size_t vertex_count() const { return fibers_.front().vertex_count(); }
  const Correspondence& fiber(std::size_t i) const { return fibers_.at(i); }
  const std::vector<Correspondence>& fibers() const noexcept { return fibers_; }
  const CorrMorphism& braid(std::size_t i, std::size_t j) const;
  const std::vector<CorrMorphism>& braids() const noexcept { return braids_; }

  /// Y_a (x) Y_b -> Y_b (x) Y_a: T_ab for a < b, T_ba^{-1} = T_ba^* for a > b.
  const CorrMorphism& braid_between(std::size_t a, std::size_t b) const;

 private:
  std::vector<Correspondence> fibers_;
  std::vector<CorrMorphism> braids_;
  std::vector<CorrMorphism> inverse_braids_;
};

/// Y_i = X_{E_i}; T_ij sends chi_e (x) chi_f to chi_f~ (x) chi_e~ where
/// (f~, e~) = theta_ij(e, f). Throws std::invalid_argument if the
/// presentation fails validate_kgraph.
Skeleton skeleton_from_kgraph(const KGraphPresentation& presentation);

/// Same construction without validation; every square must still be a
/// total map. Only meant for studying invalid presentations.
Skeleton skeleton_from_squares_unchecked(const KGraphPresentation& presentation);

struct HexagonResidual {
  std::size_t i, j, l;
  double residual;
};

struct HexagonVerdict {
  bool pass = true;
  bool vacuous = false;  // k <= 2
  double max_residual = 0.0;
  std::vector<HexagonResidual> triples;
};

/// Assembles both sides of
///   (T_jl (x) id_i)(id_j (x) T_il)(T_ij (x) id_l)
///     = (id_l (x) T_ij)(T_il (x) id_j)(id_i (x) T_jl)
/// as maps (Y_i (x) Y_j) (x) Y_l -> (Y_l (x) Y_j) (x) Y_i and compares them
/// entrywise for every i < j < l.
HexagonVerdict hexagon_check(const Skeleton& skeleton, double tol = kStructuralTolerance);

struct FiberView {
  Degree degree;
  std::vector<std::size_t> word;  // ascending generator word, 0-based colors
  WordSpace basis;

  const Correspondence& space() const noexcept { return basis.space(); }
};

FiberView fiber(const Skeleton& skeleton, const Degree& degree);

/// Word space of an arbitrary (not necessarily sorted) generator word.
WordSpace word_space(const Skeleton& skeleton, const std::vector<std::size_t>& word);

/// Positions of adjacent swaps performed by stable bubble sort, always the
/// leftmost out-of-order pair first.
std::vector<std::size_t> canonical_schedule(const std::vector<std::size_t>& word);

/// The unitary from the word space of `word` onto its sorted word space, built
/// by applying braid_between at each scheduled position in turn. Throws if a
/// step swaps an in-order pair or the schedule does not end sorted.
CorrMorphism normalize_word(const Skeleton& skeleton, const std::vector<std::size_t>& word,
                            std::span<const std::size_t> schedule);

/// beta_{m,n} : X_m (x) X_n -> X_{m+n}: reindex the tensor basis onto the
/// concatenated word, then sort it with the canonical schedule.
CorrMorphism structure_map(const Skeleton& skeleton, const Degree& m, const Degree& n);

/// As above, with an explicit sorting schedule for the concatenated word.
CorrMorphism structure_map(const Skeleton& skeleton, const Degree& m, const Degree& n,
                           std::span<const std::size_t> schedule);

struct OmegaInvariant {
  Complex value;
};

/// True for rank 2 over one vertex with both fibers one-dimensional.
bool has_omega(const Skeleton& skeleton);

/// T_12 = omega * flip. Throws std::invalid_argument if !has_omega, and
/// std::domain_error if |omega| differs from 1 by 1e-12 or more.
OmegaInvariant omega(const Skeleton& skeleton);

/// The skeleton with Y_1 = Y_2 = C and T_12 = omega * flip.
Skeleton omega_skeleton(Complex omega);

/// The skeleton transported along unitaries theta_i : Y_i -> W_i:
/// R_ij = (theta_j (x) theta_i) T_ij (theta_i (x) theta_j)^*.
Skeleton conjugate(const Skeleton& skeleton, const std::vector<CorrMorphism>& thetas);

/// max over i < j of |(theta_j (x) theta_i) T_ij - R_ij (theta_i (x) theta_j)|_max.
double iso_residual(const Skeleton& from, const Skeleton& to,
                    const std::vector<CorrMorphism>& thetas);

enum class IsoStatus { isomorphic, not_isomorphic, unknown };

struct IsoVerdict {
  IsoStatus status = IsoStatus::unknown;
  std::optional<std::vector<CorrMorphism>> witness;
  double residual = 0.0;
  std::string reason;
  std::size_t restarts_used = 0;
};

struct IsoSearchOptions {
  std::size_t restarts = 20;
  std::size_t max_iter = 500;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

/// Decides dims mismatches and the one-dimensional rank-2 case exactly, and
/// otherwise searches for unitaries theta_i satisfying
/// (theta_j (x) theta_i) T_ij = R_ij (theta_i (x) theta_j). The search sweeps
/// the fibers, replacing each theta_i by the polar factor of the gradient of
/// sum_ij Re tr[((theta_j (x) theta_i) T_ij)^* R_ij (theta_i (x) theta_j)]
/// with the other thetas held fixed. The first restart starts from the
/// identity, later ones from Haar-random unitaries. A failed search yields
/// UNKNOWN, never NOT_ISOMORPHIC.
IsoVerdict skeleton_iso_search(const Skeleton& from, const Skeleton& to,
                               const IsoSearchOptions& options = {});

enum class RealizeStatus { realizable, not_realizable, unknown };

struct RealizabilityVerdict {
  RealizeStatus status = RealizeStatus::unknown;
  std::optional<KGraphPresentation> witness;
  std::size_t candidates_examined = 0;
  double residual = 0.0;
  std::string reason;
};

struct RealizeOptions {
  std::size_t max_candidates = 1'000'000;
  std::uint64_t seed = 0;
  IsoSearchOptions search{};
};

/// The graph with dims(v, w) edges of range v and source w, in block order,
/// labelled with a per-color prefix (e, f, g, ...) and a running index.
DirectedGraph canonical_graph(const DimMatrix& dims, std::size_t color);

/// Is the product system with this skeleton isomorphic to a k-graph
/// correspondence? Rank 1 always is; the one-dimensional rank-2 case is
/// decided by omega = 1; otherwise presentations over the canonical graphs
/// are enumerated and each candidate skeleton is compared by
/// skeleton_iso_search.
RealizabilityVerdict realizability(const Skeleton& skeleton, const RealizeOptions& options = {});

std::string to_string(IsoStatus status);
std::string to_string(RealizeStatus status);

}  // namespace kgc
