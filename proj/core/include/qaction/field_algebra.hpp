#pragma once

#include <array>
#include <optional>

#include "qaction/algebra_exact.hpp"

// Exact verification of the finite matrix algebra behind the relativistic
// field classification: the Majorana gamma construction and its symmetry
// census, the obstruction to a Bose-type assignment, and the Kemmer-Duffin
// trilinear algebra for spin 0 (5-dim) and spin 1 (10-dim). Metric
// g = diag(-1, +1, +1, +1); the Clifford relation is
// {gamma^mu, gamma^nu}/2 = -g^{mu nu}.

namespace qaction {

inline constexpr std::array<int, 4> kMetricDiag{-1, 1, 1, 1};

struct AlgebraRep {
  std::size_t dimension = 0;
  std::vector<ExactMatrix> matrices;  // beta^mu or gamma^mu, index 0..3
};

// Four purely imaginary 4x4 gammas: gamma^0 antisymmetric, gamma^k
// symmetric, Clifford relation exact. matrices[4] is gamma^5 =
// gamma^0 gamma^1 gamma^2 gamma^3 (real, antisymmetric), appended for the
// census.
AlgebraRep build_majorana_gammas();

struct SymmetryCensus {
  std::size_t n_symmetric = 0;
  std::size_t n_antisymmetric = 0;
};

// Exact transpose classification of a set of matrices; a matrix that is
// neither symmetric nor antisymmetric signals a construction bug and throws.
SymmetryCensus symmetry_census(const std::vector<ExactMatrix>& matrices);

struct BoseObstructionReport {
  bool contradiction_found = false;
  // dimension of the space of real symmetric beta obeying the Bose
  // constraints after each anticommutator is imposed in turn
  std::vector<std::size_t> surviving_dimension;
  // the first constraint whose imposition empties the space (index of
  // gamma^k), together with a witness candidate and its nonvanishing
  // anticommutator with that gamma
  int blocking_gamma = -1;
  std::optional<ExactMatrix> witness_beta;
  std::optional<ExactMatrix> nonvanishing_anticommutator;
  bool fermi_assignment_consistent = false;  // beta = gamma^0 passes
  bool dimension_two_impossible = false;     // 2x2 cannot host the census
};

// A Bose-type assignment needs a real symmetric, invertible beta commuting
// with gamma^0 and anticommuting with the three symmetric gamma^k -- a
// fourth member of a mutually anticommuting symmetric set. The solve shows
// the constraints annihilate the symmetric space (only the antisymmetric
// gamma^0 direction survives without the symmetry demand), while the
// Fermi-type assignment beta = gamma^0 satisfies everything.
BoseObstructionReport check_bose_obstruction();

enum class KemmerDuffinSpin { zero, one };

// beta^mu from the first-order scalar-vector (5-dim) or vector-tensor
// (10-dim) field equations; real matrices satisfying
// b^mu b^sig b^nu + b^nu b^sig b^mu = -g^{mu sig} b^nu - g^{nu sig} b^mu.
AlgebraRep build_kemmer_duffin(KemmerDuffinSpin spin);

// Exhaustive check of the trilinear relation; returns the first offending
// (mu, sigma, nu) triple or nullopt when every identity holds.
std::optional<std::array<int, 3>> kemmer_duffin_defect(const AlgebraRep& rep);

// Fully symmetrized cubic including the metric terms; must vanish exactly.
bool symmetrized_cubic_vanishes(const AlgebraRep& rep);

struct FourMomentum {
  std::array<Rational, 4> p;  // covariant components p_mu
  Rational invariant() const;  // p_mu p^mu with the metric above
};

// Minimal-equation residual M^3 - (p_mu p^mu) M for M = i beta^mu p_mu;
// exactly zero for the spin-0 representation.
ExactMatrix klein_gordon_residual(const AlgebraRep& rep, const FourMomentum& p);

// Rational boost in the (t, x) plane with cosh = 5/4, sinh = 3/4; satisfies
// L^T g L = g exactly. Returns the transformed covariant components.
FourMomentum rational_boost_tx(const FourMomentum& p);

// A^{mu dagger} = -A^mu for A^mu = i alpha^mu, alpha^0 = 1,
// alpha^k = gamma^0 gamma^k (exact check).
bool dirac_kinematic_antihermitian(const AlgebraRep& gammas);

}  // namespace qaction
