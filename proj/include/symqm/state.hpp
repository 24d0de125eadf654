#pragma once

// Projective state vectors, density operators and bipartite diagnostics.

#include <vector>

#include "symqm/linalg.hpp"
#include "symqm/rng.hpp"
#include "symqm/symmetry.hpp"

namespace symqm {

/// A normalized vector in C^d. Two states describing the same ray compare
/// equal through `same_ray`, not through amplitude equality.
class StateVector {
 public:
  /// Normalizes `raw`; throws std::invalid_argument on an empty or zero vector.
  static StateVector from_amplitudes(const CVector& raw);
  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// Born weights |a_i|² in the computational basis.
  RVector weights() const { return amplitudes_.cwiseAbs2(); }

 private:
  explicit StateVector(CVector a) : amplitudes_(std::move(a)) {}
  CVector amplitudes_;
};

inline constexpr double kRayTol = 1e-10;

/// |⟨a|b⟩| ≥ 1 − tol.
bool same_ray(const StateVector& a, const StateVector& b, double tol = kRayTol);

/// Rotation-invariant random state: complex normal amplitudes, normalized.
StateVector random_state(Eigen::Index dim, CounterRng& rng);

/// Hermitian, unit trace, eigenvalues ≥ −1e−10.
class DensityOperator {
 public:
  static DensityOperator from_matrix(CMatrix m);
  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  explicit DensityOperator(CMatrix m) : matrix_(std::move(m)) {}
  CMatrix matrix_;
};

/// A state on a product space; factor_dims multiply to state.dim().
struct CompositeState {
  StateVector state;
  std::vector<Eigen::Index> factor_dims;

  CompositeState(StateVector s, std::vector<Eigen::Index> dims);
};

CompositeState tensor_state(const StateVector& a, const StateVector& b);
/// Appends another factor to an existing composite.
CompositeState tensor_state(const CompositeState& a, const StateVector& b);

/// Normalized (|a⟩⊗|b⟩ + |b⟩⊗|a⟩). Throws on dim mismatch or when the
/// symmetrization vanishes.
CompositeState symmetrized_composite(const StateVector& a, const StateVector& b);

/// Reduced operator on factor `keep`, tracing out every other factor.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Eigen::Index>& factor_dims,
                              std::size_t keep);

/// Reduced operator of a pure composite on factor `keep`, computed directly
/// from the amplitudes without forming the full density matrix.
DensityOperator reduced_density(const CompositeState& psi, std::size_t keep);

/// tr(ρ²).
double purity(const DensityOperator& rho);

/// Singular values of the d_A × d_B amplitude matrix, descending, of length
/// min(d_A, d_B). Requires exactly two factors.
std::vector<double> schmidt_coefficients(const CompositeState& psi);

inline constexpr double kSeparableTol = 1e-9;

/// Schmidt rank 1: second coefficient below 1e−9.
bool is_separable_pure(const CompositeState& psi);

/// Re tr(ρA); throws if dims differ or the imaginary part exceeds 1e−10.
double expectation(const DensityOperator& rho, const HermitianOperator& a);

}  // namespace symqm
