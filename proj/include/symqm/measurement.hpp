#pragma once

// Projective measurement: Born probabilities over degenerate eigenspaces,
// sampled Lüders collapse and active symmetry transformations.

#include <cstdint>
#include <string>
#include <vector>

#include "symqm/rng.hpp"
#include "symqm/state.hpp"
#include "symqm/symmetry.hpp"

namespace symqm {

/// An observable together with its grouped spectral decomposition. The
/// eigendecomposition is done once at construction; measuring is then a pair
/// of small matrix-vector products.
class Observable {
 public:
  explicit Observable(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const std::string& label() const { return op_.label(); }
  Eigen::Index dim() const { return op_.dim(); }
  const std::vector<Eigenspace>& eigenspaces() const { return spaces_; }
  std::vector<double> eigenvalues() const;

 private:
  HermitianOperator op_;
  std::vector<Eigenspace> spaces_;
};

/// Probabilities below this are clamped to zero before renormalizing.
inline constexpr double kProbabilityFloor = 1e-15;

struct BornDistribution {
  std::vector<double> eigenvalues;    // ascending, one per eigenspace
  std::vector<double> probabilities;  // ⟨ψ|P_λ|ψ⟩, sum 1
};

BornDistribution born_probabilities(const StateVector& psi, const Observable& a);
BornDistribution born_probabilities(const StateVector& psi, const HermitianOperator& a);

/// Inverse-CDF selection with half-open intervals [c_{k−1}, c_k); the lowest
/// index wins ties and zero-probability outcomes are never chosen.
std::size_t sample_outcome(const std::vector<double>& probabilities, double u);

struct MeasurementRecord {
  std::string observable_label;
  std::vector<double> eigenvalues;
  std::vector<double> probabilities;
  std::size_t outcome_index = 0;
  StateVector pre_state;
  StateVector post_state;
  /// Key of the generator stream that produced the outcome.
  std::uint64_t seed = 0;

  double outcome() const { return eigenvalues.at(outcome_index); }
};

/// Samples an outcome and collapses onto P_λ|ψ⟩ / ‖P_λ|ψ⟩‖. Consumes one
/// uniform draw from `rng`.
MeasurementRecord measure(const StateVector& psi, const Observable& a, CounterRng& rng);
MeasurementRecord measure(const StateVector& psi, const HermitianOperator& a, CounterRng& rng);

/// Lightweight form used in trial loops: returns the outcome index and
/// replaces `psi` with the collapsed state.
std::size_t measure_in_place(StateVector& psi, const Observable& a, CounterRng& rng);

/// U|ψ⟩.
StateVector apply_symmetry(const StateVector& psi, const UnitaryOperator& u);

/// U A U†.
HermitianOperator conjugate_observable(const HermitianOperator& a, const UnitaryOperator& u);

/// Measures `record.post_state` again with the same observable. Throws
/// std::invalid_argument when the observable label differs from the record.
MeasurementRecord repeat_measure(const MeasurementRecord& record, const Observable& a,
                                 CounterRng& rng);

}  // namespace symqm
