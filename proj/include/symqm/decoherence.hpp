#pragma once

// System → apparatus → environment entanglement chains and the exactly
// solvable qubit-environment coherence decay.
//
// Environment qubits couple to the system pointer through branch-conditioned
// rotations about y. A pointer value α rotates qubit k by exp(−i α g_k σ_y) in
// chain_entangle; in decoherence_factor the system qubit drives
// H = Σ_k g_k σ_z ⊗ σ_y^(k), so the two pointer branches rotate each qubit in
// opposite senses and the reduced coherence picks up one overlap factor per
// qubit.

#include <vector>

#include "symqm/state.hpp"

namespace symqm {

struct EnvironmentModel {
  /// g_k in radians per unit time; the number of qubits is couplings.size().
  std::vector<double> couplings;
  /// Per-qubit initial state; empty means |0⟩ for every qubit.
  std::vector<StateVector> initial;

  std::size_t size() const { return couplings.size(); }
  StateVector initial_state(std::size_t k) const;
  void validate() const;

  static EnvironmentModel uniform(std::size_t k, double g);
};

/// Coupling that turns the branch-conditioned rotation into a controlled shift
/// |0⟩ → |1⟩.
inline constexpr double kShiftCoupling = 1.5707963267948966;  // π/2

/// Largest environment handled by exact state-vector evolution.
inline constexpr std::size_t kMaxExactQubits = 12;

/// Σ s_α|α⟩⊗|a_0⟩ → Σ s_α|α⟩⊗|a_α⟩ via the controlled shift
/// |α, β⟩ → |α, β+α mod M⟩. Requires apparatus_dim ≥ psi.dim().
CompositeState entangle_with_apparatus(const StateVector& psi, Eigen::Index apparatus_dim);

/// entangle_with_apparatus followed by one branch-conditioned rotation per
/// environment qubit, controlled by the apparatus pointer. Factors are
/// [system, apparatus, qubit_1, …, qubit_k].
CompositeState chain_entangle(const StateVector& psi, Eigen::Index apparatus_dim,
                              const EnvironmentModel& env);

enum class EvolutionMode { Exact, Analytic };

struct CoherencePoint {
  double time = 0.0;
  /// |ρ_01| of the reduced system state; equal to `analytic` in Analytic mode.
  double coherence = 0.0;
  /// |a_0 a_1*| Π_k |cos 2g_k t − i sin 2g_k t ⟨σ_y⟩_k|.
  double analytic = 0.0;
};

/// Reduced coherence of a system qubit after evolving for time t under the
/// environment coupling. Exact mode evolves the full state vector and rejects
/// environments larger than kMaxExactQubits.
CoherencePoint decoherence_factor(const StateVector& psi, const EnvironmentModel& env, double t,
                                  EvolutionMode mode = EvolutionMode::Exact);

struct DecoherenceTrace {
  std::vector<double> times;
  std::vector<double> coherence;
  std::vector<double> analytic;
  std::size_t k_used = 0;
};

DecoherenceTrace decoherence_trace(const StateVector& psi, const EnvironmentModel& env,
                                   const std::vector<double>& times,
                                   EvolutionMode mode = EvolutionMode::Exact);

}  // namespace symqm
