#pragma once

// Uniqueness of the Born exponent: among power laws f(x) = x^β every one is
// multiplicative, f(x)f(y) = f(xy), but only β = 1 keeps Σ_i f(|a_i|²) = 1 for
// every normalized state.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "symqm/measurement.hpp"
#include "symqm/state.hpp"

namespace symqm {

class PowerLawCandidate {
 public:
  /// Throws std::invalid_argument unless beta > 0.
  explicit PowerLawCandidate(double beta);

  double beta() const { return beta_; }
  double operator()(double x) const { return std::pow(x, beta_); }

 private:
  double beta_;
};

using ProbabilityMap = std::function<double(double)>;

/// Σ_i f(|a_i|²).
double candidate_total(const StateVector& psi, const PowerLawCandidate& f);
double candidate_total(const StateVector& psi, const ProbabilityMap& f);

/// max over samples of |f(x)f(y) − f(xy)|. Samples must lie in (0, 1].
double multiplicativity_violation(const PowerLawCandidate& f,
                                  const std::vector<std::pair<double, double>>& samples);
double multiplicativity_violation(const ProbabilityMap& f,
                                  const std::vector<std::pair<double, double>>& samples);

inline constexpr double kNormalizationTol = 1e-9;

struct ExponentScanReport {
  std::vector<double> betas;
  std::vector<double> max_normalization_violation;  // per beta, max over states
  std::vector<double> multiplicativity_violation;   // per beta, over weight pairs of the corpus
  std::vector<double> passing;                       // betas with violation ≤ 1e−9
  /// True when no state has two nonzero amplitudes, so every β passes trivially.
  bool degenerate = false;
};

/// Requires non-empty `states` and `betas`.
ExponentScanReport exponent_scan(const std::vector<StateVector>& states, const std::vector<double>& betas);

/// The grid used by the CLI and acceptance tests.
std::vector<double> default_beta_grid();

/// `count` random states with dimensions cycling through 2 … 6.
std::vector<StateVector> random_state_corpus(std::size_t count, std::uint64_t seed);

struct CompositeConsistency {
  CompositeState composite;
  /// max_{i,j} |f(|a_i b_j|²) − f(|a_i|²) f(|b_j|²)|
  double violation = 0.0;
};

/// Builds the symmetrized composite of two independently prepared copies and
/// compares the joint probability map against the product of marginals.
CompositeConsistency composite_consistency_check(const StateVector& a, const StateVector& b,
                                                 const PowerLawCandidate& f);
CompositeConsistency composite_consistency_check(const StateVector& a, const StateVector& b,
                                                 const ProbabilityMap& f);

struct EmpiricalBornResult {
  std::vector<double> eigenvalues;
  std::vector<double> expected;
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  double chi_square = 0.0;
  /// Number of positive-probability outcomes minus one.
  int degrees_of_freedom = 0;
};

inline constexpr std::uint64_t kMinBornTrials = 10'000;

/// Measures fresh copies of `psi` `trials` times; trial i uses
/// CounterRng::stream(seed, i). Throws if trials < 10^4.
EmpiricalBornResult empirical_born_test(const StateVector& psi, const Observable& a, std::uint64_t trials,
                                        std::uint64_t seed);

/// Pearson χ² of counts against probabilities, skipping zero-probability cells.
double chi_square_statistic(const std::vector<std::uint64_t>& counts, const std::vector<double>& probabilities);

}  // namespace symqm
