#pragma once

// Pointer selection as a phase transition: a classical Ising model
//   H = −J Σ_⟨ij⟩ s_i s_j − h Σ_i s_i
// on an n × n periodic lattice, sampled with single-spin flips in row-major
// sweep order, plus exact enumeration for small lattices.
//
// Two acceptance rules are available. The Metropolis rule min(1, e^{−ΔE/T})
// flips every ΔE ≤ 0 spin with certainty, and under a fixed sweep order that
// makes the chain reducible on small tori: on 3 × 3, eight configurations are
// never visited and sample averages converge to the wrong values. The
// heat-bath rule 1 / (1 + e^{ΔE/T}) keeps every flip probability strictly
// inside (0, 1), so one sweep can reach any configuration. It is the default.

#include <cstdint>
#include <optional>
#include <vector>

#include "symqm/rng.hpp"

namespace symqm {

enum class InitialCondition { Random, AllUp, AllDown };
enum class UpdateRule { HeatBath, Metropolis };

struct GibbsConfig {
  int lattice = 16;
  double coupling = 1.0;
  double field = 0.0;
  double temperature = 1.0;
  int sweeps = 2000;
  int burn_in = 500;
  std::uint64_t seed = 0;
  InitialCondition initial = InitialCondition::Random;
  UpdateRule update = UpdateRule::HeatBath;

  /// n ≥ 2, J > 0, T > 0, sweeps > burn_in ≥ 0.
  void validate() const;
};

using SpinConfiguration = std::vector<std::int8_t>;

/// Single-spin-flip sampler state. Every site visit consumes exactly one uniform
/// from the acceptance stream, so trajectories depend only on the seed and the
/// initial spins.
class IsingSampler {
 public:
  explicit IsingSampler(const GibbsConfig& cfg);
  IsingSampler(const GibbsConfig& cfg, SpinConfiguration initial);

  void sweep();

  int side() const { return n_; }
  const SpinConfiguration& spins() const { return spins_; }
  /// (Σ s_i) / n².
  double magnetization() const;
  /// H / n².
  double energy_per_spin() const;
  /// Bit k set ⇔ spin k is up; only meaningful for n² ≤ 32.
  std::uint32_t configuration_index() const;
  std::uint64_t accepted() const { return accepted_; }

 private:
  void init_tables();
  int neighbor_sum(int site) const;

  GibbsConfig cfg_;
  int n_;
  SpinConfiguration spins_;
  std::vector<int> neighbors_;  // right, left, down, up for each site
  CounterRng rng_;
  long long spin_sum_ = 0;
  long long bond_sum_ = 0;
  // flip probability indexed by [(s+1)/2][(neighbor_sum+4)/2]
  double accept_[2][5] = {};
  std::uint64_t accepted_ = 0;
};

/// Energy per spin of an explicit configuration.
double ising_energy_per_spin(const SpinConfiguration& spins, int n, double coupling, double field);

struct GibbsTrajectory {
  std::vector<int> sweep;  // sweep number of each recorded sample
  std::vector<double> magnetization;
  std::vector<double> energy;  // per spin
  SpinConfiguration final_spins;
  std::uint64_t accepted = 0;
};

/// Runs `sweeps` sweeps and records one sample after each sweep numbered
/// burn_in + 1 … sweeps.
GibbsTrajectory gibbs_sample(const GibbsConfig& cfg);
GibbsTrajectory gibbs_sample(const GibbsConfig& cfg, SpinConfiguration initial);

struct PhaseReport {
  std::vector<double> magnetization_samples;
  double mean_abs_magnetization = 0.0;
  double mean_magnetization = 0.0;
  bool broken = false;
  int selected_sign = 0;
};

PhaseReport detect_symmetry_breaking(const std::vector<double>& magnetization, double threshold = 0.5);
PhaseReport detect_symmetry_breaking(const GibbsTrajectory& trajectory, double threshold = 0.5);

struct ExactGibbs {
  double mean_abs_magnetization = 0.0;
  double mean_magnetization = 0.0;
  double mean_energy = 0.0;  // per spin
  double log_partition_function = 0.0;
  double partition_function = 0.0;  // may overflow to +inf at very low T
  /// Boltzmann probability of each configuration, indexed like
  /// IsingSampler::configuration_index.
  std::vector<double> probabilities;
};

/// Exact Boltzmann sums over all 2^(n²) configurations; n ≤ 4.
ExactGibbs exact_gibbs_enumeration(const GibbsConfig& cfg);

/// Mean and batch-means standard error of a correlated series.
struct SampleStatistics {
  double mean = 0.0;
  double standard_error = 0.0;
};
SampleStatistics batch_statistics(const std::vector<double>& samples, std::size_t batches = 50);

struct SweepRow {
  double temperature = 0.0;
  double mean_abs_magnetization = 0.0;  // averaged over seeds
  double broken_fraction = 0.0;
  int seeds = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// Linear interpolation of the first downward crossing of broken_fraction = 0.5.
  std::optional<double> crossing_temperature;
};

/// For each temperature, runs `seeds_per_temperature` trajectories with seeds
/// base.seed + s, s = 0 … seeds−1.
SweepReport order_parameter_sweep(const GibbsConfig& base, const std::vector<double>& temperatures,
                                  int seeds_per_temperature, double threshold = 0.5);

}  // namespace symqm
