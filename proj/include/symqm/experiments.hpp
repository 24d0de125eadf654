#pragma once

// Reproducible scenario runners. Each runner derives every random draw from
// the master seed via CounterRng::stream(seed, trial), aggregates with integer
// counts, and returns a ResultRecord whose summary is a pure function of its
// inputs.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symqm/decoherence.hpp"
#include "symqm/io.hpp"

namespace symqm {

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  Json parameters = Json::object();

  /// Throws ConfigError on unknown experiment names or trials < 1.
  void validate() const;
};

const std::vector<std::string>& experiment_names();

/// Reads {"experiment", "trials", "seed", "parameters"}; all keys optional.
ExperimentConfig experiment_config_from_json(const Json& j);

struct ResultRecord {
  std::string experiment;
  Json config;
  /// Documented per experiment: see README.
  Json summary = Json::object();
  std::optional<std::string> trials_csv;
  std::string csv_name = "trials.csv";
  double wall_time = 0.0;

  /// Deterministic summary document: experiment, config and summary, no timing.
  Json summary_json() const;
};

/// Prepares J_z = ±1/2 per `keep_sign` and measures spin along the axis at
/// `angle` from z in the x–z plane.
ResultRecord run_sequential_stern_gerlach(int keep_sign, double angle, std::uint64_t trials,
                                          std::uint64_t seed, bool record_trials = false);

/// Singlet correlations with a uniformly random choice of setting pair per
/// trial; S = E(a,b) − E(a,b') + E(a',b) + E(a',b').
ResultRecord run_epr(std::pair<double, double> alice, std::pair<double, double> bob, std::uint64_t trials,
                     std::uint64_t seed, bool record_trials = false);

/// Two-state universe: subsystem 1 in |0⟩, subsystem 2 at Bloch angle
/// `relative_angle` from it; the comparison observable is I ⊗ |ψ1⟩⟨ψ1|.
/// `ensemble` > 1 additionally runs that many independent universes.
ResultRecord run_two_particle_universe(double relative_angle, std::uint64_t seed, int repeats = 100,
                                       std::uint64_t ensemble = 1, bool record_trials = false);

/// |+z⟩ rotated about y by total_rotation in n equal steps with a J_z check
/// after each; survival means every check returned +1/2.
ResultRecord run_zeno(int n_checks, double total_rotation, std::uint64_t trials, std::uint64_t seed,
                      bool record_trials = false);

ResultRecord run_decoherence_demo(const StateVector& psi, const EnvironmentModel& env,
                                  const std::vector<double>& times);

/// Dispatches on config.experiment with defaults for missing parameters.
ResultRecord run_experiment(const ExperimentConfig& config, bool record_trials = false);

}  // namespace symqm
