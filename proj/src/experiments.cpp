#include "symqm/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>

namespace symqm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

double param_double(const Json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  require(p.at(key).is_number(), std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

long long param_int(const Json& p, const char* key, long long fallback) {
  if (!p.contains(key)) return fallback;
  require(p.at(key).is_number_integer(), std::string("parameter '") + key + "' must be an integer");
  return p.at(key).get<long long>();
}

std::pair<double, double> param_pair(const Json& p, const char* key, std::pair<double, double> fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  require(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(),
          std::string("parameter '") + key + "' must be a pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> param_list(const Json& p, const char* key) {
  const auto& v = p.at(key);
  require(v.is_array(), std::string("parameter '") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    require(x.is_number(), std::string("parameter '") + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

int param_sign(const Json& p, const char* key, int fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "+" || s == "+z" || s == "up") return 1;
    if (s == "-" || s == "-z" || s == "down") return -1;
  } else if (v.is_number()) {
    const double x = v.get<double>();
    if (x == 1.0) return 1;
    if (x == -1.0) return -1;
  }
  throw ConfigError(std::string("parameter '") + key + "' must be +1/-1 or \"+\"/\"-\"");
}

void require_finite(double x, const char* what) {
  require(std::isfinite(x), std::string(what) + " must be finite");
}

Observable spin_axis_observable(double angle) {
  const auto rep = spin_representation(1);
  const UnitaryOperator rotation = exponentiate(rep.generators[1], angle);
  return Observable(conjugate_observable(rep.generators[2], rotation));
}

// Eigenvalue sign of outcome k of a spin-1/2 observable (ascending order).
int outcome_sign(const Observable& a, std::size_t k) { return a.eigenspaces()[k].value > 0 ? 1 : -1; }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"stern-gerlach", "epr", "two-particle-universe", "zeno",
                                              "decoherence"};
  return names;
}

void ExperimentConfig::validate() const {
  const auto& names = experiment_names();
  require(std::find(names.begin(), names.end(), experiment) != names.end(),
          "unknown experiment '" + experiment + "'");
  require(trials >= 1, "trials must be >= 1");
  require(parameters.is_object(), "parameters must be a JSON object");
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  require(j.is_object(), "experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  if (j.contains("parameters")) cfg.parameters = j.at("parameters");
  return cfg;
}

Json ResultRecord::summary_json() const {
  return Json{{"experiment", experiment}, {"config", config}, {"summary", summary}};
}

ResultRecord run_sequential_stern_gerlach(int keep_sign, double angle, std::uint64_t trials, std::uint64_t seed,
                                          bool record_trials) {
  require(keep_sign == 1 || keep_sign == -1, "stern-gerlach: keep must be +1 or -1");
  require_finite(angle, "stern-gerlach: angle");
  require(trials >= 1, "stern-gerlach: trials must be >= 1");
  const auto start = Clock::now();

  const Observable axis = spin_axis_observable(angle);
  const StateVector prepared = StateVector::basis(2, keep_sign > 0 ? 0 : 1);
  std::uint64_t plus = 0;
  std::optional<CsvWriter> csv;
  if (record_trials) csv.emplace(std::vector<std::string>{"trial", "outcome"});
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = CounterRng::stream(seed, t);
    StateVector psi = prepared;
    const int sign = outcome_sign(axis, measure_in_place(psi, axis, rng));
    if (sign > 0) ++plus;
    if (csv) csv->row({static_cast<double>(t), static_cast<double>(sign)});
  }

  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const double expected = keep_sign > 0 ? c * c : s * s;
  const double n = static_cast<double>(trials);

  ResultRecord r;
  r.experiment = "stern-gerlach";
  r.config = Json{{"keep", keep_sign}, {"angle", angle}, {"trials", trials}, {"seed", seed}};
  r.summary = Json{{"count_plus", plus},
                   {"count_minus", trials - plus},
                   {"frequency_plus", static_cast<double>(plus) / n},
                   {"frequency_minus", static_cast<double>(trials - plus) / n},
                   {"expected_plus", expected},
                   {"sigma", std::sqrt(expected * (1.0 - expected) / n)}};
  if (csv) r.trials_csv = csv->str();
  r.wall_time = seconds_since(start);
  return r;
}

ResultRecord run_epr(std::pair<double, double> alice, std::pair<double, double> bob, std::uint64_t trials,
                     std::uint64_t seed, bool record_trials) {
  for (double x : {alice.first, alice.second, bob.first, bob.second}) require_finite(x, "epr: angles");
  require(trials >= 1, "epr: trials must be >= 1");
  const auto start = Clock::now();

  const std::array<double, 2> alice_angles{alice.first, alice.second};
  const std::array<double, 2> bob_angles{bob.first, bob.second};
  const std::vector<Eigen::Index> dims{2, 2};
  std::array<Observable, 2> alice_obs{Observable(lift(spin_axis_observable(alice.first).op(), dims, 0)),
                                      Observable(lift(spin_axis_observable(alice.second).op(), dims, 0))};
  std::array<Observable, 2> bob_obs{Observable(lift(spin_axis_observable(bob.first).op(), dims, 1)),
                                    Observable(lift(spin_axis_observable(bob.second).op(), dims, 1))};

  CVector singlet(4);
  singlet << 0, 1, -1, 0;
  const StateVector prepared = StateVector::from_amplitudes(singlet);

  std::array<std::array<std::uint64_t, 2>, 2> count{};
  std::array<std::array<std::int64_t, 2>, 2> product_sum{};
  std::array<std::array<std::uint64_t, 2>, 2> alice_plus{};  // [a][b]
  std::array<std::array<std::uint64_t, 2>, 2> bob_plus{};
  std::optional<CsvWriter> csv;
  if (record_trials) csv.emplace(std::vector<std::string>{"trial", "alice_setting", "bob_setting", "alice", "bob"});

  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = CounterRng::stream(seed, t);
    const auto setting = rng.below(4);
    const std::size_t a = setting / 2;
    const std::size_t b = setting % 2;
    StateVector psi = prepared;
    const int sa = outcome_sign(alice_obs[a], measure_in_place(psi, alice_obs[a], rng));
    const int sb = outcome_sign(bob_obs[b], measure_in_place(psi, bob_obs[b], rng));
    ++count[a][b];
    product_sum[a][b] += sa * sb;
    if (sa > 0) ++alice_plus[a][b];
    if (sb > 0) ++bob_plus[a][b];
    if (csv) csv->row({static_cast<double>(t), double(a), double(b), double(sa), double(sb)});
  }

  const char* names[2][2] = {{"a_b", "a_bp"}, {"ap_b", "ap_bp"}};
  Json correlations = Json::object();
  Json exact = Json::object();
  Json counts = Json::object();
  std::array<std::array<double, 2>, 2> e{};
  double s_var = 0.0;
  bool same_axis_exact = true;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const double n = static_cast<double>(count[a][b]);
      e[a][b] = n > 0 ? static_cast<double>(product_sum[a][b]) / n : 0.0;
      const double e_exact = -std::cos(alice_angles[a] - bob_angles[b]);
      correlations[names[a][b]] = e[a][b];
      exact[names[a][b]] = e_exact;
      counts[names[a][b]] = count[a][b];
      if (n > 0) s_var += (1.0 - e_exact * e_exact) / n;
      if (alice_angles[a] == bob_angles[b] && product_sum[a][b] != -static_cast<std::int64_t>(count[a][b])) {
        same_axis_exact = false;
      }
    }
  }
  const double s = e[0][0] - e[0][1] + e[1][0] + e[1][1];
  const double s_exact = exact["a_b"].get<double>() - exact["a_bp"].get<double>() + exact["ap_b"].get<double>() +
                         exact["ap_bp"].get<double>();

  // No-signaling: each station's marginal conditioned on the remote setting.
  Json alice_marg = Json::array();
  Json bob_marg = Json::array();
  double worst_sigma = 0.0;
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t a = 0; a < 2; ++a) {
      const double n = static_cast<double>(count[a][b]);
      if (n == 0) continue;
      const double fa = static_cast<double>(alice_plus[a][b]) / n;
      const double fb = static_cast<double>(bob_plus[a][b]) / n;
      const double sigma = std::sqrt(0.25 / n);
      worst_sigma = std::max({worst_sigma, std::abs(fa - 0.5) / sigma, std::abs(fb - 0.5) / sigma});
    }
  }
  for (std::size_t b = 0; b < 2; ++b) {
    const double n = static_cast<double>(count[0][b] + count[1][b]);
    alice_marg.push_back(n > 0 ? static_cast<double>(alice_plus[0][b] + alice_plus[1][b]) / n : 0.0);
  }
  for (std::size_t a = 0; a < 2; ++a) {
    const double n = static_cast<double>(count[a][0] + count[a][1]);
    bob_marg.push_back(n > 0 ? static_cast<double>(bob_plus[a][0] + bob_plus[a][1]) / n : 0.0);
  }

  ResultRecord r;
  r.experiment = "epr";
  r.config = Json{{"alice", {alice.first, alice.second}}, {"bob", {bob.first, bob.second}},
                  {"trials", trials}, {"seed", seed}};
  r.summary = Json{{"correlations", correlations},
                   {"exact_correlations", exact},
                   {"counts", counts},
                   {"chsh_s", s},
                   {"chsh_exact", s_exact},
                   {"chsh_sigma", std::sqrt(s_var)},
                   {"same_axis_perfect_anticorrelation", same_axis_exact},
                   {"alice_plus_given_bob_setting", alice_marg},
                   {"bob_plus_given_alice_setting", bob_marg},
                   {"max_marginal_deviation_sigma", worst_sigma}};
  if (csv) r.trials_csv = csv->str();
  r.wall_time = seconds_since(start);
  return r;
}

ResultRecord run_two_particle_universe(double relative_angle, std::uint64_t seed, int repeats,
                                       std::uint64_t ensemble, bool record_trials) {
  require_finite(relative_angle, "two-particle-universe: relative angle");
  require(repeats >= 0, "two-particle-universe: repeats must be >= 0");
  require(ensemble >= 1, "two-particle-universe: ensemble must be >= 1");
  const auto start = Clock::now();

  const StateVector psi1 = StateVector::basis(2, 0);
  CVector v2(2);
  v2 << std::cos(relative_angle / 2.0), std::sin(relative_angle / 2.0);
  const StateVector psi2 = StateVector::from_amplitudes(v2);
  const CompositeState universe = tensor_state(psi1, psi2);

  // The observer compares subsystem 2 against its own state.
  const HermitianOperator own(psi1.amplitudes() * psi1.amplitudes().adjoint(), "compare");
  const Observable comparison(lift(own, universe.factor_dims, 1));
  const auto same_index = static_cast<std::size_t>(comparison.eigenspaces().size() - 1);  // eigenvalue 1

  auto run_universe = [&](CounterRng rng, std::vector<std::size_t>* repeat_outcomes, bool& classical) {
    StateVector state = universe.state;
    const std::size_t first = measure_in_place(state, comparison, rng);
    const auto after = born_probabilities(state, comparison);
    classical = std::abs(after.probabilities[first] - 1.0) <= 1e-10;
    bool identical = true;
    for (int k = 0; k < repeats; ++k) {
      const std::size_t again = measure_in_place(state, comparison, rng);
      if (repeat_outcomes) repeat_outcomes->push_back(again);
      identical = identical && again == first;
    }
    return std::pair{first, identical};
  };

  std::vector<std::size_t> repeat_outcomes;
  bool classical = false;
  const auto [first, identical] = run_universe(CounterRng::stream(seed, 0), &repeat_outcomes, classical);

  const double p_same = born_probabilities(universe.state, comparison).probabilities[same_index];
  ResultRecord r;
  r.experiment = "two-particle-universe";
  r.config = Json{{"relative_angle", relative_angle}, {"seed", seed}, {"repeats", repeats}, {"ensemble", ensemble}};
  r.summary = Json{{"first_outcome", first == same_index ? "same" : "opposite"},
                   {"probability_same", p_same},
                   {"repeats_identical", identical},
                   {"classical_after_first", classical},
                   // a single universe admits no frequency; only an ensemble does
                   {"frequency_requires_ensemble", true}};
  if (ensemble > 1) {
    std::uint64_t same = 0;
    bool all_identical = true;
    for (std::uint64_t u = 0; u < ensemble; ++u) {
      bool c = false;
      const auto [o, ok] = run_universe(CounterRng::stream(seed, u), nullptr, c);
      if (o == same_index) ++same;
      all_identical = all_identical && ok && c;
    }
    r.summary["ensemble_frequency_same"] = static_cast<double>(same) / static_cast<double>(ensemble);
    r.summary["ensemble_sigma"] = std::sqrt(p_same * (1.0 - p_same) / static_cast<double>(ensemble));
    r.summary["ensemble_all_repeats_identical"] = all_identical;
  }
  if (record_trials) {
    CsvWriter csv({"repeat", "outcome_same"});
    csv.row({0.0, first == same_index ? 1.0 : 0.0});
    for (std::size_t k = 0; k < repeat_outcomes.size(); ++k) {
      csv.row({static_cast<double>(k + 1), repeat_outcomes[k] == same_index ? 1.0 : 0.0});
    }
    r.trials_csv = csv.str();
  }
  r.wall_time = seconds_since(start);
  return r;
}

ResultRecord run_zeno(int n_checks, double total_rotation, std::uint64_t trials, std::uint64_t seed,
                      bool record_trials) {
  require(n_checks >= 1, "zeno: n_checks must be >= 1");
  require_finite(total_rotation, "zeno: total rotation");
  require(trials >= 1, "zeno: trials must be >= 1");
  const auto start = Clock::now();

  const auto rep = spin_representation(1);
  const Observable jz(rep.generators[2]);
  const UnitaryOperator step = exponentiate(rep.generators[1], total_rotation / n_checks);
  const StateVector up = StateVector::basis(2, 0);
  const std::size_t up_index = 1;  // ascending: −1/2, +1/2

  std::uint64_t survived = 0;
  std::optional<CsvWriter> csv;
  if (record_trials) csv.emplace(std::vector<std::string>{"trial", "survived", "checks_passed"});
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = CounterRng::stream(seed, t);
    StateVector psi = up;
    int passed = 0;
    for (; passed < n_checks; ++passed) {
      psi = apply_symmetry(psi, step);
      if (measure_in_place(psi, jz, rng) != up_index) break;
    }
    const bool ok = passed == n_checks;
    if (ok) ++survived;
    if (csv) csv->row({static_cast<double>(t), ok ? 1.0 : 0.0, static_cast<double>(passed)});
  }

  const double per_step = std::cos(total_rotation / (2.0 * n_checks));
  const double analytic = std::pow(per_step * per_step, n_checks);
  const double n = static_cast<double>(trials);
  ResultRecord r;
  r.experiment = "zeno";
  r.config = Json{{"n_checks", n_checks}, {"total_rotation", total_rotation}, {"trials", trials}, {"seed", seed}};
  r.summary = Json{{"survival", static_cast<double>(survived) / n},
                   {"survived", survived},
                   {"analytic_survival", analytic},
                   {"sigma", std::sqrt(analytic * (1.0 - analytic) / n)}};
  if (csv) r.trials_csv = csv->str();
  r.wall_time = seconds_since(start);
  return r;
}

ResultRecord run_decoherence_demo(const StateVector& psi, const EnvironmentModel& env,
                                  const std::vector<double>& times) {
  require(!times.empty(), "decoherence: times must be non-empty");
  for (double t : times) require_finite(t, "decoherence: time");
  const auto start = Clock::now();
  const EvolutionMode mode = env.size() <= kMaxExactQubits ? EvolutionMode::Exact : EvolutionMode::Analytic;
  const DecoherenceTrace trace = decoherence_trace(psi, env, times, mode);

  const double initial = std::abs(psi[0] * std::conj(psi[1]));
  double deviation = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    deviation = std::max(deviation, std::abs(trace.coherence[i] - trace.analytic[i]));
  }
  // late window: second half of the supplied times
  double late_max = 0.0;
  double late_sum = 0.0;
  const std::size_t late_begin = times.size() / 2;
  for (std::size_t i = late_begin; i < times.size(); ++i) {
    const double ratio = initial > 0 ? trace.coherence[i] / initial : 0.0;
    late_max = std::max(late_max, ratio);
    late_sum += ratio;
  }
  const double late_mean = late_sum / static_cast<double>(times.size() - late_begin);

  CsvWriter csv({"t", "coherence", "analytic"});
  for (std::size_t i = 0; i < times.size(); ++i) csv.row({trace.times[i], trace.coherence[i], trace.analytic[i]});

  ResultRecord r;
  r.experiment = "decoherence";
  r.config = Json{{"state", to_json(psi)}, {"couplings", env.couplings}, {"times", times}};
  r.summary = Json{{"k", env.size()},
                   {"mode", mode == EvolutionMode::Exact ? "exact" : "analytic"},
                   {"initial_coherence", initial},
                   {"max_abs_deviation", deviation},
                   {"late_time_max_ratio", late_max},
                   {"late_time_mean_ratio", late_mean},
                   {"final_coherence", trace.coherence.back()}};
  r.trials_csv = csv.str();
  r.csv_name = "trace.csv";
  r.wall_time = seconds_since(start);
  return r;
}

ResultRecord run_experiment(const ExperimentConfig& config, bool record_trials) {
  config.validate();
  const Json& p = config.parameters;
  const double pi = std::numbers::pi;
  ResultRecord r;
  if (config.experiment == "stern-gerlach") {
    r = run_sequential_stern_gerlach(param_sign(p, "keep", 1), param_double(p, "angle", pi / 2), config.trials,
                                     config.seed, record_trials);
  } else if (config.experiment == "epr") {
    r = run_epr(param_pair(p, "alice", {0.0, pi / 2}), param_pair(p, "bob", {pi / 4, 3 * pi / 4}), config.trials,
                config.seed, record_trials);
  } else if (config.experiment == "two-particle-universe") {
    const long long repeats = param_int(p, "repeats", 100);
    require(repeats >= 0 && repeats <= 1'000'000, "two-particle-universe: repeats out of range");
    r = run_two_particle_universe(param_double(p, "relative_angle", pi / 3), config.seed,
                                  static_cast<int>(repeats), config.trials, record_trials);
  } else if (config.experiment == "zeno") {
    const long long n = param_int(p, "n_checks", 16);
    require(n >= 1 && n <= 1'000'000, "zeno: n_checks out of range");
    r = run_zeno(static_cast<int>(n), param_double(p, "total_rotation", pi), config.trials, config.seed,
                 record_trials);
  } else {
    StateVector psi = p.contains("state") ? state_from_json(p.at("state"))
                                          : StateVector::from_amplitudes(CVector::Ones(2));
    require(psi.dim() == 2, "decoherence: state must be a qubit");
    EnvironmentModel env;
    if (p.contains("couplings")) {
      env.couplings = param_list(p, "couplings");
    } else {
      const long long k = param_int(p, "k", 8);
      require(k >= 0 && k <= 64, "decoherence: k out of range");
      auto rng = CounterRng::stream(config.seed, 0);
      for (long long i = 0; i < k; ++i) env.couplings.push_back(0.2 + rng.uniform());
    }
    try {
      env.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    std::vector<double> times;
    if (p.contains("times")) {
      times = param_list(p, "times");
    } else {
      const double t_max = param_double(p, "t_max", 50.0);
      const long long steps = param_int(p, "steps", 200);
      require(steps >= 1 && steps <= 1'000'000, "decoherence: steps out of range");
      for (long long i = 0; i <= steps; ++i) times.push_back(t_max * static_cast<double>(i) / static_cast<double>(steps));
    }
    r = run_decoherence_demo(psi, env, times);
  }
  r.config["parameters"] = p;
  return r;
}

}  // namespace symqm
