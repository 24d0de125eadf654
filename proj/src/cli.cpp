#include "symqm/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <optional>

#include "symqm/experiments.hpp"

namespace symqm {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "results";
};

fs::path run_dir(const CommonOptions& o, const std::string& name, std::uint64_t seed) {
  return fs::path(o.out) / (name + "-" + std::to_string(seed));
}

void write_timing(const fs::path& dir, double seconds) {
  write_json_file(dir / "timing.json", Json{{"wall_time", seconds}});
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const Json& config) {
  if (flag) return *flag;
  if (config.is_object() && config.contains("seed")) {
    try {
      return config.at("seed").get<std::uint64_t>();
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("seed: ") + e.what());
    }
  }
  throw ConfigError("--seed is required for stochastic runs (or set \"seed\" in the config)");
}

int run_experiment_command(const CommonOptions& o, const std::string& name, std::optional<std::uint64_t> trials,
                           bool csv, std::ostream& out) {
  Json file = Json::object();
  if (!o.config.empty()) file = read_json_file(o.config);
  ExperimentConfig cfg = experiment_config_from_json(file);
  if (!cfg.experiment.empty() && cfg.experiment != name) {
    throw ConfigError("config is for experiment '" + cfg.experiment + "', not '" + name + "'");
  }
  cfg.experiment = name;
  cfg.seed = resolve_seed(o.seed, file);
  if (trials) cfg.trials = *trials;
  else if (!file.contains("trials")) cfg.trials = name == "two-particle-universe" ? 1 : 100000;
  cfg.validate();

  const ResultRecord result = run_experiment(cfg, csv);
  const fs::path dir = run_dir(o, name, cfg.seed);
  write_json_file(dir / "summary.json", result.summary_json());
  if (result.trials_csv) write_text_file(dir / result.csv_name, *result.trials_csv);
  write_timing(dir, result.wall_time);
  out << (dir / "summary.json").string() << "\n";
  return kExitOk;
}

int run_born_scan(const CommonOptions& o, std::size_t states, std::ostream& out) {
  if (states < 1) throw ConfigError("--states must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = o.seed.value_or(0);
  const auto corpus = random_state_corpus(states, seed);
  const auto report = exponent_scan(corpus, default_beta_grid());

  const fs::path dir = run_dir(o, "born-scan", seed);
  Json summary{{"experiment", "born-scan"},
               {"config", {{"states", states}, {"seed", seed}}},
               {"summary", to_json(report)}};
  write_json_file(dir / "summary.json", summary);
  CsvWriter csv({"beta", "normalization_violation", "multiplicativity_violation"});
  for (std::size_t i = 0; i < report.betas.size(); ++i) {
    csv.row({report.betas[i], report.max_normalization_violation[i], report.multiplicativity_violation[i]});
  }
  write_text_file(dir / "scan.csv", csv.str());
  write_timing(dir, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  out << (dir / "summary.json").string() << "\n";
  return kExitOk;
}

int run_gibbs(const CommonOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Json file = read_json_file(o.config);
  GibbsConfig cfg = gibbs_config_from_json(file);
  cfg.seed = resolve_seed(o.seed, file);
  const auto trajectory = gibbs_sample(cfg);
  const auto phase = detect_symmetry_breaking(trajectory);

  const fs::path dir = run_dir(o, "gibbs", cfg.seed);
  Json summary{{"experiment", "gibbs"}, {"config", to_json(cfg)}, {"summary", to_json(phase)}};
  summary["summary"]["accepted_flips"] = trajectory.accepted;
  write_json_file(dir / "summary.json", summary);
  CsvWriter csv({"sweep", "m", "E"});
  for (std::size_t i = 0; i < trajectory.sweep.size(); ++i) {
    csv.row({static_cast<double>(trajectory.sweep[i]), trajectory.magnetization[i], trajectory.energy[i]});
  }
  write_text_file(dir / "trajectory.csv", csv.str());
  write_timing(dir, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  out << (dir / "summary.json").string() << "\n";
  return kExitOk;
}

int run_sweep(const CommonOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Json file = read_json_file(o.config);
  GibbsConfig cfg = gibbs_config_from_json(file);
  cfg.seed = resolve_seed(o.seed, file);
  if (!file.contains("temperatures") || !file.at("temperatures").is_array() || file.at("temperatures").empty()) {
    throw ConfigError("sweep config needs a non-empty 'temperatures' array");
  }
  std::vector<double> temperatures;
  int seeds = 50;
  double threshold = 0.5;
  try {
    temperatures = file.at("temperatures").get<std::vector<double>>();
    if (file.contains("seeds_per_temperature")) seeds = file.at("seeds_per_temperature").get<int>();
    if (file.contains("threshold")) threshold = file.at("threshold").get<double>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("sweep config: ") + e.what());
  }
  if (seeds < 1) throw ConfigError("seeds_per_temperature must be >= 1");
  for (double t : temperatures) {
    if (!(t > 0.0)) throw ConfigError("temperatures must be positive");
  }
  const auto report = order_parameter_sweep(cfg, temperatures, seeds, threshold);

  const fs::path dir = run_dir(o, "sweep", cfg.seed);
  Json config = to_json(cfg);
  config["temperatures"] = temperatures;
  config["seeds_per_temperature"] = seeds;
  config["threshold"] = threshold;
  write_json_file(dir / "summary.json", Json{{"experiment", "sweep"}, {"config", config}, {"summary", to_json(report)}});
  CsvWriter csv({"temperature", "mean_abs_magnetization", "broken_fraction"});
  for (const auto& row : report.rows) csv.row({row.temperature, row.mean_abs_magnetization, row.broken_fraction});
  write_text_file(dir / "sweep.csv", csv.str());
  write_timing(dir, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  out << (dir / "summary.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"symqm: symmetry-based quantum measurement simulations"};
  app.require_subcommand(1);

  CommonOptions exp_opts;
  std::string exp_name;
  std::optional<std::uint64_t> exp_trials;
  bool exp_csv = false;
  auto* experiment = app.add_subcommand("experiment", "Run a canned scenario");
  experiment->add_option("name", exp_name, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--config", exp_opts.config, "JSON experiment config");
  experiment->add_option("--seed", exp_opts.seed, "Master seed");
  experiment->add_option("--trials", exp_trials, "Number of trials");
  experiment->add_option("--out", exp_opts.out, "Output directory");
  experiment->add_flag("--csv", exp_csv, "Write per-trial CSV");

  CommonOptions scan_opts;
  std::size_t scan_states = 50;
  auto* scan = app.add_subcommand("born-scan", "Scan power-law exponents for normalization");
  scan->add_option("--states", scan_states, "Number of random states");
  scan->add_option("--seed", scan_opts.seed, "Seed for the state corpus (default 0)");
  scan->add_option("--out", scan_opts.out, "Output directory");

  CommonOptions gibbs_opts;
  auto* gibbs = app.add_subcommand("gibbs", "Run one single-spin-flip trajectory");
  gibbs->add_option("--config", gibbs_opts.config, "JSON Gibbs config")->required();
  gibbs->add_option("--seed", gibbs_opts.seed, "Seed (overrides config)");
  gibbs->add_option("--out", gibbs_opts.out, "Output directory");

  CommonOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Order-parameter sweep over temperatures");
  sweep->add_option("--config", sweep_opts.config, "JSON sweep config")->required();
  sweep->add_option("--seed", sweep_opts.seed, "Base seed (overrides config)");
  sweep->add_option("--out", sweep_opts.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitConfigError;
  }

  try {
    if (*experiment) return run_experiment_command(exp_opts, exp_name, exp_trials, exp_csv, out);
    if (*scan) return run_born_scan(scan_opts, scan_states, out);
    if (*gibbs) return run_gibbs(gibbs_opts, out);
    if (*sweep) return run_sweep(sweep_opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitConfigError;
}

}  // namespace symqm
