#include "symqm/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symqm {

namespace {

constexpr std::uint64_t kInitialStream = 0;
constexpr std::uint64_t kAcceptanceStream = 1;

SpinConfiguration initial_spins(const GibbsConfig& cfg) {
  const std::size_t sites = static_cast<std::size_t>(cfg.lattice) * cfg.lattice;
  switch (cfg.initial) {
    case InitialCondition::AllUp:
      return SpinConfiguration(sites, 1);
    case InitialCondition::AllDown:
      return SpinConfiguration(sites, -1);
    case InitialCondition::Random:
      break;
  }
  auto rng = CounterRng::stream(cfg.seed, kInitialStream);
  SpinConfiguration spins(sites);
  for (auto& s : spins) s = rng.uniform() < 0.5 ? 1 : -1;
  return spins;
}

}  // namespace

void GibbsConfig::validate() const {
  if (lattice < 2) throw std::invalid_argument("GibbsConfig: lattice side must be >= 2");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("GibbsConfig: coupling must be positive");
  }
  if (!std::isfinite(field)) throw std::invalid_argument("GibbsConfig: field must be finite");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("GibbsConfig: temperature must be positive");
  }
  if (burn_in < 0 || sweeps <= burn_in) {
    throw std::invalid_argument("GibbsConfig: need sweeps > burn_in >= 0");
  }
}

IsingSampler::IsingSampler(const GibbsConfig& cfg)
    : IsingSampler(cfg, (cfg.validate(), initial_spins(cfg))) {}

IsingSampler::IsingSampler(const GibbsConfig& cfg, SpinConfiguration initial)
    : cfg_(cfg), n_(cfg.lattice), spins_(std::move(initial)),
      rng_(CounterRng::stream(cfg.seed, kAcceptanceStream)) {
  cfg_.validate();
  if (spins_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("IsingSampler: initial configuration has wrong size");
  }
  for (auto s : spins_) {
    if (s != 1 && s != -1) throw std::invalid_argument("IsingSampler: spins must be +1 or -1");
    spin_sum_ += s;
  }
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      const int s = spins_[r * n_ + c];
      bond_sum_ += s * spins_[r * n_ + (c + 1) % n_];
      bond_sum_ += s * spins_[((r + 1) % n_) * n_ + c];
    }
  }
  init_tables();
}

void IsingSampler::init_tables() {
  neighbors_.resize(4 * spins_.size());
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      int* nb = &neighbors_[4 * static_cast<std::size_t>(r * n_ + c)];
      nb[0] = r * n_ + (c + 1) % n_;
      nb[1] = r * n_ + (c + n_ - 1) % n_;
      nb[2] = ((r + 1) % n_) * n_ + c;
      nb[3] = ((r + n_ - 1) % n_) * n_ + c;
    }
  }
  for (int si = 0; si < 2; ++si) {
    const int s = si == 0 ? -1 : 1;
    for (int k = 0; k < 5; ++k) {
      const int nsum = 2 * k - 4;
      const double delta = 2.0 * s * (cfg_.coupling * nsum + cfg_.field);
      if (cfg_.update == UpdateRule::Metropolis) {
        accept_[si][k] = delta <= 0.0 ? 1.0 : std::exp(-delta / cfg_.temperature);
      } else {
        accept_[si][k] = 1.0 / (1.0 + std::exp(delta / cfg_.temperature));
      }
    }
  }
}

int IsingSampler::neighbor_sum(int site) const {
  const int* nb = &neighbors_[4 * static_cast<std::size_t>(site)];
  return spins_[nb[0]] + spins_[nb[1]] + spins_[nb[2]] + spins_[nb[3]];
}

void IsingSampler::sweep() {
  const int sites = n_ * n_;
  for (int site = 0; site < sites; ++site) {
    const int s = spins_[site];
    const int nsum = neighbor_sum(site);
    const double u = rng_.uniform();
    if (u < accept_[(s + 1) / 2][(nsum + 4) / 2]) {
      spins_[site] = static_cast<std::int8_t>(-s);
      spin_sum_ -= 2 * s;
      bond_sum_ -= 2 * s * nsum;
      ++accepted_;
    }
  }
}

double IsingSampler::magnetization() const {
  return static_cast<double>(spin_sum_) / (static_cast<double>(n_) * n_);
}

double IsingSampler::energy_per_spin() const {
  const double energy = -cfg_.coupling * static_cast<double>(bond_sum_) - cfg_.field * static_cast<double>(spin_sum_);
  return energy / (static_cast<double>(n_) * n_);
}

std::uint32_t IsingSampler::configuration_index() const {
  std::uint32_t index = 0;
  for (std::size_t k = 0; k < spins_.size() && k < 32; ++k) {
    if (spins_[k] > 0) index |= (1u << k);
  }
  return index;
}

double ising_energy_per_spin(const SpinConfiguration& spins, int n, double coupling, double field) {
  long long bonds = 0;
  long long total = 0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int s = spins[r * n + c];
      total += s;
      bonds += s * spins[r * n + (c + 1) % n];
      bonds += s * spins[((r + 1) % n) * n + c];
    }
  }
  return (-coupling * static_cast<double>(bonds) - field * static_cast<double>(total)) /
         (static_cast<double>(n) * n);
}

GibbsTrajectory gibbs_sample(const GibbsConfig& cfg) {
  cfg.validate();
  return gibbs_sample(cfg, initial_spins(cfg));
}

GibbsTrajectory gibbs_sample(const GibbsConfig& cfg, SpinConfiguration initial) {
  IsingSampler sampler(cfg, std::move(initial));
  GibbsTrajectory out;
  const std::size_t recorded = static_cast<std::size_t>(cfg.sweeps - cfg.burn_in);
  out.sweep.reserve(recorded);
  out.magnetization.reserve(recorded);
  out.energy.reserve(recorded);
  for (int s = 1; s <= cfg.sweeps; ++s) {
    sampler.sweep();
    if (s > cfg.burn_in) {
      out.sweep.push_back(s);
      out.magnetization.push_back(sampler.magnetization());
      out.energy.push_back(sampler.energy_per_spin());
    }
  }
  out.final_spins = sampler.spins();
  out.accepted = sampler.accepted();
  return out;
}

PhaseReport detect_symmetry_breaking(const std::vector<double>& magnetization, double threshold) {
  if (magnetization.empty()) throw std::invalid_argument("detect_symmetry_breaking: empty trajectory");
  PhaseReport report;
  report.magnetization_samples = magnetization;
  double sum = 0.0;
  double abs_sum = 0.0;
  for (double m : magnetization) {
    sum += m;
    abs_sum += std::abs(m);
  }
  const double count = static_cast<double>(magnetization.size());
  report.mean_magnetization = sum / count;
  report.mean_abs_magnetization = abs_sum / count;
  report.broken = report.mean_abs_magnetization > threshold;
  if (report.broken) {
    report.selected_sign = report.mean_magnetization > 0 ? 1 : (report.mean_magnetization < 0 ? -1 : 0);
  }
  return report;
}

PhaseReport detect_symmetry_breaking(const GibbsTrajectory& trajectory, double threshold) {
  return detect_symmetry_breaking(trajectory.magnetization, threshold);
}

ExactGibbs exact_gibbs_enumeration(const GibbsConfig& cfg) {
  cfg.validate();
  const int n = cfg.lattice;
  if (n > 4) throw std::invalid_argument("exact_gibbs_enumeration: lattice side must be <= 4");
  const int sites = n * n;
  const std::uint32_t count = 1u << sites;

  std::vector<double> energies(count);
  std::vector<double> mags(count);
  SpinConfiguration spins(static_cast<std::size_t>(sites));
  for (std::uint32_t index = 0; index < count; ++index) {
    long long total = 0;
    for (int k = 0; k < sites; ++k) {
      spins[k] = (index >> k) & 1u ? 1 : -1;
      total += spins[k];
    }
    energies[index] = ising_energy_per_spin(spins, n, cfg.coupling, cfg.field) * sites;
    mags[index] = static_cast<double>(total) / sites;
  }

  // Boltzmann weights relative to the ground state to avoid overflow.
  const double e_min = *std::min_element(energies.begin(), energies.end());
  ExactGibbs out;
  out.probabilities.resize(count);
  double z_rel = 0.0;
  for (std::uint32_t i = 0; i < count; ++i) {
    out.probabilities[i] = std::exp(-(energies[i] - e_min) / cfg.temperature);
    z_rel += out.probabilities[i];
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    out.probabilities[i] /= z_rel;
    out.mean_abs_magnetization += out.probabilities[i] * std::abs(mags[i]);
    out.mean_magnetization += out.probabilities[i] * mags[i];
    out.mean_energy += out.probabilities[i] * energies[i] / sites;
  }
  out.log_partition_function = std::log(z_rel) - e_min / cfg.temperature;
  out.partition_function = std::exp(out.log_partition_function);
  return out;
}

SampleStatistics batch_statistics(const std::vector<double>& samples, std::size_t batches) {
  if (samples.size() < 2) throw std::invalid_argument("batch_statistics: need at least two samples");
  batches = std::clamp<std::size_t>(batches, 2, samples.size());
  const std::size_t per_batch = samples.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < per_batch; ++i) means[b] += samples[b * per_batch + i];
    means[b] /= static_cast<double>(per_batch);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(batches - 1);

  double full = 0.0;
  for (double s : samples) full += s;
  return {full / static_cast<double>(samples.size()), std::sqrt(var / static_cast<double>(batches))};
}

SweepReport order_parameter_sweep(const GibbsConfig& base, const std::vector<double>& temperatures,
                                  int seeds_per_temperature, double threshold) {
  if (temperatures.empty()) throw std::invalid_argument("order_parameter_sweep: empty temperature list");
  if (seeds_per_temperature < 1) throw std::invalid_argument("order_parameter_sweep: need at least one seed");
  base.validate();

  SweepReport report;
  for (double t : temperatures) {
    GibbsConfig cfg = base;
    cfg.temperature = t;
    cfg.validate();
    SweepRow row;
    row.temperature = t;
    row.seeds = seeds_per_temperature;
    int broken = 0;
    for (int s = 0; s < seeds_per_temperature; ++s) {
      cfg.seed = base.seed + static_cast<std::uint64_t>(s);
      const auto phase = detect_symmetry_breaking(gibbs_sample(cfg), threshold);
      row.mean_abs_magnetization += phase.mean_abs_magnetization;
      broken += phase.broken ? 1 : 0;
    }
    row.mean_abs_magnetization /= seeds_per_temperature;
    row.broken_fraction = static_cast<double>(broken) / seeds_per_temperature;
    report.rows.push_back(row);
  }

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& lo = report.rows[i - 1];
    const auto& hi = report.rows[i];
    if (lo.broken_fraction >= 0.5 && hi.broken_fraction < 0.5) {
      const double w = (lo.broken_fraction - 0.5) / (lo.broken_fraction - hi.broken_fraction);
      report.crossing_temperature = lo.temperature + w * (hi.temperature - lo.temperature);
      break;
    }
  }
  return report;
}

}  // namespace symqm
