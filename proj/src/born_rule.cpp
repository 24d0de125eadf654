#include "symqm/born_rule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symqm {

namespace {

std::vector<std::pair<double, double>> weight_pairs(const std::vector<StateVector>& states) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& s : states) {
    const RVector w = s.weights();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (w(i) > 0.0 && w(j) > 0.0) pairs.emplace_back(w(i), w(j));
      }
    }
  }
  return pairs;
}

}  // namespace

PowerLawCandidate::PowerLawCandidate(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("PowerLawCandidate: beta must be positive");
  }
}

double candidate_total(const StateVector& psi, const ProbabilityMap& f) {
  double total = 0.0;
  const RVector w = psi.weights();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) total += f(w(i));
  }
  return total;
}

double candidate_total(const StateVector& psi, const PowerLawCandidate& f) {
  return candidate_total(psi, ProbabilityMap(f));
}

double multiplicativity_violation(const ProbabilityMap& f,
                                  const std::vector<std::pair<double, double>>& samples) {
  if (samples.empty()) throw std::invalid_argument("multiplicativity_violation: no samples");
  double worst = 0.0;
  for (const auto& [x, y] : samples) {
    if (!(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0)) {
      throw std::invalid_argument("multiplicativity_violation: samples must lie in (0, 1]");
    }
    worst = std::max(worst, std::abs(f(x) * f(y) - f(x * y)));
  }
  return worst;
}

double multiplicativity_violation(const PowerLawCandidate& f,
                                  const std::vector<std::pair<double, double>>& samples) {
  return multiplicativity_violation(ProbabilityMap(f), samples);
}

ExponentScanReport exponent_scan(const std::vector<StateVector>& states, const std::vector<double>& betas) {
  if (states.empty() || betas.empty()) throw std::invalid_argument("exponent_scan: empty inputs");
  ExponentScanReport report;
  report.betas = betas;
  report.degenerate = std::none_of(states.begin(), states.end(), [](const StateVector& s) {
    return (s.weights().array() > 0.0).count() >= 2;
  });
  const auto pairs = weight_pairs(states);
  for (double beta : betas) {
    const PowerLawCandidate f(beta);
    double worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, std::abs(candidate_total(s, f) - 1.0));
    report.max_normalization_violation.push_back(worst);
    report.multiplicativity_violation.push_back(multiplicativity_violation(f, pairs));
    if (worst <= kNormalizationTol) report.passing.push_back(beta);
  }
  return report;
}

std::vector<double> default_beta_grid() { return {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0}; }

std::vector<StateVector> random_state_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<StateVector> states;
  states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = CounterRng::stream(seed, i);
    states.push_back(random_state(2 + static_cast<Eigen::Index>(i % 5), rng));
  }
  return states;
}

CompositeConsistency composite_consistency_check(const StateVector& a, const StateVector& b,
                                                 const ProbabilityMap& f) {
  CompositeConsistency out{symmetrized_composite(a, b), 0.0};
  const RVector wa = a.weights();
  const RVector wb = b.weights();
  for (Eigen::Index i = 0; i < wa.size(); ++i) {
    for (Eigen::Index j = 0; j < wb.size(); ++j) {
      if (wa(i) <= 0.0 || wb(j) <= 0.0) continue;
      out.violation = std::max(out.violation, std::abs(f(wa(i) * wb(j)) - f(wa(i)) * f(wb(j))));
    }
  }
  return out;
}

CompositeConsistency composite_consistency_check(const StateVector& a, const StateVector& b,
                                                 const PowerLawCandidate& f) {
  return composite_consistency_check(a, b, ProbabilityMap(f));
}

double chi_square_statistic(const std::vector<std::uint64_t>& counts, const std::vector<double>& probabilities) {
  if (counts.size() != probabilities.size()) throw std::invalid_argument("chi_square_statistic: size mismatch");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  double chi2 = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    const double expected = probabilities[k] * static_cast<double>(total);
    const double diff = static_cast<double>(counts[k]) - expected;
    chi2 += diff * diff / expected;
  }
  return chi2;
}

EmpiricalBornResult empirical_born_test(const StateVector& psi, const Observable& a, std::uint64_t trials,
                                        std::uint64_t seed) {
  if (trials < kMinBornTrials) throw std::invalid_argument("empirical_born_test: at least 10^4 trials required");
  const auto dist = born_probabilities(psi, a);
  EmpiricalBornResult out;
  out.eigenvalues = dist.eigenvalues;
  out.expected = dist.probabilities;
  out.counts.assign(dist.probabilities.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = CounterRng::stream(seed, t);
    StateVector copy = psi;
    ++out.counts[measure_in_place(copy, a, rng)];
  }
  for (auto c : out.counts) out.frequencies.push_back(static_cast<double>(c) / static_cast<double>(trials));
  out.chi_square = chi_square_statistic(out.counts, out.expected);
  out.degrees_of_freedom =
      static_cast<int>(std::count_if(out.expected.begin(), out.expected.end(), [](double p) { return p > 0.0; })) - 1;
  return out;
}

}  // namespace symqm
