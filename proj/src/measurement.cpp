#include "symqm/measurement.hpp"

#include <stdexcept>

namespace symqm {

namespace {

void check_dims(const StateVector& psi, Eigen::Index dim) {
  if (psi.dim() != dim) throw std::invalid_argument("measurement: state/observable dimension mismatch");
}

std::vector<double> probabilities_of(const CVector& psi, const std::vector<Eigenspace>& spaces) {
  std::vector<double> p;
  p.reserve(spaces.size());
  double total = 0.0;
  for (const auto& s : spaces) {
    double w = (s.basis.adjoint() * psi).squaredNorm();
    if (w < kProbabilityFloor) w = 0.0;
    p.push_back(w);
    total += w;
  }
  for (auto& w : p) w /= total;
  return p;
}

CVector project(const CVector& psi, const Eigenspace& space) {
  return space.basis * (space.basis.adjoint() * psi);
}

}  // namespace

Observable::Observable(HermitianOperator op) : op_(std::move(op)) {
  spaces_ = eigensystem(op_).eigenspaces;
}

std::vector<double> Observable::eigenvalues() const {
  std::vector<double> out;
  out.reserve(spaces_.size());
  for (const auto& s : spaces_) out.push_back(s.value);
  return out;
}

BornDistribution born_probabilities(const StateVector& psi, const Observable& a) {
  check_dims(psi, a.dim());
  return {a.eigenvalues(), probabilities_of(psi.amplitudes(), a.eigenspaces())};
}

BornDistribution born_probabilities(const StateVector& psi, const HermitianOperator& a) {
  return born_probabilities(psi, Observable(a));
}

std::size_t sample_outcome(const std::vector<double>& probabilities, double u) {
  if (probabilities.empty()) throw std::invalid_argument("sample_outcome: empty distribution");
  double cumulative = 0.0;
  std::size_t last_positive = probabilities.size();
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = k;
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  if (last_positive == probabilities.size()) {
    throw std::invalid_argument("sample_outcome: no outcome has positive probability");
  }
  // u fell in the rounding gap above the final cumulative sum
  return last_positive;
}

std::size_t measure_in_place(StateVector& psi, const Observable& a, CounterRng& rng) {
  check_dims(psi, a.dim());
  const auto p = probabilities_of(psi.amplitudes(), a.eigenspaces());
  const std::size_t k = sample_outcome(p, rng.uniform());
  psi = StateVector::from_amplitudes(project(psi.amplitudes(), a.eigenspaces()[k]));
  return k;
}

MeasurementRecord measure(const StateVector& psi, const Observable& a, CounterRng& rng) {
  const std::uint64_t key = rng.key();
  StateVector post = psi;
  const std::size_t k = measure_in_place(post, a, rng);
  return MeasurementRecord{a.label(),
                           a.eigenvalues(),
                           probabilities_of(psi.amplitudes(), a.eigenspaces()),
                           k,
                           psi,
                           std::move(post),
                           key};
}

MeasurementRecord measure(const StateVector& psi, const HermitianOperator& a, CounterRng& rng) {
  return measure(psi, Observable(a), rng);
}

StateVector apply_symmetry(const StateVector& psi, const UnitaryOperator& u) {
  if (psi.dim() != u.dim()) throw std::invalid_argument("apply_symmetry: dimension mismatch");
  return StateVector::from_amplitudes(u.matrix() * psi.amplitudes());
}

HermitianOperator conjugate_observable(const HermitianOperator& a, const UnitaryOperator& u) {
  if (a.dim() != u.dim()) throw std::invalid_argument("conjugate_observable: dimension mismatch");
  return HermitianOperator::symmetrized(u.matrix() * a.matrix() * u.matrix().adjoint(),
                                          a.label() + "^U");
}

MeasurementRecord repeat_measure(const MeasurementRecord& record, const Observable& a,
                                 CounterRng& rng) {
  if (record.observable_label != a.label()) {
    throw std::invalid_argument("repeat_measure: observable does not match the record");
  }
  return measure(record.post_state, a, rng);
}

}  // namespace symqm
