#include "symqm/decoherence.hpp"

#include <cmath>
#include <stdexcept>

namespace symqm {

namespace {

CMatrix sigma_y() {
  CMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

CMatrix sigma_z() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (std::size_t k = dims.size() - 1; k > 0; --k) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Applies `gate` (dims[i]·dims[j] square, row index x·dims[j] + y) to factors
// i < j of the amplitude vector, in place.
void apply_two_factor_gate(CVector& amps, const std::vector<Eigen::Index>& dims, std::size_t i,
                           std::size_t j, const CMatrix& gate) {
  const auto strides = strides_of(dims);
  const Eigen::Index di = dims[i];
  const Eigen::Index dj = dims[j];
  const Eigen::Index block = di * dj;
  CVector local(block);
  CVector mixed(block);
  for (Eigen::Index base = 0; base < amps.size(); ++base) {
    const Eigen::Index digit_i = (base / strides[i]) % di;
    const Eigen::Index digit_j = (base / strides[j]) % dj;
    if (digit_i != 0 || digit_j != 0) continue;
    for (Eigen::Index x = 0; x < di; ++x)
      for (Eigen::Index y = 0; y < dj; ++y)
        local(x * dj + y) = amps(base + x * strides[i] + y * strides[j]);
    mixed.noalias() = gate * local;
    for (Eigen::Index x = 0; x < di; ++x)
      for (Eigen::Index y = 0; y < dj; ++y)
        amps(base + x * strides[i] + y * strides[j]) = mixed(x * dj + y);
  }
}

double branch_overlap(const StateVector& e, double angle) {
  // ⟨e| exp(−2i·angle·σ_y) |e⟩ = cos 2θ − i sin 2θ ⟨σ_y⟩
  const Complex sy = e.amplitudes().dot(sigma_y() * e.amplitudes());
  return std::abs(Complex(std::cos(2.0 * angle), 0.0) - Complex(0.0, std::sin(2.0 * angle)) * sy.real());
}

}  // namespace

StateVector EnvironmentModel::initial_state(std::size_t k) const {
  if (initial.empty()) return StateVector::basis(2, 0);
  return initial.at(k);
}

void EnvironmentModel::validate() const {
  for (double g : couplings) {
    if (!std::isfinite(g)) throw std::invalid_argument("EnvironmentModel: couplings must be finite");
  }
  if (!initial.empty()) {
    if (initial.size() != couplings.size()) {
      throw std::invalid_argument("EnvironmentModel: one initial state per qubit required");
    }
    for (const auto& s : initial) {
      if (s.dim() != 2) throw std::invalid_argument("EnvironmentModel: initial states must be qubits");
    }
  }
}

EnvironmentModel EnvironmentModel::uniform(std::size_t k, double g) {
  return EnvironmentModel{std::vector<double>(k, g), {}};
}

CompositeState entangle_with_apparatus(const StateVector& psi, Eigen::Index apparatus_dim) {
  const Eigen::Index n = psi.dim();
  if (apparatus_dim < n) {
    throw std::invalid_argument("entangle_with_apparatus: apparatus dimension must be >= system dimension");
  }
  // |α⟩⊗|a_0⟩ has amplitude s_α at α·M; the shift moves it to α·M + α.
  CVector out = CVector::Zero(n * apparatus_dim);
  for (Eigen::Index alpha = 0; alpha < n; ++alpha) {
    out(alpha * apparatus_dim + alpha) = psi[alpha];
  }
  return CompositeState(StateVector::from_amplitudes(out), {n, apparatus_dim});
}

CompositeState chain_entangle(const StateVector& psi, Eigen::Index apparatus_dim,
                              const EnvironmentModel& env) {
  env.validate();
  CompositeState state = entangle_with_apparatus(psi, apparatus_dim);
  for (std::size_t k = 0; k < env.size(); ++k) state = tensor_state(state, env.initial_state(k));
  if (env.size() == 0) return state;

  CMatrix pointer = CMatrix::Zero(apparatus_dim, apparatus_dim);
  for (Eigen::Index a = 0; a < apparatus_dim; ++a) pointer(a, a) = static_cast<double>(a);
  const HermitianOperator generator(kron(pointer, sigma_y()));

  CVector amps = state.state.amplitudes();
  for (std::size_t k = 0; k < env.size(); ++k) {
    const UnitaryOperator gate = exponentiate(generator, env.couplings[k]);
    apply_two_factor_gate(amps, state.factor_dims, 1, 2 + k, gate.matrix());
  }
  return CompositeState(StateVector::from_amplitudes(amps), state.factor_dims);
}

CoherencePoint decoherence_factor(const StateVector& psi, const EnvironmentModel& env, double t,
                                  EvolutionMode mode) {
  if (psi.dim() != 2) throw std::invalid_argument("decoherence_factor: system must be a qubit");
  env.validate();
  const double bare = std::abs(psi[0] * std::conj(psi[1]));

  CoherencePoint point;
  point.time = t;
  point.analytic = bare;
  for (std::size_t k = 0; k < env.size(); ++k) {
    point.analytic *= branch_overlap(env.initial_state(k), env.couplings[k] * t);
  }
  if (mode == EvolutionMode::Analytic) {
    point.coherence = point.analytic;
    return point;
  }
  if (env.size() > kMaxExactQubits) {
    throw std::invalid_argument("decoherence_factor: exact mode supports at most 12 environment qubits");
  }

  std::vector<Eigen::Index> dims{2};
  CVector amps = psi.amplitudes();
  for (std::size_t k = 0; k < env.size(); ++k) {
    amps = kron(amps, env.initial_state(k).amplitudes());
    dims.push_back(2);
  }
  const HermitianOperator coupling(kron(sigma_z(), sigma_y()));
  for (std::size_t k = 0; k < env.size(); ++k) {
    const UnitaryOperator gate = exponentiate(coupling, env.couplings[k] * t);
    apply_two_factor_gate(amps, dims, 0, 1 + k, gate.matrix());
  }

  const Eigen::Index env_dim = amps.size() / 2;
  const CompositeState evolved(StateVector::from_amplitudes(amps), {2, env_dim});
  point.coherence = std::abs(reduced_density(evolved, 0).matrix()(0, 1));
  return point;
}

DecoherenceTrace decoherence_trace(const StateVector& psi, const EnvironmentModel& env,
                                   const std::vector<double>& times, EvolutionMode mode) {
  DecoherenceTrace trace;
  trace.k_used = env.size();
  for (double t : times) {
    const auto p = decoherence_factor(psi, env, t, mode);
    trace.times.push_back(p.time);
    trace.coherence.push_back(p.coherence);
    trace.analytic.push_back(p.analytic);
  }
  return trace;
}

}  // namespace symqm
