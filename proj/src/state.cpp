#include "symqm/state.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace symqm {

namespace {

Eigen::Index product(const std::vector<Eigen::Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Eigen::Index{1}, std::multiplies<>());
}

struct Split {
  Eigen::Index before;
  Eigen::Index kept;
  Eigen::Index after;
};

Split split_at(const std::vector<Eigen::Index>& dims, std::size_t keep) {
  if (keep >= dims.size()) throw std::invalid_argument("partial trace: kept factor out of range");
  Split s{1, dims[keep], 1};
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k < keep) s.before *= dims[k];
    if (k > keep) s.after *= dims[k];
  }
  return s;
}

}  // namespace

StateVector StateVector::from_amplitudes(const CVector& raw) {
  if (raw.size() == 0) throw std::invalid_argument("StateVector: empty amplitude list");
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("StateVector: amplitudes must be finite and not all zero");
  }
  return StateVector(raw / norm);
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (dim < 1 || index < 0 || index >= dim) throw std::invalid_argument("StateVector::basis: bad index");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

bool same_ray(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(a.amplitudes().dot(b.amplitudes())) >= 1.0 - tol;
}

StateVector random_state(Eigen::Index dim, CounterRng& rng) {
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  return StateVector::from_amplitudes(v);
}

DensityOperator DensityOperator::from_matrix(CMatrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("DensityOperator: matrix must be square and non-empty");
  }
  if (!is_hermitian(m, kHermitianTol)) throw std::invalid_argument("DensityOperator: not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > 1e-12) {
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  }
  const auto es = jacobi_eigensystem<double>(m);
  if (es.values(0) < -1e-10) throw std::invalid_argument("DensityOperator: negative eigenvalue");
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("DensityOperator: dim must be >= 1");
  return DensityOperator(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

CompositeState::CompositeState(StateVector s, std::vector<Eigen::Index> dims)
    : state(std::move(s)), factor_dims(std::move(dims)) {
  if (factor_dims.empty() || product(factor_dims) != state.dim()) {
    throw std::invalid_argument("CompositeState: factor dims do not multiply to state dim");
  }
  for (auto d : factor_dims) {
    if (d < 1) throw std::invalid_argument("CompositeState: factor dims must be positive");
  }
}

CompositeState tensor_state(const StateVector& a, const StateVector& b) {
  CVector v = kron(a.amplitudes(), b.amplitudes());
  return CompositeState(StateVector::from_amplitudes(v), {a.dim(), b.dim()});
}

CompositeState tensor_state(const CompositeState& a, const StateVector& b) {
  CVector v = kron(a.state.amplitudes(), b.amplitudes());
  auto dims = a.factor_dims;
  dims.push_back(b.dim());
  return CompositeState(StateVector::from_amplitudes(v), std::move(dims));
}

CompositeState symmetrized_composite(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("symmetrized_composite: dim mismatch");
  CVector v = kron(a.amplitudes(), b.amplitudes()) + kron(b.amplitudes(), a.amplitudes());
  // For a, b normalized, ‖v‖² = 2(1 + |⟨a|b⟩|²) ≥ 2, so it never vanishes.
  return CompositeState(StateVector::from_amplitudes(v), {a.dim(), a.dim()});
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Eigen::Index>& factor_dims,
                              std::size_t keep) {
  if (factor_dims.empty() || product(factor_dims) != rho.dim()) {
    throw std::invalid_argument("partial_trace: factor dims inconsistent with operator");
  }
  const Split s = split_at(factor_dims, keep);
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(s.kept, s.kept);
  for (Eigen::Index b = 0; b < s.before; ++b) {
    for (Eigen::Index x = 0; x < s.kept; ++x) {
      for (Eigen::Index y = 0; y < s.kept; ++y) {
        const Eigen::Index row = (b * s.kept + x) * s.after;
        const Eigen::Index col = (b * s.kept + y) * s.after;
        Complex sum = 0;
        for (Eigen::Index a = 0; a < s.after; ++a) sum += m(row + a, col + a);
        out(x, y) += sum;
      }
    }
  }
  out = (out + out.adjoint()).eval() / 2.0;
  return DensityOperator::from_matrix(std::move(out));
}

DensityOperator reduced_density(const CompositeState& psi, std::size_t keep) {
  const Split s = split_at(psi.factor_dims, keep);
  const CVector& v = psi.state.amplitudes();
  CMatrix out = CMatrix::Zero(s.kept, s.kept);
  // View amplitudes as ψ(b, x, a): a block of s.kept × s.after per b.
  for (Eigen::Index b = 0; b < s.before; ++b) {
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> block(
        v.data() + b * s.kept * s.after, s.kept, s.after);
    out.noalias() += block * block.adjoint();
  }
  out = (out + out.adjoint()).eval() / 2.0;
  return DensityOperator::from_matrix(std::move(out));
}

double purity(const DensityOperator& rho) {
  // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
  return rho.matrix().squaredNorm();
}

std::vector<double> schmidt_coefficients(const CompositeState& psi) {
  if (psi.factor_dims.size() != 2) {
    throw std::invalid_argument("schmidt_coefficients: state must have exactly two factors");
  }
  const Eigen::Index da = psi.factor_dims[0];
  const Eigen::Index db = psi.factor_dims[1];
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.state.amplitudes().data(), da, db);
  CMatrix gram = da <= db ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  gram = (gram + gram.adjoint()).eval() / 2.0;
  const auto es = jacobi_eigensystem<double>(gram);
  // σ_k = ‖M† u_k‖ (or ‖M v_k‖) keeps tiny singular values at machine
  // precision, where sqrt of a Gram eigenvalue would only reach ~1e-8.
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(es.values.size()));
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const auto u = es.vectors.col(k);
    out.push_back(da <= db ? (m.adjoint() * u).norm() : (m * u).norm());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool is_separable_pure(const CompositeState& psi) {
  const auto coeffs = schmidt_coefficients(psi);
  return coeffs.size() < 2 || coeffs[1] < kSeparableTol;
}

double expectation(const DensityOperator& rho, const HermitianOperator& a) {
  if (rho.dim() != a.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  const Complex value = (rho.matrix() * a.matrix()).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("expectation: trace has a non-negligible imaginary part");
  }
  return value.real();
}

}  // namespace symqm
