#pragma once

// Dense complex linear algebra used throughout symqm: matrix aliases,
// Kronecker products and a cyclic Jacobi eigensolver for Hermitian matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace symqm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
/// Eigenvalues closer than this are treated as one degenerate eigenspace.
inline constexpr double kDegeneracyTol = 1e-9;

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest absolute entry of a (possibly complex) matrix expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kUnitaryTol) {
  if (m.rows() != m.cols()) return false;
  const auto n = m.rows();
  return max_abs(m.adjoint() * m - CMatrix::Identity(n, n)) <= tol;
}

/// Kronecker product a ⊗ b; row index of the result is i_a * rows(b) + i_b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * b.template cast<Scalar>();
    }
  }
  return out;
}

template <typename Real>
struct HermitianEigensystem {
  RealVector<Real> values;      // ascending
  ComplexMatrix<Real> vectors;  // orthonormal columns, vectors.col(k) ↔ values(k)
  int sweeps = 0;
};

/// Frobenius norm of the strictly off-diagonal part.
template <typename Real>
Real off_diagonal_norm(const ComplexMatrix<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Rotations are applied in row-major (p, q), p < q order. Each rotation first
/// removes the phase of a(p,q), then applies the real symmetric Jacobi rotation
/// that zeroes the now-real element. Iteration stops once the off-diagonal
/// Frobenius norm drops below `tol * max(1, ||A||_F)`; more than `max_sweeps`
/// sweeps throws ConvergenceError. The input must already be Hermitian.
template <typename Real>
HermitianEigensystem<Real> jacobi_eigensystem(ComplexMatrix<Real> a, Real tol = Real(1e-12),
                                             int max_sweeps = 100) {
  using C = std::complex<Real>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigensystem: matrix is not square");

  ComplexMatrix<Real> v = ComplexMatrix<Real>::Identity(n, n);
  const Real scale = std::max(Real(1), a.norm());
  const Real target = tol * scale;

  int sweep = 0;
  for (; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < target) break;
    if (sweep == max_sweeps) {
      throw ConvergenceError("jacobi_eigensystem: no convergence within sweep limit");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real r = std::abs(a(p, q));
        if (r == Real(0)) continue;
        const C phase = a(p, q) / r;  // e^{iφ}
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));

        const Real theta = (aqq - app) / (Real(2) * r);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;

        // G acts on the (p, q) plane: G = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] in
        // (row, col) = (p|q, p|q) order; then A ← G† A G and V ← V G.
        const C gpq = s * phase;
        const C gqp = -s * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * gpq + akq * c;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + c * aqk;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)), 0);
        a(q, q) = C(std::real(a(q, q)), 0);

        for (Eigen::Index k = 0; k < n; ++k) {
          const C vkp = v(k, p);
          const C vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * c;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });

  HermitianEigensystem<Real> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = std::real(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

/// One degenerate eigenspace: its eigenvalue and an orthonormal basis.
struct Eigenspace {
  double value = 0.0;
  CMatrix basis;  // d × multiplicity

  Eigen::Index multiplicity() const { return basis.cols(); }
  CMatrix projector() const { return basis * basis.adjoint(); }
};

/// Groups ascending eigenvalues whose consecutive gaps are ≤ tol.
/// The reported value of a group is the mean of its members.
std::vector<Eigenspace> group_eigenspaces(const HermitianEigensystem<double>& es,
                                          double tol = kDegeneracyTol);

}  // namespace symqm
