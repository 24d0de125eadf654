#pragma once

// Test-only generators and independent oracles. Nothing here calls the Jacobi
// solver or exponentiate(): eigen-decompositions come from Eigen's own
// solvers and unitaries from a QR of a complex Ginibre matrix.

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <vector>

#include "symqm/linalg.hpp"
#include "symqm/rng.hpp"

namespace symqm::oracle {

inline CMatrix random_complex_matrix(Eigen::Index d, CounterRng& rng) {
  CMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

inline CMatrix random_hermitian(Eigen::Index d, CounterRng& rng) {
  const CMatrix g = random_complex_matrix(d, rng);
  CMatrix h = (g + g.adjoint()) / 2.0;
  return (h + h.adjoint()) / 2.0;
}

/// Haar-distributed unitary from QR with the R-diagonal phases fixed.
inline CMatrix random_unitary(Eigen::Index d, CounterRng& rng) {
  const CMatrix g = random_complex_matrix(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

/// Ascending eigenvalues from Eigen's solver.
inline std::vector<double> oracle_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

/// exp(−iθH) via Eigen's Padé matrix exponential.
inline CMatrix oracle_exp(const CMatrix& h, double theta) {
  const CMatrix a = Complex(0, -theta) * h;
  return a.exp();
}

inline CMatrix pauli_x() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}
inline CMatrix pauli_y() {
  CMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}
inline CMatrix pauli_z() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

/// Quantile of the χ² distribution with `dof` degrees of freedom.
double chi_square_quantile(double p, int dof);

}  // namespace symqm::oracle
