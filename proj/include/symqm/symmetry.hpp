#pragma once

// Finite unitary representations of the symmetry groups used by symqm:
// SU(2) spin-j, cyclic translations Z_L, Z2 and their direct products.
// Observables are drawn from the maximal abelian set of each representation.

#include <string>
#include <variant>
#include <vector>

#include "symqm/linalg.hpp"

namespace symqm {

/// A Hermitian matrix, validated on construction (‖H − H†‖_max ≤ 1e−12).
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix matrix, std::string label = {});

  /// Builds from a matrix that is Hermitian only up to rounding (e.g. U A U†),
  /// replacing it with (M + M†)/2. Throws if the deviation exceeds `tol`.
  static HermitianOperator symmetrized(const CMatrix& matrix, std::string label = {},
                                       double tol = 1e-10);

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }

 private:
  CMatrix matrix_;
  std::string label_;
};

/// A unitary matrix, validated on construction (‖U†U − I‖_max ≤ 1e−10).
class UnitaryOperator {
 public:
  explicit UnitaryOperator(CMatrix matrix);

  static UnitaryOperator identity(Eigen::Index dim);

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  UnitaryOperator adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

 private:
  CMatrix matrix_;
};

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b);

class GroupDescriptor {
 public:
  /// SU(2) with spin j = twice_j / 2.
  struct SU2 {
    int twice_j;
  };
  struct Cyclic {
    int order;
  };
  struct Z2 {};
  struct Product {
    std::vector<GroupDescriptor> factors;
  };
  using Kind = std::variant<SU2, Cyclic, Z2, Product>;

  static GroupDescriptor su2(int twice_j);
  static GroupDescriptor cyclic(int order);
  static GroupDescriptor z2();
  static GroupDescriptor product(std::vector<GroupDescriptor> factors);

  const Kind& kind() const { return kind_; }
  std::string name() const;

 private:
  explicit GroupDescriptor(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// A finite unitary representation: Hermitian generators plus the declared
/// maximal abelian subset (indices into `generators`).
struct Representation {
  GroupDescriptor group;
  Eigen::Index dim = 0;
  std::vector<HermitianOperator> generators;
  std::vector<std::size_t> abelian_indices;

  std::vector<HermitianOperator> abelian_generators() const;
};

/// Spin-j irrep from the ladder construction, basis ordered m = j, j−1, …, −j.
/// Generators are [J_x, J_y, J_z]; the abelian set is [J_z].
/// `twice_j` must be ≥ 1.
Representation spin_representation(int twice_j);

/// Z_L acting on L positions. Generator N = diag(0, …, L−1) (abelian set [N]).
Representation cyclic_representation(int order);

/// Z2 on a 2-dim space, generated by the projector (I − σ_x)/2 so that
/// exp(−iπ G) = σ_x.
Representation z2_representation();

/// Conjugate (momentum) generator K of Z_L, diagonal in the Fourier basis.
/// exp(−i(2π/L) K) is the unit shift |n⟩ → |n+1 mod L⟩.
HermitianOperator cyclic_shift_generator(int order);
UnitaryOperator cyclic_shift(int order);

/// Generators lifted as A ⊗ I and I ⊗ B; abelian sets are concatenated.
Representation tensor_product(const Representation& a, const Representation& b);

/// Lifts a single-factor operator onto factor `index` of a product space.
HermitianOperator lift(const HermitianOperator& op, const std::vector<Eigen::Index>& factor_dims,
                       std::size_t index);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);

struct Spectrum {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns
  std::vector<Eigenspace> eigenspaces;
};

/// Jacobi eigendecomposition with degenerate eigenvalues grouped at 1e−9.
Spectrum eigensystem(const HermitianOperator& h);

/// exp(−iθH), built from the eigendecomposition of H.
UnitaryOperator exponentiate(const HermitianOperator& h, double theta);

/// J_z(j) rotated to the axis at polar angle θ in the x–z plane:
/// cos θ · J_z + sin θ · J_x.
HermitianOperator spin_along(int twice_j, double theta);

}  // namespace symqm
