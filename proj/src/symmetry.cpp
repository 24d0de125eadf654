#include "symqm/symmetry.hpp"

#include <numbers>
#include <stdexcept>

namespace symqm {

namespace {

std::string spin_label(int twice_j) {
  if (twice_j % 2 == 0) return std::to_string(twice_j / 2);
  return std::to_string(twice_j) + "/2";
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
  }
  if (!is_hermitian(matrix_, kHermitianTol)) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
}

HermitianOperator HermitianOperator::symmetrized(const CMatrix& matrix, std::string label,
                                                 double tol) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix must be square");
  }
  if (max_abs(matrix - matrix.adjoint()) > tol) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
  CMatrix h = (matrix + matrix.adjoint()) / 2.0;
  return HermitianOperator(std::move(h), std::move(label));
}

UnitaryOperator::UnitaryOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || !is_unitary(matrix_, kUnitaryTol)) {
    throw std::invalid_argument("UnitaryOperator: matrix is not unitary");
  }
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(CMatrix::Identity(dim, dim));
}

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("UnitaryOperator product: dim mismatch");
  return UnitaryOperator(a.matrix() * b.matrix());
}

GroupDescriptor GroupDescriptor::su2(int twice_j) {
  if (twice_j < 1) throw std::invalid_argument("SU2: spin j must be a positive half-integer");
  return GroupDescriptor(SU2{twice_j});
}

GroupDescriptor GroupDescriptor::cyclic(int order) {
  if (order < 2) throw std::invalid_argument("Cyclic: order must be >= 2");
  return GroupDescriptor(Cyclic{order});
}

GroupDescriptor GroupDescriptor::z2() { return GroupDescriptor(Z2{}); }

GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> factors) {
  if (factors.size() < 2) throw std::invalid_argument("Product: needs at least two factors");
  return GroupDescriptor(Product{std::move(factors)});
}

std::string GroupDescriptor::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SU2>) {
          return "SU2(" + spin_label(k.twice_j) + ")";
        } else if constexpr (std::is_same_v<K, Cyclic>) {
          return "Z" + std::to_string(k.order);
        } else if constexpr (std::is_same_v<K, Z2>) {
          return "Z2";
        } else {
          std::string s;
          for (std::size_t i = 0; i < k.factors.size(); ++i) {
            if (i) s += " x ";
            s += k.factors[i].name();
          }
          return s;
        }
      },
      kind_);
}

std::vector<HermitianOperator> Representation::abelian_generators() const {
  std::vector<HermitianOperator> out;
  out.reserve(abelian_indices.size());
  for (auto i : abelian_indices) out.push_back(generators.at(i));
  return out;
}

Representation spin_representation(int twice_j) {
  auto group = GroupDescriptor::su2(twice_j);
  const Eigen::Index d = twice_j + 1;
  const double j = twice_j / 2.0;

  // index k ↔ m = j − k
  CMatrix jz = CMatrix::Zero(d, d);
  CMatrix jplus = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) {
      // J+ |j, m⟩ = sqrt(j(j+1) − m(m+1)) |j, m+1⟩, and |m+1⟩ sits at index k−1
      jplus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
  }
  const CMatrix jminus = jplus.adjoint();
  const Complex i(0, 1);
  CMatrix jx = (jplus + jminus) / 2.0;
  CMatrix jy = (jplus - jminus) / (2.0 * i);

  Representation rep{group, d, {}, {2}};
  rep.generators.emplace_back(std::move(jx), "Jx");
  rep.generators.emplace_back(std::move(jy), "Jy");
  rep.generators.emplace_back(std::move(jz), "Jz");
  return rep;
}

Representation cyclic_representation(int order) {
  auto group = GroupDescriptor::cyclic(order);
  CMatrix n = CMatrix::Zero(order, order);
  for (int k = 0; k < order; ++k) n(k, k) = k;
  Representation rep{group, order, {}, {0}};
  rep.generators.emplace_back(std::move(n), "N");
  return rep;
}

Representation z2_representation() {
  CMatrix g(2, 2);
  g << 0.5, -0.5, -0.5, 0.5;
  Representation rep{GroupDescriptor::z2(), 2, {}, {0}};
  rep.generators.emplace_back(std::move(g), "P");
  return rep;
}

HermitianOperator cyclic_shift_generator(int order) {
  if (order < 2) throw std::invalid_argument("cyclic_shift_generator: order must be >= 2");
  const double two_pi = 2.0 * std::numbers::pi;
  // F(n, k) = e^{2πi nk/L}/√L; K = F diag(0..L−1) F†
  CMatrix f(order, order);
  for (int n = 0; n < order; ++n)
    for (int k = 0; k < order; ++k)
      f(n, k) = std::polar(1.0 / std::sqrt(double(order)), two_pi * n * k / order);
  RVector ks = RVector::LinSpaced(order, 0.0, order - 1.0);
  CMatrix kmat = f * ks.cast<Complex>().asDiagonal() * f.adjoint();
  return HermitianOperator::symmetrized(kmat, "K");
}

UnitaryOperator cyclic_shift(int order) {
  return exponentiate(cyclic_shift_generator(order), 2.0 * std::numbers::pi / order);
}

Representation tensor_product(const Representation& a, const Representation& b) {
  const CMatrix ia = CMatrix::Identity(a.dim, a.dim);
  const CMatrix ib = CMatrix::Identity(b.dim, b.dim);

  std::vector<GroupDescriptor> factors;
  auto append_factors = [&](const GroupDescriptor& g) {
    if (const auto* p = std::get_if<GroupDescriptor::Product>(&g.kind())) {
      factors.insert(factors.end(), p->factors.begin(), p->factors.end());
    } else {
      factors.push_back(g);
    }
  };
  append_factors(a.group);
  append_factors(b.group);

  Representation rep{GroupDescriptor::product(std::move(factors)), a.dim * b.dim, {}, {}};
  for (const auto& g : a.generators) {
    rep.generators.emplace_back(kron(g.matrix(), ib), g.label() + "(x)I");
  }
  for (const auto& g : b.generators) {
    rep.generators.emplace_back(kron(ia, g.matrix()), "I(x)" + g.label());
  }
  for (auto i : a.abelian_indices) rep.abelian_indices.push_back(i);
  for (auto i : b.abelian_indices) rep.abelian_indices.push_back(a.generators.size() + i);
  return rep;
}

HermitianOperator lift(const HermitianOperator& op, const std::vector<Eigen::Index>& factor_dims,
                       std::size_t index) {
  if (index >= factor_dims.size()) throw std::invalid_argument("lift: factor index out of range");
  if (factor_dims[index] != op.dim()) throw std::invalid_argument("lift: dimension mismatch");
  Eigen::Index before = 1;
  Eigen::Index after = 1;
  for (std::size_t k = 0; k < factor_dims.size(); ++k) {
    if (k < index) before *= factor_dims[k];
    if (k > index) after *= factor_dims[k];
  }
  CMatrix m = kron(kron(CMatrix::Identity(before, before), op.matrix()),
                   CMatrix::Identity(after, after));
  return HermitianOperator(std::move(m), op.label() + "@" + std::to_string(index));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

CMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator(a.matrix(), b.matrix());
}

Spectrum eigensystem(const HermitianOperator& h) {
  auto es = jacobi_eigensystem<double>(h.matrix());
  Spectrum out;
  out.eigenspaces = group_eigenspaces(es);
  out.values = std::move(es.values);
  out.vectors = std::move(es.vectors);
  return out;
}

UnitaryOperator exponentiate(const HermitianOperator& h, double theta) {
  const auto es = jacobi_eigensystem<double>(h.matrix());
  CVector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    phases(k) = std::polar(1.0, -theta * es.values(k));
  }
  return UnitaryOperator(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

HermitianOperator spin_along(int twice_j, double theta) {
  const auto rep = spin_representation(twice_j);
  CMatrix m = std::cos(theta) * rep.generators[2].matrix() +
              std::sin(theta) * rep.generators[0].matrix();
  return HermitianOperator::symmetrized(m, "J(theta=" + std::to_string(theta) + ")");
}

}  // namespace symqm
