#include <gtest/gtest.h>

#include <numbers>

#include "symqm/symmetry.hpp"
#include "test_support.hpp"

using namespace symqm;
using symqm::oracle::oracle_eigenvalues;
using symqm::oracle::oracle_exp;
using symqm::oracle::random_hermitian;

namespace {

constexpr double kPi = std::numbers::pi;

const HermitianOperator& jx(const Representation& r) { return r.generators[0]; }
const HermitianOperator& jy(const Representation& r) { return r.generators[1]; }
const HermitianOperator& jz(const Representation& r) { return r.generators[2]; }

}  // namespace

TEST(SpinRepresentation, HalfSpinIsHalfPauli) {
  const auto r = spin_representation(1);
  EXPECT_EQ(r.dim, 2);
  EXPECT_LE(max_abs(jz(r).matrix() - 0.5 * oracle::pauli_z()), 1e-15);
  EXPECT_LE(max_abs(jx(r).matrix() - 0.5 * oracle::pauli_x()), 1e-15);
  EXPECT_LE(max_abs(jy(r).matrix() - 0.5 * oracle::pauli_y()), 1e-15);
  ASSERT_EQ(r.abelian_indices.size(), 1u);
  EXPECT_EQ(r.abelian_generators()[0].label(), "Jz");
}

TEST(SpinRepresentation, AlgebraAndCasimirForSeveralSpins) {
  const Complex i(0, 1);
  for (int twice_j = 1; twice_j <= 8; ++twice_j) {
    const auto r = spin_representation(twice_j);
    const double j = twice_j / 2.0;
    ASSERT_EQ(r.dim, twice_j + 1);
    for (const auto& g : r.generators) EXPECT_TRUE(is_hermitian(g.matrix(), 1e-12));
    EXPECT_LE(max_abs(commutator(jx(r), jy(r)) - i * jz(r).matrix()), 1e-10) << twice_j;
    EXPECT_LE(max_abs(commutator(jy(r), jz(r)) - i * jx(r).matrix()), 1e-10) << twice_j;
    EXPECT_LE(max_abs(commutator(jz(r), jx(r)) - i * jy(r).matrix()), 1e-10) << twice_j;
    const CMatrix casimir = jx(r).matrix() * jx(r).matrix() + jy(r).matrix() * jy(r).matrix() +
                            jz(r).matrix() * jz(r).matrix();
    EXPECT_LE(max_abs(casimir - j * (j + 1) * CMatrix::Identity(r.dim, r.dim)), 1e-9) << twice_j;
  }
}

TEST(SpinRepresentation, SpinOneJzSpectrumMatchesOracle) {
  const auto r = spin_representation(2);
  EXPECT_EQ(r.dim, 3);
  const auto ours = eigensystem(jz(r)).values;
  const auto ref = oracle_eigenvalues(jz(r).matrix());
  ASSERT_EQ(ref.size(), 3u);
  EXPECT_NEAR(ref[0], -1.0, 1e-12);
  EXPECT_NEAR(ref[1], 0.0, 1e-12);
  EXPECT_NEAR(ref[2], 1.0, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ours(k), ref[k], 1e-12);
}

TEST(SpinRepresentation, RejectsInvalidSpin) {
  EXPECT_THROW(spin_representation(0), std::invalid_argument);
  EXPECT_THROW(spin_representation(-3), std::invalid_argument);
}

TEST(CyclicRepresentation, PositionGeneratorAndShift) {
  const auto r2 = cyclic_representation(2);
  EXPECT_LE(max_abs(r2.generators[0].matrix() - RVector::LinSpaced(2, 0, 1).cast<Complex>().asDiagonal().toDenseMatrix()),
            0.0);

  const auto r4 = cyclic_representation(4);
  const auto values = eigensystem(r4.generators[0]).values;
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(values(k), k);

  const auto s3 = cyclic_shift(3);
  const CMatrix cube = s3.matrix() * s3.matrix() * s3.matrix();
  EXPECT_LE(max_abs(cube - CMatrix::Identity(3, 3)), 1e-10);
  // S|n⟩ = |n+1 mod L⟩
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(std::abs(s3.matrix()((n + 1) % 3, n)), 1.0, 1e-10);

  EXPECT_THROW(cyclic_representation(1), std::invalid_argument);
}

TEST(Z2Representation, GeneratorExponentiatesToSwap) {
  const auto r = z2_representation();
  const auto u = exponentiate(r.generators[0], kPi);
  EXPECT_LE(max_abs(u.matrix() - oracle::pauli_x()), 1e-10);
}

TEST(TensorProduct, TwoSpinHalves) {
  const auto a = spin_representation(1);
  const auto prod = tensor_product(a, a);
  EXPECT_EQ(prod.dim, 4);
  EXPECT_EQ(prod.group.name(), "SU2(1/2) x SU2(1/2)");
  const auto abelian = prod.abelian_generators();
  ASSERT_EQ(abelian.size(), 2u);
  EXPECT_LE(max_abs(commutator(abelian[0], abelian[1])), 1e-12);

  const HermitianOperator total(abelian[0].matrix() + abelian[1].matrix());
  const auto values = eigensystem(total).values;
  const auto ref = oracle_eigenvalues(total.matrix());
  const double expected[] = {-1, 0, 0, 1};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(ref[k], expected[k], 1e-12);
    EXPECT_NEAR(values(k), expected[k], 1e-12);
  }
}

TEST(TensorProduct, MixedGroupsLiftGenerators) {
  const auto prod = tensor_product(spin_representation(1), cyclic_representation(3));
  EXPECT_EQ(prod.dim, 6);
  EXPECT_EQ(prod.generators.size(), 4u);
  const auto abelian = prod.abelian_generators();
  ASSERT_EQ(abelian.size(), 2u);
  EXPECT_LE(max_abs(commutator(abelian[0], abelian[1])), 1e-12);
  const auto triple = tensor_product(prod, z2_representation());
  EXPECT_EQ(triple.group.name(), "SU2(1/2) x Z3 x Z2");
  EXPECT_EQ(triple.abelian_generators().size(), 3u);
}

TEST(Commutator, BasicIdentities) {
  const auto r = spin_representation(1);
  EXPECT_LE(max_abs(commutator(jz(r), jz(r))), 0.0);
  EXPECT_LE(max_abs(commutator(jx(r), jy(r)) - Complex(0, 1) * jz(r).matrix()), 1e-15);
  const auto n = cyclic_representation(5).generators[0];
  const HermitianOperator n2(n.matrix() * n.matrix());
  EXPECT_LE(max_abs(commutator(n, n2)), 0.0);
  EXPECT_THROW(commutator(jz(r), n), std::invalid_argument);
}

TEST(Eigensystem, SpinHalfGenerators) {
  const auto r = spin_representation(1);
  const auto z = eigensystem(jz(r));
  EXPECT_NEAR(z.values(0), -0.5, 1e-15);
  EXPECT_NEAR(z.values(1), 0.5, 1e-15);

  const auto x = eigensystem(jx(r));
  EXPECT_NEAR(x.values(0), -0.5, 1e-12);
  EXPECT_NEAR(x.values(1), 0.5, 1e-12);
  const double s = 1.0 / std::sqrt(2.0);
  CVector minus(2), plus(2);
  minus << s, -s;
  plus << s, s;
  EXPECT_NEAR(std::abs(x.vectors.col(0).dot(minus)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(x.vectors.col(1).dot(plus)), 1.0, 1e-12);
}

TEST(Eigensystem, IdentityIsOneDegenerateEigenspace) {
  const auto es = eigensystem(HermitianOperator(CMatrix::Identity(3, 3)));
  ASSERT_EQ(es.eigenspaces.size(), 1u);
  EXPECT_EQ(es.eigenspaces[0].multiplicity(), 3);
  EXPECT_DOUBLE_EQ(es.eigenspaces[0].value, 1.0);
}

TEST(Eigensystem, GroupsNearDegenerateValuesOnly) {
  CMatrix d = CMatrix::Zero(4, 4);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0 + 5e-10;  // within grouping tolerance
  d(2, 2) = 1.0 + 1e-6;
  d(3, 3) = 2.0;
  const auto es = eigensystem(HermitianOperator(d));
  ASSERT_EQ(es.eigenspaces.size(), 3u);
  EXPECT_EQ(es.eigenspaces[0].multiplicity(), 2);
}

TEST(Eigensystem, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(HermitianOperator{m}, std::invalid_argument);
}

TEST(Eigensystem, ReconstructionPropertyAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto rng = CounterRng::stream(1234, seed);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(16));
    const CMatrix h = random_hermitian(d, rng);
    const auto es = eigensystem(HermitianOperator(h));
    const CMatrix rebuilt = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LE(max_abs(h - rebuilt), 1e-9) << "seed " << seed;
    EXPECT_LE(max_abs(es.vectors.adjoint() * es.vectors - CMatrix::Identity(d, d)), 1e-10);
    for (Eigen::Index k = 0; k < d; ++k) {
      EXPECT_LE(max_abs(h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)), 1e-9);
    }
    const auto ref = oracle_eigenvalues(h);
    for (Eigen::Index k = 0; k < d; ++k) EXPECT_NEAR(es.values(k), ref[k], 1e-9);
  }
}

TEST(Eigensystem, JacobiHandlesDegenerateSpectra) {
  // U diag(1,1,1,−2,−2) U† has two degenerate blocks
  auto rng = CounterRng::stream(99, 0);
  const CMatrix u = oracle::random_unitary(5, rng);
  RVector diag(5);
  diag << 1, 1, 1, -2, -2;
  CMatrix h = u * diag.cast<Complex>().asDiagonal() * u.adjoint();
  h = (h + h.adjoint()).eval() / 2.0;
  const auto es = eigensystem(HermitianOperator(h));
  ASSERT_EQ(es.eigenspaces.size(), 2u);
  EXPECT_EQ(es.eigenspaces[0].multiplicity(), 2);
  EXPECT_EQ(es.eigenspaces[1].multiplicity(), 3);
  EXPECT_LE(max_abs(es.eigenspaces[1].projector() * es.eigenspaces[1].projector() - es.eigenspaces[1].projector()),
            1e-10);
}

TEST(Exponentiate, IdentityAtZeroAndInverse) {
  const auto r = spin_representation(3);
  EXPECT_LE(max_abs(exponentiate(jy(r), 0.0).matrix() - CMatrix::Identity(4, 4)), 1e-12);
  const auto u = exponentiate(jx(r), 0.7);
  const auto v = exponentiate(jx(r), -0.7);
  EXPECT_LE(max_abs((u * v).matrix() - CMatrix::Identity(4, 4)), 1e-10);
}

TEST(Exponentiate, PiRotationAboutYFlipsSpinHalf) {
  const auto r = spin_representation(1);
  const auto u = exponentiate(jy(r), kPi);
  const CVector up = CVector::Unit(2, 0);
  const CVector down = CVector::Unit(2, 1);
  EXPECT_NEAR(std::abs(down.dot(u.matrix() * up)), 1.0, 1e-12);
  // closed form: exp(−iπσ_y/2) = −iσ_y
  EXPECT_LE(max_abs(u.matrix() - Complex(0, -1) * oracle::pauli_y()), 1e-12);
}

TEST(Exponentiate, GroupLawAndPadeOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = CounterRng::stream(77, seed);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(8));
    const HermitianOperator h(random_hermitian(d, rng));
    const double theta = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * rng.uniform() - 1.0;
    const auto a = exponentiate(h, theta);
    const auto b = exponentiate(h, phi);
    const auto ab = exponentiate(h, theta + phi);
    EXPECT_LE(max_abs(a.matrix() * b.matrix() - ab.matrix()), 1e-9);
    EXPECT_LE(max_abs(a.matrix() - oracle_exp(h.matrix(), theta)), 1e-9);
    EXPECT_TRUE(is_unitary(a.matrix(), 1e-10));
  }
}

TEST(UnitaryOperator, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryOperator(2.0 * CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(SpinAlong, InterpolatesBetweenAxes) {
  const auto r = spin_representation(1);
  EXPECT_LE(max_abs(spin_along(1, 0.0).matrix() - jz(r).matrix()), 1e-15);
  EXPECT_LE(max_abs(spin_along(1, kPi / 2).matrix() - jx(r).matrix()), 1e-15);
}
