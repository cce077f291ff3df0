#include "qdw/loo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qdw;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void expect_valid_basis(const LOOBasis& basis) {
  const auto d = check_basis(basis);
  EXPECT_LE(d.hermiticity, 1e-12);
  EXPECT_LE(d.orthonormality, 1e-12);
  EXPECT_LE(d.completeness, 1e-10);
}

}  // namespace

TEST(GellMann, QubitBasisIsScaledPaulis) {
  const auto basis = gell_mann_basis(2);
  ASSERT_EQ(basis.size(), 4u);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs(basis[0] - s * ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(basis[1] - s * pauli_x()), 1e-15);
  EXPECT_LT(max_abs(basis[2] - s * pauli_y()), 1e-15);
  EXPECT_LT(max_abs(basis[3] - s * pauli_z()), 1e-15);
}

TEST(GellMann, QutritOrthonormal) {
  const auto basis = gell_mann_basis(3);
  ASSERT_EQ(basis.size(), 9u);
  for (std::size_t mu = 0; mu < 9; ++mu)
    for (std::size_t nu = 0; nu < 9; ++nu)
      EXPECT_NEAR(std::abs(frobenius_inner(basis[mu], basis[nu]) - Complex(mu == nu ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(GellMann, CanonicalOrdering) {
  const auto basis = gell_mann_basis(3);
  // identity, symmetric (0,1) (0,2) (1,2), antisymmetric in the same order, diagonals.
  EXPECT_NEAR(basis[0](1, 1).real(), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(basis[2](0, 2).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(basis[6](1, 2).imag(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(basis[7](1, 1).real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(basis[8](2, 2).real(), -2.0 / std::sqrt(6.0), 1e-15);
}

TEST(GellMann, SwapCompletenessUpToFive) {
  for (int d = 2; d <= 5; ++d) {
    const auto basis = gell_mann_basis(d);
    ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& g : basis.observables) sum += kron(g, g);
    // SWAP |n1 n2> = |n2 n1>
    for (int n1 = 0; n1 < d; ++n1)
      for (int n2 = 0; n2 < d; ++n2)
        for (int m1 = 0; m1 < d; ++m1)
          for (int m2 = 0; m2 < d; ++m2) {
            const double expected = (n1 == m2 && n2 == m1) ? 1.0 : 0.0;
            EXPECT_NEAR(std::abs(sum(n1 * d + n2, m1 * d + m2) - expected), 0.0, 1e-10);
          }
    expect_valid_basis(basis);
  }
}

TEST(GellMann, RejectsTrivialDimension) {
  EXPECT_THROW(gell_mann_basis(1), std::invalid_argument);
  EXPECT_THROW(gell_mann_basis(0), std::invalid_argument);
}

TEST(RotateBasis, IdentityLeavesBasisUnchanged) {
  const auto basis = gell_mann_basis(3);
  const auto rotated = rotate_basis(basis, RealMatrix::Identity(9, 9));
  for (std::size_t mu = 0; mu < basis.size(); ++mu) EXPECT_EQ(rotated[mu], basis[mu]);
}

TEST(RotateBasis, RandomOrthogonalKeepsInvariants) {
  Rng rng(5);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      expect_valid_basis(rotate_basis(gell_mann_basis(d), haar_orthogonal(d * d, rng)));
    }
  }
}

TEST(RotateBasis, RejectsNonOrthogonal) {
  RealMatrix o = RealMatrix::Identity(4, 4);
  o(0, 1) = 0.1;
  EXPECT_THROW(rotate_basis(gell_mann_basis(2), o), std::invalid_argument);
  EXPECT_THROW(rotate_basis(gell_mann_basis(2), RealMatrix::Identity(3, 3)), DimensionError);
}

TEST(PartialExpansion, ProductStateComponentsAreProportional) {
  const ComplexMatrix rhoA = random_density(3, 3, std::uint64_t{1});
  const ComplexMatrix rhoB = random_density(2, 2, std::uint64_t{2});
  const auto basis = gell_mann_basis(2);
  const auto exp = partial_expansion(product_state(rhoA, rhoB), basis);
  for (std::size_t mu = 0; mu < basis.size(); ++mu) {
    const Complex coeff = (rhoB * basis[mu]).trace();
    EXPECT_LT(max_abs(exp.components[mu] - coeff * rhoA), 1e-15);
  }
  EXPECT_LE(max_commutator_norm(exp), 1e-15);
}

TEST(PartialExpansion, BellComponents) {
  const auto exp = partial_expansion(bell_state(), gell_mann_basis(2));
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  EXPECT_LT(max_abs(exp.components[0] - c * ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(exp.components[1] - c * pauli_x()), 1e-15);
  EXPECT_LT(max_abs(exp.components[2] + c * pauli_y()), 1e-15);
  EXPECT_LT(max_abs(exp.components[3] - c * pauli_z()), 1e-15);
}

TEST(PartialExpansion, ReconstructsAndSatisfiesParseval) {
  for (auto [dA, dB] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    const auto basis = gell_mann_basis(dB);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto state = random_state(dA, dB, dA * dB, seed);
      const auto exp = partial_expansion(state, basis);
      ASSERT_LE((exp.reconstruct() - state.rho()).norm(), 1e-10);
      double parseval = 0.0;
      for (const auto& c : exp.components) {
        ASSERT_LE(hermiticity_defect(c), 1e-10);
        parseval += (c.adjoint() * c).trace().real();
      }
      ASSERT_NEAR(parseval, purity(state.rho()), 1e-10);
    }
  }
}

TEST(PartialExpansion, CqStatesCommute) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto state = assemble_cq(random_cq_spec(3, 2, seed));
    EXPECT_LE(max_commutator_norm(partial_expansion(state, gell_mann_basis(2))), 1e-10);
  }
}

TEST(PartialExpansion, RejectsWrongBasisDimension) {
  EXPECT_THROW(partial_expansion(bell_state(), gell_mann_basis(3)), DimensionError);
}
