#include "oracles.hpp"
#include "qdw/matrix.hpp"
#include "qdw/states.hpp"

#include <gtest/gtest.h>

using namespace qdw;

namespace {

ComplexMatrix random_complex(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed);
  return ginibre(rows, cols, rng);
}

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  const ComplexMatrix g = random_complex(d, d, seed);
  return 0.5 * (g + g.adjoint());
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(kron(id2, id2), ComplexMatrix::Identity(4, 4));
}

TEST(Kron, PauliEntriesFollowCompositeIndex) {
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sz = pauli_z();
  const ComplexMatrix k = kron(sx, sz);
  ASSERT_EQ(k.rows(), 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_EQ(k(i * 2 + r, j * 2 + c), sx(i, j) * sz(r, c));
}

TEST(Kron, TraceFactorsAndMatchesLoopOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix a = random_complex(3, 3, seed);
    const ComplexMatrix b = random_complex(3, 3, seed + 100);
    const ComplexMatrix k = kron(a, b);
    EXPECT_LT(max_abs(k - oracle::kron_loop(a, b)), 1e-15);
    EXPECT_LT(std::abs(k.trace() - a.trace() * b.trace()), 1e-12);
  }
}

TEST(Kron, Associative) {
  const ComplexMatrix a = random_complex(2, 3, 1);
  const ComplexMatrix b = random_complex(3, 2, 2);
  const ComplexMatrix c = random_complex(2, 2, 3);
  EXPECT_LT(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-14);
}

TEST(PartialTrace, ProductStateKeepsFactor) {
  const ComplexMatrix rhoA = random_density(2, 2, std::uint64_t{4});
  const ComplexMatrix rhoB = random_density(3, 3, std::uint64_t{5});
  const ComplexMatrix m = kron(rhoA, rhoB);
  EXPECT_LT(max_abs(partial_trace(m, 2, 3, Subsystem::A) - rhoA), 1e-14);
  EXPECT_LT(max_abs(partial_trace(m, 2, 3, Subsystem::B) - rhoB), 1e-14);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const ComplexMatrix rho = bell_state().rho();
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  EXPECT_LT(max_abs(partial_trace(rho, 2, 2, Subsystem::B) - half), 1e-15);
  EXPECT_LT(max_abs(partial_trace(rho, 2, 2, Subsystem::A) - half), 1e-15);
}

TEST(PartialTrace, AMajorIndexConvention) {
  // |1>_A |2>_B in a 2 x 3 system sits at index 1 * 3 + 2 = 5.
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  m(5, 5) = 1.0;
  const ComplexMatrix a = partial_trace(m, 2, 3, Subsystem::A);
  const ComplexMatrix b = partial_trace(m, 2, 3, Subsystem::B);
  EXPECT_EQ(a(1, 1), Complex(1.0));
  EXPECT_EQ(a(0, 0), Complex(0.0));
  EXPECT_EQ(b(2, 2), Complex(1.0));
}

TEST(PartialTrace, MatchesIndexSumOracleAndPreservesTrace) {
  for (auto [dA, dB] : {std::pair{2, 3}, {3, 2}, {3, 4}}) {
    const ComplexMatrix m = random_hermitian(dA * dB, dA * 10 + dB);
    const ComplexMatrix ra = partial_trace(m, dA, dB, Subsystem::A);
    const ComplexMatrix rb = partial_trace(m, dA, dB, Subsystem::B);
    EXPECT_LT(max_abs(ra - oracle::trace_out_B(m, dA, dB)), 1e-13);
    EXPECT_LT(max_abs(rb - oracle::trace_out_A(m, dA, dB)), 1e-13);
    EXPECT_LT(std::abs(ra.trace() - m.trace()), 1e-12);
    EXPECT_LT(std::abs(rb.trace() - m.trace()), 1e-12);
  }
}

TEST(PartialTrace, Linear) {
  const ComplexMatrix m = random_complex(6, 6, 7);
  const ComplexMatrix n = random_complex(6, 6, 8);
  const Complex alpha{0.3, -1.2};
  const Complex beta{2.0, 0.5};
  const ComplexMatrix lhs = partial_trace((alpha * m + beta * n).eval(), 2, 3, Subsystem::A);
  const ComplexMatrix rhs =
      alpha * partial_trace(m, 2, 3, Subsystem::A) + beta * partial_trace(n, 2, 3, Subsystem::A);
  EXPECT_LT(max_abs(lhs - rhs), 1e-13);
}

TEST(PartialTrace, RejectsDimensionMismatch) {
  const ComplexMatrix m = ComplexMatrix::Identity(5, 5);
  EXPECT_THROW(partial_trace(m, 2, 3, Subsystem::A), DimensionError);
  const ComplexMatrix rect = ComplexMatrix::Zero(6, 4);
  EXPECT_THROW(partial_trace(rect, 2, 3, Subsystem::B), DimensionError);
}

TEST(EigHermitian, PauliZ) {
  const auto e = eig_hermitian(pauli_z());
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), -1.0, 1e-15);
}

TEST(EigHermitian, HalfIdentity) {
  const auto e = eig_hermitian(ComplexMatrix::Identity(2, 2) / 2.0);
  EXPECT_NEAR(e.values(0), 0.5, 1e-15);
  EXPECT_NEAR(e.values(1), 0.5, 1e-15);
}

TEST(EigHermitian, ReconstructsRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix m = random_hermitian(6, 1000 + seed);
    const auto e = eig_hermitian(m);
    const ComplexMatrix& v = e.vectors;
    const ComplexMatrix rebuilt = v * e.values.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT((rebuilt - m).norm(), 1e-9);
    EXPECT_LT((v.adjoint() * v - ComplexMatrix::Identity(6, 6)).norm(), 1e-9);
    EXPECT_NEAR(e.values.sum(), m.trace().real(), 1e-9);
    for (int i = 1; i < 6; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  }
}

TEST(EigHermitian, RejectsNonHermitian) {
  ComplexMatrix m = pauli_z();
  m(0, 1) = 1e-6;
  EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
}

TEST(FrobeniusInner, Paulis) {
  EXPECT_NEAR(std::abs(frobenius_inner(pauli_x(), pauli_x()) - Complex(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(frobenius_inner(pauli_x(), pauli_y())), 0.0, 1e-15);
}

TEST(FrobeniusInner, SelfInnerIsSquaredEntrySum) {
  const ComplexMatrix a = random_complex(4, 3, 9);
  double direct = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) direct += std::norm(a(i, j));
  const Complex inner = frobenius_inner(a, a);
  EXPECT_NEAR(inner.real(), direct, 1e-12);
  EXPECT_NEAR(inner.imag(), 0.0, 1e-12);
}

TEST(FrobeniusInner, RejectsDimensionMismatch) {
  EXPECT_THROW(frobenius_inner(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)),
               DimensionError);
}
