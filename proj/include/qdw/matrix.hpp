// Dense complex-matrix primitives shared by every other module.
//
// Composite indices are A-major everywhere: for a dA x dB system the basis
// state |a>|b> sits at row/column a * dB + b.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdw {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealMatrix = Matrix<double>;
using RealVector = Vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dense path was requested above its size cap.
class CapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { A, B };

/// Hermiticity tolerance on max |m - m^dagger| entry.
inline constexpr double kHermitianTol = 1e-10;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Kronecker product; the composite row index is i_a * rows(b) + i_b.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Partial trace of a (dA*dB)-square matrix. keep == Subsystem::A traces out
/// B and returns dA x dA; keep == Subsystem::B traces out A.
template <typename Derived>
Matrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                               Eigen::Index dA, Eigen::Index dB,
                                               Subsystem keep) {
  using Scalar = typename Derived::Scalar;
  if (dA <= 0 || dB <= 0 || m.rows() != dA * dB || m.cols() != dA * dB) {
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(dA * dB) + " square");
  }
  if (keep == Subsystem::A) {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dA, dA);
    for (Eigen::Index a = 0; a < dA; ++a)
      for (Eigen::Index c = 0; c < dA; ++c)
        out(a, c) = m.block(a * dB, c * dB, dB, dB).trace();
    return out;
  }
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dB, dB);
  for (Eigen::Index a = 0; a < dA; ++a) out += m.block(a * dB, a * dB, dB, dB);
  return out;
}

/// Tr(a^dagger b).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar frobenius_inner(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_inner: dimension mismatch");
  }
  return (a.adjoint() * b).trace();
}

/// max_ij |m_ij - conj(m_ji)|
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> commutator(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  return a * b - b * a;
}

struct HermitianEigen {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns, matching values
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
/// Throws std::invalid_argument when the input is not Hermitian within
/// kHermitianTol.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qdw
