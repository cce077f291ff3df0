#include "qdw/loo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdw {

RealMatrix swap_matrix(int d) {
  RealMatrix s = RealMatrix::Zero(d * d, d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) s(n1 * d + n2, n2 * d + n1) = 1.0;
  return s;
}

LOODefects check_basis(const LOOBasis& basis) {
  LOODefects out;
  const int d = basis.dim;
  ComplexMatrix completeness = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t mu = 0; mu < basis.size(); ++mu) {
    out.hermiticity = std::max(out.hermiticity, hermiticity_defect(basis[mu]));
    for (std::size_t nu = 0; nu < basis.size(); ++nu) {
      const double target = mu == nu ? 1.0 : 0.0;
      out.orthonormality = std::max(
          out.orthonormality, std::abs((basis[mu] * basis[nu]).trace() - Complex{target, 0.0}));
    }
    completeness += kron(basis[mu], basis[mu]);
  }
  out.completeness =
      (completeness - swap_matrix(d).cast<Complex>()).cwiseAbs().maxCoeff();
  if (static_cast<int>(basis.size()) != d * d) {
    out.completeness = std::numeric_limits<double>::infinity();
  }
  return out;
}

LOOBasis gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be at least 2");
  LOOBasis basis;
  basis.dim = d;
  basis.observables.reserve(static_cast<std::size_t>(d) * d);
  basis.observables.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = g(k, j) = r;
      basis.observables.push_back(std::move(g));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = -i * r;
      g(k, j) = i * r;
      basis.observables.push_back(std::move(g));
    }
  for (int l = 1; l < d; ++l) {
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (int m = 0; m < l; ++m) g(m, m) = c;
    g(l, l) = -c * l;
    basis.observables.push_back(std::move(g));
  }
  return basis;
}

LOOBasis rotate_basis(const LOOBasis& basis, const RealMatrix& o) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (o.rows() != n || o.cols() != n) throw DimensionError("rotate_basis: o must be d^2 x d^2");
  const double defect = (o * o.transpose() - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw std::invalid_argument("rotate_basis: matrix is not orthogonal (defect " +
                                std::to_string(defect) + ")");
  }
  LOOBasis out;
  out.dim = basis.dim;
  out.observables.assign(basis.size(), ComplexMatrix::Zero(basis.dim, basis.dim));
  for (Eigen::Index mu = 0; mu < n; ++mu)
    for (Eigen::Index nu = 0; nu < n; ++nu) out.observables[mu] += o(mu, nu) * basis[nu];
  return out;
}

ComplexMatrix PartialExpansion::reconstruct() const {
  if (components.empty()) return {};
  const auto dA = components.front().rows();
  const int dB = basis.dim;
  ComplexMatrix rho = ComplexMatrix::Zero(dA * dB, dA * dB);
  for (std::size_t mu = 0; mu < components.size(); ++mu) rho += kron(components[mu], basis[mu]);
  return rho;
}

PartialExpansion partial_expansion(const BipartiteState& state, const LOOBasis& basis) {
  const int dA = state.dA();
  const int dB = state.dB();
  if (basis.dim != dB) {
    throw DimensionError("partial_expansion: basis dimension " + std::to_string(basis.dim) +
                         " does not match dB = " + std::to_string(dB));
  }
  PartialExpansion out;
  out.basis = basis;
  out.components.reserve(basis.size());
  const ComplexMatrix& rho = state.rho();
  for (const auto& g : basis.observables) {
    // Tr_B(rho (I (x) G)) entrywise: sum_{b,b'} rho(a b, c b') G(b', b).
    ComplexMatrix comp(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int c = 0; c < dA; ++c)
        comp(a, c) = (rho.block(a * dB, c * dB, dB, dB) * g).trace();
    out.components.push_back(std::move(comp));
  }
  return out;
}

double max_commutator_norm(const PartialExpansion& expansion) {
  double worst = 0.0;
  const auto& c = expansion.components;
  for (std::size_t mu = 0; mu < c.size(); ++mu)
    for (std::size_t nu = mu + 1; nu < c.size(); ++nu)
      worst = std::max(worst, commutator(c[mu], c[nu]).norm());
  return worst;
}

}  // namespace qdw
