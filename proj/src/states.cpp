#include "qdw/states.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numeric>
#include <string>

namespace qdw {

StateDiagnostics diagnose(const ComplexMatrix& rho) {
  StateDiagnostics d;
  if (rho.rows() != rho.cols() || rho.size() == 0 || !rho.allFinite()) {
    d.hermiticity_defect = std::numeric_limits<double>::infinity();
    d.trace_defect = std::numeric_limits<double>::infinity();
    d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return d;
  }
  d.hermiticity_defect = hermiticity_defect(rho);
  d.trace_defect = std::abs(rho.trace() - Complex{1.0, 0.0});
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

BipartiteState::BipartiteState(int dA, int dB, ComplexMatrix rho)
    : dA_(dA), dB_(dB), rho_(std::move(rho)) {
  if (dA_ < 1 || dB_ < 1) throw DimensionError("BipartiteState: dimensions must be positive");
  if (rho_.rows() != dA_ * dB_ || rho_.cols() != dA_ * dB_) {
    throw DimensionError("BipartiteState: matrix is " + std::to_string(rho_.rows()) + "x" +
                         std::to_string(rho_.cols()) + " for dims " + std::to_string(dA_) +
                         "x" + std::to_string(dB_));
  }
  const StateDiagnostics d = diagnose(rho_);
  if (!d.ok()) {
    throw std::invalid_argument(
        "BipartiteState: not a density matrix (hermiticity defect " +
        std::to_string(d.hermiticity_defect) + ", trace defect " + std::to_string(d.trace_defect) +
        ", min eigenvalue " + std::to_string(d.min_eigenvalue) + ")");
  }
}

StateDiagnostics validate(const BipartiteState& state) { return diagnose(state.rho()); }

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

void check_cq_spec(const CQSpec& spec) {
  const auto dA = spec.basis.rows();
  if (dA < 1 || spec.basis.cols() != dA) throw std::invalid_argument("CQSpec: basis must be square");
  if (static_cast<Eigen::Index>(spec.probs.size()) != dA ||
      static_cast<Eigen::Index>(spec.blocks.size()) != dA) {
    throw std::invalid_argument("CQSpec: need one probability and one block per basis vector");
  }
  double total = 0.0;
  for (double p : spec.probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("CQSpec: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("CQSpec: probabilities do not sum to 1");
  const ComplexMatrix gram = spec.basis.adjoint() * spec.basis;
  if ((gram - ComplexMatrix::Identity(dA, dA)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("CQSpec: basis is not unitary");
  }
  const auto dB = spec.blocks.front().rows();
  for (const auto& block : spec.blocks) {
    if (block.rows() != dB || block.cols() != dB || dB < 1) {
      throw std::invalid_argument("CQSpec: blocks must share one square dimension");
    }
    if (!diagnose(block).ok()) throw std::invalid_argument("CQSpec: block is not a density matrix");
  }
}

BipartiteState assemble_cq(const CQSpec& spec) {
  check_cq_spec(spec);
  const int dA = spec.dA();
  const int dB = spec.dB();
  ComplexMatrix rho = ComplexMatrix::Zero(dA * dB, dA * dB);
  for (int k = 0; k < dA; ++k) {
    const ComplexVector ket = spec.basis.col(k);
    rho += spec.probs[k] * kron(ket * ket.adjoint(), spec.blocks[k]);
  }
  return BipartiteState(dA, dB, std::move(rho));
}

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the seed -> output contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex{re * s, im * s};
    }
  return g;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: d must be positive");
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

RealMatrix haar_orthogonal(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_orthogonal: d must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) z(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  return q;
}

std::vector<double> flat_dirichlet(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  // Absorb the rounding residue so the sum is 1 to the last ulp or two.
  const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  w.back() = std::max(0.0, w.back() + residue);
  return w;
}

ComplexMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1 || rank < 1 || rank > d) {
    throw std::invalid_argument("random_density: need 1 <= rank <= d");
  }
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix random_density(int d, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

BipartiteState random_state(int dA, int dB, int rank, Rng& rng) {
  return BipartiteState(dA, dB, random_density(dA * dB, rank, rng));
}

BipartiteState random_state(int dA, int dB, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dA, dB, rank, rng);
}

CQSpec random_cq_spec(int dA, int dB, Rng& rng) {
  CQSpec spec;
  spec.probs = flat_dirichlet(dA, rng);
  spec.basis = haar_unitary(dA, rng);
  for (int k = 0; k < dA; ++k) spec.blocks.push_back(random_density(dB, dB, rng));
  return spec;
}

CQSpec random_cq_spec(int dA, int dB, std::uint64_t seed) {
  Rng rng(seed);
  return random_cq_spec(dA, dB, rng);
}

BipartiteState bell_state() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return BipartiteState(2, 2, phi * phi.adjoint());
}

BipartiteState werner_family(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_family: p must lie in [0, 1]");
  const ComplexMatrix rho = p * bell_state().rho() + (1.0 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
  return BipartiteState(2, 2, rho);
}

BipartiteState maximally_mixed(int dA, int dB) {
  const int d = dA * dB;
  return BipartiteState(dA, dB, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

BipartiteState product_state(const ComplexMatrix& rhoA, const ComplexMatrix& rhoB) {
  return BipartiteState(static_cast<int>(rhoA.rows()), static_cast<int>(rhoB.rows()),
                        kron(rhoA, rhoB));
}

BipartiteState local_unitary(const BipartiteState& state, const ComplexMatrix& uA,
                             const ComplexMatrix& uB) {
  if (uA.rows() != state.dA() || uB.rows() != state.dB()) {
    throw DimensionError("local_unitary: unitary dimensions do not match the state");
  }
  const ComplexMatrix u = kron(uA, uB);
  return BipartiteState(state.dA(), state.dB(), u * state.rho() * u.adjoint());
}

BipartiteState swap_subsystems(const BipartiteState& state) {
  const int dA = state.dA();
  const int dB = state.dB();
  const int d = dA * dB;
  ComplexMatrix out(d, d);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int a2 = 0; a2 < dA; ++a2)
        for (int b2 = 0; b2 < dB; ++b2)
          out(b * dA + a, b2 * dA + a2) = state.rho()(a * dB + b, a2 * dB + b2);
  return BipartiteState(dB, dA, std::move(out));
}

}  // namespace qdw
