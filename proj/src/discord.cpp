#include "qdw/discord.hpp"

#include "qdw/loo.hpp"
#include "qdw/witness.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace qdw {
namespace {

constexpr double kEmptyOutcome = 1e-12;

double entropy_bits(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

// Tr_A((P (x) I) rho), unnormalized.
ComplexMatrix conditional_block(const ComplexMatrix& rho, const ComplexMatrix& proj, int dA, int dB) {
  ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
  for (int a = 0; a < dA; ++a)
    for (int c = 0; c < dA; ++c)
      if (proj(c, a) != Complex{0.0, 0.0}) out += proj(c, a) * rho.block(a * dB, c * dB, dB, dB);
  return out;
}

double wrap_phi(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  return phi < 0.0 ? phi + two_pi : phi;
}

BlochAngles normalize_angles(double theta, double phi) {
  const double pi = std::numbers::pi;
  theta = std::fmod(theta, 2.0 * pi);
  if (theta < 0.0) theta += 2.0 * pi;
  if (theta > pi) {
    theta = 2.0 * pi - theta;
    phi += pi;
  }
  return {theta, wrap_phi(phi)};
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
  const StateDiagnostics d = diagnose(rho);
  if (!d.ok()) throw std::invalid_argument("von_neumann_entropy: input is not a density matrix");
  return entropy_bits(rho);
}

void check_measurement(const Measurement& m, int dA) {
  if (m.projectors.empty()) throw std::invalid_argument("measurement has no projectors");
  ComplexMatrix sum = ComplexMatrix::Zero(dA, dA);
  for (std::size_t i = 0; i < m.projectors.size(); ++i) {
    const auto& p = m.projectors[i];
    if (p.rows() != dA || p.cols() != dA) throw std::invalid_argument("measurement: projector size mismatch");
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("measurement: projector not idempotent");
    for (std::size_t j = i + 1; j < m.projectors.size(); ++j)
      if ((p * m.projectors[j]).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("measurement: projectors not orthogonal");
    sum += p;
  }
  if ((sum - ComplexMatrix::Identity(dA, dA)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("measurement: projectors do not sum to the identity");
  }
}

Measurement qubit_measurement(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const ComplexMatrix n_sigma = nx * pauli_x() + ny * pauli_y() + nz * pauli_z();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  Measurement m;
  m.projectors = {0.5 * (id + n_sigma), 0.5 * (id - n_sigma)};
  m.angles = BlochAngles{theta, phi};
  return m;
}

Measurement basis_measurement(const ComplexMatrix& basis) {
  Measurement m;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const ComplexVector v = basis.col(k);
    m.projectors.push_back(v * v.adjoint());
  }
  return m;
}

std::vector<ConditionalOutcome> condition_on(const BipartiteState& state, const Measurement& m) {
  check_measurement(m, state.dA());
  std::vector<ConditionalOutcome> out;
  out.reserve(m.projectors.size());
  for (const auto& proj : m.projectors) {
    const ComplexMatrix block = conditional_block(state.rho(), proj, state.dA(), state.dB());
    ConditionalOutcome o;
    o.p = block.trace().real();
    if (o.p > kEmptyOutcome) {
      const ComplexMatrix rb = block / o.p;
      o.rho_b = 0.5 * (rb + rb.adjoint());
    }
    out.push_back(std::move(o));
  }
  return out;
}

QubitDiscordObjective::QubitDiscordObjective(const BipartiteState& state)
    : dB_(state.dB()), rho_(state.rho()) {
  if (state.dA() != 2) {
    throw std::invalid_argument("discord_qubit_A: subsystem A must be a qubit, got dA = " +
                                std::to_string(state.dA()));
  }
  offset_ = entropy_bits(state.reduced_A()) - entropy_bits(state.rho());
}

double QubitDiscordObjective::operator()(double theta, double phi) const {
  const Measurement m = qubit_measurement(theta, phi);
  double conditional = 0.0;
  for (const auto& proj : m.projectors) {
    const ComplexMatrix block = conditional_block(rho_, proj, 2, dB_);
    const double p = block.trace().real();
    if (p > kEmptyOutcome) conditional += p * entropy_bits(block / p);
  }
  return conditional + offset_;
}

DiscordResult discord_qubit_A(const BipartiteState& state, int grid, int refine_steps) {
  if (grid < 2) throw std::invalid_argument("discord_qubit_A: grid must be at least 2");
  const QubitDiscordObjective f(state);
  const double pi = std::numbers::pi;
  const double d_theta = pi / (grid - 1);
  const double d_phi = 2.0 * pi / grid;

  double best = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  double phi = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double value = f(i * d_theta, j * d_phi);
      if (value < best) {
        best = value;
        theta = i * d_theta;
        phi = j * d_phi;
      }
    }
  }

  DiscordResult result;
  result.grid_resolution = grid;
  double step_theta = d_theta;
  double step_phi = d_phi;
  for (int iter = 0; iter < refine_steps && step_theta > 1e-12; ++iter) {
    const std::array<std::pair<double, double>, 4> moves{
        {{step_theta, 0.0}, {-step_theta, 0.0}, {0.0, step_phi}, {0.0, -step_phi}}};
    double move_best = best;
    int chosen = -1;
    for (int k = 0; k < 4; ++k) {
      const double value = f(theta + moves[k].first, phi + moves[k].second);
      if (value < move_best) {
        move_best = value;
        chosen = k;
      }
    }
    if (chosen < 0) {
      step_theta *= 0.5;
      step_phi *= 0.5;
      continue;
    }
    theta += moves[chosen].first;
    phi += moves[chosen].second;
    best = move_best;
    result.refined = true;
  }

  result.raw_value = best;
  result.value = std::max(0.0, best);
  result.optimal_angles = normalize_angles(theta, phi);
  return result;
}

std::optional<CQSpec> cq_reconstruct(const BipartiteState& state, double tol) {
  const int dA = state.dA();
  const int dB = state.dB();
  const PartialExpansion expansion = partial_expansion(state, default_basis(dB));
  if (max_commutator_norm(expansion) > tol) return std::nullopt;

  constexpr int kAttempts = 8;
  Rng rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    ComplexMatrix mix = ComplexMatrix::Zero(dA, dA);
    for (const auto& comp : expansion.components) mix += normal(rng) * comp;
    const HermitianEigen eig = eig_hermitian(0.5 * (mix + mix.adjoint()));

    CQSpec spec;
    spec.basis = eig.vectors;
    for (int k = 0; k < dA; ++k) {
      const ComplexVector ket = eig.vectors.col(k);
      const ComplexMatrix block = conditional_block(state.rho(), ket * ket.adjoint(), dA, dB);
      const double p = std::max(0.0, block.trace().real());
      spec.probs.push_back(p);
      if (p > 1e-10) {
        const ComplexMatrix rb = block / p;
        spec.blocks.push_back(0.5 * (rb + rb.adjoint()));
      } else {
        spec.blocks.push_back(ComplexMatrix::Identity(dB, dB) / static_cast<double>(dB));
      }
    }
    double total = 0.0;
    for (double p : spec.probs) total += p;
    for (double& p : spec.probs) p /= total;

    try {
      const BipartiteState rebuilt = assemble_cq(spec);
      if ((rebuilt.rho() - state.rho()).norm() <= 10.0 * tol) return spec;
    } catch (const std::invalid_argument&) {
      // numerically invalid block; retry with fresh weights
    }
  }
  throw std::runtime_error("cq_reconstruct: commuting expansion but no common eigenbasis reproduced the state");
}

}  // namespace qdw
