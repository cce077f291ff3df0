// Projective-measurement discord D_A for a qubit A, and reconstruction of the
// classical-quantum form of zero-discord states.

#pragma once

#include "qdw/states.hpp"

#include <optional>
#include <vector>

namespace qdw {

/// -Tr(rho log2 rho), eigenvalues clamped to [0, 1]. Throws
/// std::invalid_argument for a non-density input.
double von_neumann_entropy(const ComplexMatrix& rho);

struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// Complete set of orthogonal rank-1 projectors on A.
struct Measurement {
  std::vector<ComplexMatrix> projectors;
  std::optional<BlochAngles> angles;  // set for qubit measurements
};

/// Throws std::invalid_argument unless the projectors are idempotent,
/// mutually orthogonal and sum to the identity (all within 1e-10).
void check_measurement(const Measurement& m, int dA);

/// Pi_{+-} = (I +- n.sigma)/2 with n = (sin t cos p, sin t sin p, cos t).
Measurement qubit_measurement(double theta, double phi);
/// Projectors onto the columns of a unitary.
Measurement basis_measurement(const ComplexMatrix& basis);

struct ConditionalOutcome {
  double p = 0.0;
  std::optional<ComplexMatrix> rho_b;  // empty when p <= 1e-12
};

std::vector<ConditionalOutcome> condition_on(const BipartiteState& state, const Measurement& m);

/// f(theta, phi) = sum_i p_i S(rho_B|i) + S(rho_A) - S(rho_AB) for dA = 2.
class QubitDiscordObjective {
 public:
  explicit QubitDiscordObjective(const BipartiteState& state);
  double operator()(double theta, double phi) const;

 private:
  int dB_;
  ComplexMatrix rho_;
  double offset_;  // S(rho_A) - S(rho_AB)
};

struct DiscordResult {
  double value = 0.0;      // clamped at 0
  double raw_value = 0.0;  // minimum before clamping
  BlochAngles optimal_angles;
  int grid_resolution = 0;
  bool refined = false;
};

/// Grid search over grid x grid Bloch angles (theta on [0, pi] including the
/// poles, phi on [0, 2 pi)), then refinement by coordinate descent with a
/// step that halves whenever no move improves. Ties go to the lowest linear
/// grid index. Throws std::invalid_argument unless dA == 2.
DiscordResult discord_qubit_A(const BipartiteState& state, int grid = 64, int refine_steps = 200);

/// If every commutator of the partial expansion has Frobenius norm <= tol,
/// returns a CQSpec whose assembly reproduces the state within 10 * tol.
/// Returns nothing for non-commuting expansions. Throws std::runtime_error
/// when repeated common-eigenbasis attempts fail to reproduce the state.
std::optional<CQSpec> cq_reconstruct(const BipartiteState& state, double tol = 1e-8);

}  // namespace qdw
