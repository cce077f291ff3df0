// Bipartite density matrices and the state families used to exercise the
// witness.

#pragma once

#include "qdw/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qdw {

using Rng = std::mt19937_64;

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

struct StateDiagnostics {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part

  bool ok() const {
    return hermiticity_defect <= kHermitianTol && trace_defect <= kTraceTol &&
           min_eigenvalue >= -kPositivityTol;
  }
};

/// Measures the three density-matrix invariants. Never throws on square input;
/// non-square input reports an infinite hermiticity defect.
StateDiagnostics diagnose(const ComplexMatrix& rho);

/// A validated dA x dB density matrix.
class BipartiteState {
 public:
  /// Throws std::invalid_argument when rho is not a density matrix of size
  /// (dA*dB)^2 within tolerance.
  BipartiteState(int dA, int dB, ComplexMatrix rho);

  int dA() const { return dA_; }
  int dB() const { return dB_; }
  int dim() const { return dA_ * dB_; }
  const ComplexMatrix& rho() const { return rho_; }

  ComplexMatrix reduced_A() const { return partial_trace(rho_, dA_, dB_, Subsystem::A); }
  ComplexMatrix reduced_B() const { return partial_trace(rho_, dA_, dB_, Subsystem::B); }

 private:
  int dA_;
  int dB_;
  ComplexMatrix rho_;
};

StateDiagnostics validate(const BipartiteState& state);

/// Tr(rho^2)
double purity(const ComplexMatrix& rho);

/// Classical-quantum state description: sum_k p_k |k><k| (x) rho_k^B.
struct CQSpec {
  std::vector<double> probs;
  ComplexMatrix basis;  // columns are |k>_A
  std::vector<ComplexMatrix> blocks;

  int dA() const { return static_cast<int>(basis.rows()); }
  int dB() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().rows()); }
};

/// Throws std::invalid_argument if the spec violates its invariants.
void check_cq_spec(const CQSpec& spec);
BipartiteState assemble_cq(const CQSpec& spec);

/// d x d unitary distributed by Haar measure (QR of a complex Ginibre matrix
/// with the phases of diag(R) absorbed into Q).
ComplexMatrix haar_unitary(int d, Rng& rng);
RealMatrix haar_orthogonal(int d, Rng& rng);
/// d x cols matrix of independent standard complex Gaussians.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);
std::vector<double> flat_dirichlet(int n, Rng& rng);

/// G G^dagger / Tr(G G^dagger), G a d x rank Ginibre matrix.
ComplexMatrix random_density(int d, int rank, Rng& rng);
ComplexMatrix random_density(int d, int rank, std::uint64_t seed);

BipartiteState random_state(int dA, int dB, int rank, Rng& rng);
BipartiteState random_state(int dA, int dB, int rank, std::uint64_t seed);

CQSpec random_cq_spec(int dA, int dB, Rng& rng);
CQSpec random_cq_spec(int dA, int dB, std::uint64_t seed);

/// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2).
BipartiteState bell_state();
/// p |Phi+><Phi+| + (1 - p) I/4, p in [0, 1].
BipartiteState werner_family(double p);
BipartiteState maximally_mixed(int dA, int dB);
BipartiteState product_state(const ComplexMatrix& rhoA, const ComplexMatrix& rhoB);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger
BipartiteState local_unitary(const BipartiteState& state, const ComplexMatrix& uA,
                             const ComplexMatrix& uB);
/// Exchanges the roles of A and B.
BipartiteState swap_subsystems(const BipartiteState& state);

}  // namespace qdw
