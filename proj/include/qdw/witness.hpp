// Four-copy discord witness
//
//   W = 1/2 (X_A + X_A^dagger) (V13^B V24^B - V12^B V34^B)
//
// The signed value Tr(W rho^{(x)4}) is <= 0 and vanishes exactly for
// classical-quantum states (zero discord on A). It is evaluated three ways:
// from the partial expansion (eval_commutator), from the permutation terms of
// W without any operator basis (eval_permutation), and by simulating the
// measurement circuit (see circuit.hpp).

#pragma once

#include "qdw/loo.hpp"
#include "qdw/permutation.hpp"
#include "qdw/states.hpp"

#include <optional>
#include <vector>

namespace qdw {

/// Largest dA*dB for which dense four-copy operators are materialized.
inline constexpr int kDenseCopyDimCap = 6;
inline constexpr double kZeroThreshold = 1e-9;

/// Named permutations of the witness.
namespace perm {
inline CopyPermutation X() { return CopyPermutation::cyclic_shift(); }
inline CopyPermutation V(int i, int j) { return CopyPermutation::transposition(i, j); }
/// V13 V24
inline CopyPermutation cross_pairs() { return V(1, 3) * V(2, 4); }
/// V12 V34
inline CopyPermutation adjacent_pairs() { return V(1, 2) * V(3, 4); }
}  // namespace perm

struct WitnessTerm {
  double coefficient;
  PermutationSpec perm;
};

struct WitnessOperator {
  int dA = 0;
  int dB = 0;
  std::vector<WitnessTerm> terms;
  std::optional<ComplexMatrix> dense;
};

/// The four signed permutation terms of W.
std::vector<WitnessTerm> witness_terms();

/// Explicit swap of copies i, j (labels 1..4) of one subsystem, identity on
/// everything else, built entry by entry.
SparseReal swap_operator(Subsystem which, int i, int j, int dA, int dB);
/// Explicit cyclic shift of the A-copies, built entry by entry.
SparseReal cyclic_shift_operator_A(int dA, int dB);

/// Dense materialization requires dA*dB <= kDenseCopyDimCap and assembles W
/// from explicit swap matrices, with X_A taken as V12 V23 V34. Throws
/// std::logic_error if that product disagrees with the direct cyclic shift.
WitnessOperator build_witness_operator(int dA, int dB, bool dense);

/// Sum over mu, nu of Tr((r_mu r_nu)^2) - Tr(r_mu^2 r_nu^2) from the partial
/// expansion of the state over `basis` (acting on B).
double eval_commutator(const BipartiteState& state, const LOOBasis& basis);
/// Uses the Gell-Mann basis of dimension dB.
double eval_commutator(const BipartiteState& state);
double eval_commutator(const PartialExpansion& expansion);

/// -1/2 sum_{mu nu} ||[r_mu, r_nu]||_F^2, computed from explicit commutators.
double commutator_norm_form(const PartialExpansion& expansion);

enum class PermutationPath { Contraction, Dense };

/// Tr(W rho^{(x)4}) from the permutation terms. The dense path builds W and
/// rho^{(x)4} explicitly and throws CapExceeded when dA*dB > 6.
double eval_permutation(const BipartiteState& state,
                        PermutationPath path = PermutationPath::Contraction);
double eval_permutation(const BipartiteState& state, const WitnessOperator& op);

struct ZeroDiscordVerdict {
  bool zero;
  double value;
};

ZeroDiscordVerdict is_zero_discord(const BipartiteState& state, double threshold = kZeroThreshold);

/// rho^{(x)4} as a dense matrix; CapExceeded above the dense cap.
ComplexMatrix four_copies(const ComplexMatrix& rho, int dA, int dB);

/// Default operator basis on B; the single observable [1] when dB == 1.
LOOBasis default_basis(int dB);

}  // namespace qdw
