// Simulation of the two-ancilla measurement circuit.
//
// Register layout: ancilla 1 (most significant qubit), ancilla 2, then the
// four state copies with copy 1 most significant. Both ancillas start in
// |+>; ancilla a controls U_a on the copies,
//   U_1 = X_A V12^B V34^B,   U_2 = X_A V13^B V24^B,
// and <sigma_x^a> = Re Tr(U_a rho^{(x)4}), so the witness value is
// <sigma_x^2> - <sigma_x^1>.

#pragma once

#include "qdw/permutation.hpp"
#include "qdw/states.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qdw {

/// Ensemble eigenvalues below this weight are dropped.
inline constexpr double kEnsembleCutoff = 1e-14;

struct CircuitReadout {
  double sx1 = 0.0;
  double sx2 = 0.0;
  double witness = 0.0;  // sx2 - sx1
  std::optional<std::uint64_t> shots;
  std::optional<double> stderr1;
  std::optional<double> stderr2;
  double dropped_weight = 0.0;  // four-copy ensemble mass discarded by the cutoff
};

/// U_1 for ancilla 1, U_2 for ancilla 2.
PermutationSpec circuit_gate(int ancilla);

std::size_t register_dim(int dA, int dB);

/// [0]_a (x) I + [1]_a (x) U on the register; `ancilla` is 1 or 2.
class ControlledPermutation {
 public:
  ControlledPermutation(int ancilla, const PermutationSpec& u, int dA, int dB);

  ComplexVector apply(const ComplexVector& reg) const;
  int ancilla() const { return ancilla_; }

 private:
  int ancilla_;
  std::size_t copy_dim_;
  std::vector<std::uint32_t> source_;
};

ComplexVector apply_controlled_permutation(const ComplexVector& reg, int ancilla,
                                           const PermutationSpec& u, int dA, int dB);

/// |+>|+> (x) copies[0] (x) ... (x) copies[3]
ComplexVector initial_register(std::span<const ComplexVector, kCopies> copies);

double sigma_x_expectation(const ComplexVector& reg, int ancilla);
/// 2x2 reduced density matrix of one ancilla.
ComplexMatrix ancilla_state(const ComplexVector& reg, int ancilla);
/// Probabilities of the four joint sigma_x outcomes, indexed
/// (s1 == -1) * 2 + (s2 == -1).
std::array<double, 4> joint_sigma_x_probabilities(const ComplexVector& reg);

/// Pure-state ensemble of one copy; rho^{(x)4} is the product ensemble.
struct CopyEnsemble {
  std::vector<double> weights;
  std::vector<ComplexVector> vectors;
  double dropped_weight = 0.0;  // four-copy mass below the cutoff
};

CopyEnsemble copy_ensemble(const BipartiteState& state);

enum class GateOrder { FirstThenSecond, SecondThenFirst };

/// Exact ancilla expectations, weight-averaged over the four-copy ensemble.
/// Throws CapExceeded when dA*dB > 6.
CircuitReadout simulate_exact(const BipartiteState& state,
                              GateOrder order = GateOrder::FirstThenSecond);

/// Per shot: draw an ensemble term, run the circuit, sample both ancillas in
/// the sigma_x (x) sigma_x basis. Shot i uses a random stream derived from
/// (seed, i) only.
CircuitReadout sample_shots(const BipartiteState& state, std::uint64_t shots, std::uint64_t seed);

}  // namespace qdw
