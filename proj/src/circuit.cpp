#include "qdw/circuit.hpp"

#include "qdw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qdw {
namespace {

std::size_t copy_space_dim(int dA, int dB) {
  const auto d = static_cast<std::size_t>(dA * dB);
  return d * d * d * d;
}

void check_cap(const BipartiteState& state) {
  if (state.dim() > kDenseCopyDimCap) {
    throw CapExceeded("circuit: simulation needs dA*dB <= " + std::to_string(kDenseCopyDimCap) +
                      ", got " + std::to_string(state.dim()));
  }
}

void check_ancilla(int ancilla) {
  if (ancilla != 1 && ancilla != 2) throw std::invalid_argument("ancilla index must be 1 or 2");
}

// Ancilla blocks are indexed 2 * a1 + a2.
std::size_t ancilla_mask(int ancilla) { return ancilla == 1 ? 2 : 1; }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent stream for one shot.
class ShotStream {
 public:
  ShotStream(std::uint64_t seed, std::uint64_t shot) {
    std::uint64_t s = seed;
    state_ = splitmix64(s) ^ (shot * 0xD1B54A32D192ED03ULL);
    splitmix64(state_);
  }
  double uniform() { return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::size_t draw(const std::vector<double>& cumulative, double u) {
  const double target = u * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

struct Gates {
  ControlledPermutation first;
  ControlledPermutation second;

  Gates(const BipartiteState& state, GateOrder order)
      : first(order == GateOrder::FirstThenSecond ? 1 : 2,
              circuit_gate(order == GateOrder::FirstThenSecond ? 1 : 2), state.dA(), state.dB()),
        second(order == GateOrder::FirstThenSecond ? 2 : 1,
               circuit_gate(order == GateOrder::FirstThenSecond ? 2 : 1), state.dA(), state.dB()) {}

  ComplexVector run(const ComplexVector& reg) const { return second.apply(first.apply(reg)); }
};

// Calls fn(term, weight, register-after-circuit) for every term of the four-copy
// ensemble, in lexicographic term order.
template <typename Fn>
void for_each_term(const CopyEnsemble& ens, const Gates& gates, Fn fn) {
  const std::size_t r = ens.weights.size();
  std::array<std::size_t, kCopies> idx{};
  while (true) {
    double w = 1.0;
    std::array<ComplexVector, kCopies> copies;
    for (int k = 0; k < kCopies; ++k) {
      w *= ens.weights[idx[k]];
      copies[k] = ens.vectors[idx[k]];
    }
    fn(idx, w, gates.run(initial_register(std::span<const ComplexVector, kCopies>(copies))));
    int k = kCopies - 1;
    while (k >= 0 && ++idx[k] == r) idx[k--] = 0;
    if (k < 0) break;
  }
}

}  // namespace

PermutationSpec circuit_gate(int ancilla) {
  check_ancilla(ancilla);
  return {perm::X(), ancilla == 1 ? perm::adjacent_pairs() : perm::cross_pairs()};
}

std::size_t register_dim(int dA, int dB) { return 4 * copy_space_dim(dA, dB); }

ControlledPermutation::ControlledPermutation(int ancilla, const PermutationSpec& u, int dA, int dB)
    : ancilla_(ancilla), copy_dim_(copy_space_dim(dA, dB)), source_(source_index_table(u, dA, dB)) {
  check_ancilla(ancilla);
}

ComplexVector ControlledPermutation::apply(const ComplexVector& reg) const {
  if (static_cast<std::size_t>(reg.size()) != 4 * copy_dim_) {
    throw DimensionError("apply_controlled_permutation: register has dimension " +
                         std::to_string(reg.size()) + ", expected " +
                         std::to_string(4 * copy_dim_));
  }
  ComplexVector out = reg;
  const std::size_t mask = ancilla_mask(ancilla_);
  for (std::size_t block = 0; block < 4; ++block) {
    if ((block & mask) == 0) continue;
    const std::size_t offset = block * copy_dim_;
    for (std::size_t n = 0; n < copy_dim_; ++n) out[offset + n] = reg[offset + source_[n]];
  }
  return out;
}

ComplexVector apply_controlled_permutation(const ComplexVector& reg, int ancilla,
                                           const PermutationSpec& u, int dA, int dB) {
  return ControlledPermutation(ancilla, u, dA, dB).apply(reg);
}

ComplexVector initial_register(std::span<const ComplexVector, kCopies> copies) {
  ComplexVector product = copies[0];
  for (int k = 1; k < kCopies; ++k) product = kron(product, copies[k]);
  const auto n = product.size();
  ComplexVector reg(4 * n);
  // |+>|+> contributes amplitude 1/2 to each ancilla block.
  for (Eigen::Index block = 0; block < 4; ++block) reg.segment(block * n, n) = 0.5 * product;
  return reg;
}

ComplexMatrix ancilla_state(const ComplexVector& reg, int ancilla) {
  check_ancilla(ancilla);
  const auto n = reg.size() / 4;
  // Blocks indexed by (a1, a2).
  auto block = [&](int a1, int a2) { return reg.segment((2 * a1 + a2) * n, n); };
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int other = 0; other < 2; ++other) {
        const auto bx = ancilla == 1 ? block(x, other) : block(other, x);
        const auto by = ancilla == 1 ? block(y, other) : block(other, y);
        out(x, y) += by.dot(bx);  // sum_rest psi_x conj(psi_y)
      }
  return out;
}

double sigma_x_expectation(const ComplexVector& reg, int ancilla) {
  const ComplexMatrix rho = ancilla_state(reg, ancilla);
  return 2.0 * rho(0, 1).real();
}

std::array<double, 4> joint_sigma_x_probabilities(const ComplexVector& reg) {
  const auto n = reg.size() / 4;
  std::array<double, 4> probs{};
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      const double sign1 = s1 ? -1.0 : 1.0;
      const double sign2 = s2 ? -1.0 : 1.0;
      // <s1 s2| in the sigma_x basis: (<0| + sign <1|)/sqrt2 on each ancilla.
      const ComplexVector amp =
          0.5 * (reg.segment(0, n) + sign2 * reg.segment(n, n) + sign1 * reg.segment(2 * n, n) +
                 sign1 * sign2 * reg.segment(3 * n, n));
      probs[2 * s1 + s2] = amp.squaredNorm();
    }
  return probs;
}

CopyEnsemble copy_ensemble(const BipartiteState& state) {
  const HermitianEigen eig = eig_hermitian(state.rho());
  CopyEnsemble ens;
  double kept = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < kEnsembleCutoff) continue;
    ens.weights.push_back(eig.values(i));
    ens.vectors.push_back(eig.vectors.col(i));
    kept += eig.values(i);
  }
  ens.dropped_weight = std::max(0.0, 1.0 - std::pow(kept, 4));
  return ens;
}

CircuitReadout simulate_exact(const BipartiteState& state, GateOrder order) {
  check_cap(state);
  const CopyEnsemble ens = copy_ensemble(state);
  const Gates gates(state, order);
  double sx1 = 0.0;
  double sx2 = 0.0;
  for_each_term(ens, gates, [&](const auto&, double w, const ComplexVector& reg) {
    sx1 += w * sigma_x_expectation(reg, 1);
    sx2 += w * sigma_x_expectation(reg, 2);
  });
  CircuitReadout out;
  out.sx1 = sx1;
  out.sx2 = sx2;
  out.witness = sx2 - sx1;
  out.dropped_weight = ens.dropped_weight;
  return out;
}

CircuitReadout sample_shots(const BipartiteState& state, std::uint64_t shots, std::uint64_t seed) {
  check_cap(state);
  if (shots == 0) throw std::invalid_argument("sample_shots: shots must be positive");
  const CopyEnsemble ens = copy_ensemble(state);
  const Gates gates(state, GateOrder::FirstThenSecond);
  const std::size_t r = ens.weights.size();

  // Joint outcome distribution of every ensemble term, as cumulative tables.
  std::vector<std::array<double, 4>> outcome_cdf(r * r * r * r);
  for_each_term(ens, gates, [&](const std::array<std::size_t, kCopies>& idx, double,
                                const ComplexVector& reg) {
    const std::size_t t = ((idx[0] * r + idx[1]) * r + idx[2]) * r + idx[3];
    auto p = joint_sigma_x_probabilities(reg);
    std::partial_sum(p.begin(), p.end(), p.begin());
    outcome_cdf[t] = p;
  });
  std::vector<double> weight_cdf(r);
  std::partial_sum(ens.weights.begin(), ens.weights.end(), weight_cdf.begin());

  std::int64_t sum1 = 0;
  std::int64_t sum2 = 0;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    ShotStream rng(seed, shot);
    std::size_t t = 0;
    for (int k = 0; k < kCopies; ++k) t = t * r + draw(weight_cdf, rng.uniform());
    const auto& cdf = outcome_cdf[t];
    const double u = rng.uniform() * cdf[3];
    int outcome = 3;
    for (int o = 0; o < 3; ++o)
      if (u < cdf[o]) {
        outcome = o;
        break;
      }
    sum1 += (outcome & 2) ? -1 : 1;
    sum2 += (outcome & 1) ? -1 : 1;
  }
  CircuitReadout out;
  const double n = static_cast<double>(shots);
  out.sx1 = static_cast<double>(sum1) / n;
  out.sx2 = static_cast<double>(sum2) / n;
  out.witness = out.sx2 - out.sx1;
  out.shots = shots;
  out.stderr1 = std::sqrt(std::max(0.0, 1.0 - out.sx1 * out.sx1) / n);
  out.stderr2 = std::sqrt(std::max(0.0, 1.0 - out.sx2 * out.sx2) / n);
  out.dropped_weight = ens.dropped_weight;
  return out;
}

}  // namespace qdw
