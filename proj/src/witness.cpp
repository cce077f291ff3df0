#include "qdw/witness.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qdw {
namespace {

// Neumaier-compensated running sum; fixed summation order keeps results
// reproducible.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

struct Digits {
  std::array<int, kCopies> a;
  std::array<int, kCopies> b;
};

Digits split(std::uint32_t n, int dA, int dB) {
  const int d = dA * dB;
  Digits out{};
  for (int k = kCopies - 1; k >= 0; --k) {
    const int nk = static_cast<int>(n % d);
    n /= d;
    out.a[k] = nk / dB;
    out.b[k] = nk % dB;
  }
  return out;
}

std::uint32_t join(const Digits& x, int dA, int dB) {
  const int d = dA * dB;
  std::uint32_t n = 0;
  for (int k = 0; k < kCopies; ++k) n = n * d + x.a[k] * dB + x.b[k];
  return n;
}

std::uint32_t four_copy_dim(int dA, int dB) {
  const auto d = static_cast<std::uint32_t>(dA * dB);
  return d * d * d * d;
}

// Builds the sparse operator sending |n> to |image(n)>.
template <typename Map>
SparseReal basis_map_operator(int dA, int dB, Map image) {
  const auto total = four_copy_dim(dA, dB);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(total);
  for (std::uint32_t n = 0; n < total; ++n) {
    const Digits out = image(split(n, dA, dB));
    entries.emplace_back(join(out, dA, dB), n, 1.0);
  }
  SparseReal m(total, total);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

void check_dims(int dA, int dB) {
  if (dA < 1 || dB < 1) throw DimensionError("witness: dimensions must be positive");
}

}  // namespace

std::vector<WitnessTerm> witness_terms() {
  const auto x = perm::X();
  const auto xd = x.inverse();
  return {
      {0.5, {x, perm::cross_pairs()}},
      {0.5, {xd, perm::cross_pairs()}},
      {-0.5, {x, perm::adjacent_pairs()}},
      {-0.5, {xd, perm::adjacent_pairs()}},
  };
}

SparseReal swap_operator(Subsystem which, int i, int j, int dA, int dB) {
  check_dims(dA, dB);
  if (i < 1 || i > kCopies || j < 1 || j > kCopies) {
    throw std::invalid_argument("swap_operator: copy labels must be in 1..4");
  }
  return basis_map_operator(dA, dB, [&](Digits x) {
    auto& digits = which == Subsystem::A ? x.a : x.b;
    std::swap(digits[i - 1], digits[j - 1]);
    return x;
  });
}

SparseReal cyclic_shift_operator_A(int dA, int dB) {
  check_dims(dA, dB);
  // X |m1 m2 m3 m4> = |m4 m1 m2 m3> on the A digits.
  return basis_map_operator(dA, dB, [](Digits x) {
    const auto m = x.a;
    x.a = {m[3], m[0], m[1], m[2]};
    return x;
  });
}

WitnessOperator build_witness_operator(int dA, int dB, bool dense) {
  check_dims(dA, dB);
  WitnessOperator op;
  op.dA = dA;
  op.dB = dB;
  op.terms = witness_terms();
  if (!dense) return op;
  if (dA * dB > kDenseCopyDimCap) {
    throw CapExceeded("build_witness_operator: dense W needs dA*dB <= " +
                      std::to_string(kDenseCopyDimCap) + ", got " + std::to_string(dA * dB));
  }
  const SparseReal x = SparseReal(swap_operator(Subsystem::A, 1, 2, dA, dB) *
                                  swap_operator(Subsystem::A, 2, 3, dA, dB)) *
                       swap_operator(Subsystem::A, 3, 4, dA, dB);
  const SparseReal direct = cyclic_shift_operator_A(dA, dB);
  if ((RealMatrix(x) - RealMatrix(direct)).cwiseAbs().maxCoeff() != 0.0) {
    throw std::logic_error("build_witness_operator: V12 V23 V34 differs from the cyclic shift");
  }
  const SparseReal x_sym = 0.5 * (x + SparseReal(x.transpose()));
  const SparseReal cross = swap_operator(Subsystem::B, 1, 3, dA, dB) *
                           swap_operator(Subsystem::B, 2, 4, dA, dB);
  const SparseReal adjacent = swap_operator(Subsystem::B, 1, 2, dA, dB) *
                              swap_operator(Subsystem::B, 3, 4, dA, dB);
  const SparseReal w = x_sym * SparseReal(cross - adjacent);
  op.dense = RealMatrix(w).cast<Complex>();
  return op;
}

LOOBasis default_basis(int dB) {
  if (dB == 1) return LOOBasis{1, {ComplexMatrix::Identity(1, 1)}};
  return gell_mann_basis(dB);
}

double eval_commutator(const PartialExpansion& expansion) {
  const auto& r = expansion.components;
  std::vector<ComplexMatrix> squares;
  squares.reserve(r.size());
  for (const auto& m : r) squares.push_back(m * m);
  CompensatedSum total;
  for (std::size_t mu = 0; mu < r.size(); ++mu) {
    for (std::size_t nu = 0; nu < r.size(); ++nu) {
      const ComplexMatrix prod = r[mu] * r[nu];
      // Tr((r_mu r_nu)^2) = sum_ij prod(i,j) prod(j,i).
      const double chained = prod.cwiseProduct(prod.transpose()).sum().real();
      const double squared = squares[mu].cwiseProduct(squares[nu].transpose()).sum().real();
      total.add(chained - squared);
    }
  }
  return total.value();
}

double eval_commutator(const BipartiteState& state, const LOOBasis& basis) {
  return eval_commutator(partial_expansion(state, basis));
}

double eval_commutator(const BipartiteState& state) {
  return eval_commutator(state, default_basis(state.dB()));
}

double commutator_norm_form(const PartialExpansion& expansion) {
  const auto& r = expansion.components;
  CompensatedSum total;
  for (std::size_t mu = 0; mu < r.size(); ++mu)
    for (std::size_t nu = 0; nu < r.size(); ++nu) total.add(commutator(r[mu], r[nu]).squaredNorm());
  return -0.5 * total.value();
}

ComplexMatrix four_copies(const ComplexMatrix& rho, int dA, int dB) {
  if (dA * dB > kDenseCopyDimCap) {
    throw CapExceeded("four_copies: dense rho^(x)4 needs dA*dB <= " +
                      std::to_string(kDenseCopyDimCap));
  }
  const ComplexMatrix two = kron(rho, rho);
  return kron(two, two);
}

double eval_permutation(const BipartiteState& state, const WitnessOperator& op) {
  if (op.dA != state.dA() || op.dB != state.dB()) {
    throw DimensionError("eval_permutation: operator dimensions do not match the state");
  }
  if (op.dense) {
    const ComplexMatrix rho4 = four_copies(state.rho(), state.dA(), state.dB());
    // Tr(W rho4) = sum_ij W(i,j) rho4(j,i)
    return op.dense->cwiseProduct(rho4.transpose()).sum().real();
  }
  CompensatedSum total;
  for (const auto& term : op.terms) {
    total.add(term.coefficient *
              permutation_trace(state.rho(), state.dA(), state.dB(), term.perm).real());
  }
  return total.value();
}

double eval_permutation(const BipartiteState& state, PermutationPath path) {
  if (path == PermutationPath::Dense && state.dim() > kDenseCopyDimCap) {
    throw CapExceeded("eval_permutation: dense path needs dA*dB <= " +
                      std::to_string(kDenseCopyDimCap) + ", got " + std::to_string(state.dim()));
  }
  const auto op = build_witness_operator(state.dA(), state.dB(), path == PermutationPath::Dense);
  return eval_permutation(state, op);
}

ZeroDiscordVerdict is_zero_discord(const BipartiteState& state, double threshold) {
  const double value = eval_commutator(state);
  return {std::abs(value) <= threshold, value};
}

}  // namespace qdw
