#include "qdw/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qdw {

CopyPermutation::CopyPermutation() : source_{0, 1, 2, 3} {}

CopyPermutation::CopyPermutation(std::array<int, kCopies> source) : source_(source) {
  std::array<bool, kCopies> seen{};
  for (int s : source_) {
    if (s < 0 || s >= kCopies || seen[s]) {
      throw std::invalid_argument("CopyPermutation: source table is not a bijection on 4 copies");
    }
    seen[s] = true;
  }
}

CopyPermutation CopyPermutation::transposition(int i, int j) {
  if (i < 1 || i > kCopies || j < 1 || j > kCopies) {
    throw std::invalid_argument("CopyPermutation::transposition: labels must be in 1..4");
  }
  std::array<int, kCopies> s{0, 1, 2, 3};
  std::swap(s[i - 1], s[j - 1]);
  return CopyPermutation(s);
}

CopyPermutation CopyPermutation::cyclic_shift() { return CopyPermutation({1, 2, 3, 0}); }

CopyPermutation CopyPermutation::inverse() const {
  std::array<int, kCopies> inv{};
  for (int k = 0; k < kCopies; ++k) inv[source_[k]] = k;
  return CopyPermutation(inv);
}

std::string CopyPermutation::to_string() const {
  std::string out = "(";
  for (int k = 0; k < kCopies; ++k) {
    if (k) out += ' ';
    out += std::to_string(source_[k] + 1);
  }
  return out + ")";
}

CopyPermutation operator*(const CopyPermutation& lhs, const CopyPermutation& rhs) {
  std::array<int, kCopies> s{};
  for (int k = 0; k < kCopies; ++k) s[k] = lhs[rhs[k]];
  return CopyPermutation(s);
}

PermutationSpec operator*(const PermutationSpec& lhs, const PermutationSpec& rhs) {
  return {lhs.a * rhs.a, lhs.b * rhs.b};
}

std::vector<std::uint32_t> source_index_table(const PermutationSpec& spec, int dA, int dB) {
  const std::uint32_t d = static_cast<std::uint32_t>(dA * dB);
  const std::uint32_t total = d * d * d * d;
  std::vector<std::uint32_t> table(total);
  std::array<std::uint32_t, kCopies> a{}, b{};
  for (std::uint32_t n = 0; n < total; ++n) {
    std::uint32_t rest = n;
    for (int k = kCopies - 1; k >= 0; --k) {
      const std::uint32_t nk = rest % d;
      rest /= d;
      a[k] = nk / dB;
      b[k] = nk % dB;
    }
    std::uint32_t m = 0;
    for (int k = 0; k < kCopies; ++k) m = m * d + a[spec.a[k]] * dB + b[spec.b[k]];
    table[n] = m;
  }
  return table;
}

SparseReal permutation_matrix(const PermutationSpec& spec, int dA, int dB) {
  const auto table = source_index_table(spec, dA, dB);
  const auto n = static_cast<Eigen::Index>(table.size());
  SparseReal p(n, n);
  p.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index row = 0; row < n; ++row) p.insert(row, table[row]) = 1.0;
  p.makeCompressed();
  return p;
}

namespace {

// Connected components of the graph k -- a[k], k -- b[k].
std::vector<std::vector<int>> wiring_components(const PermutationSpec& spec) {
  std::array<int, kCopies> parent{0, 1, 2, 3};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int k = 0; k < kCopies; ++k) {
    parent[find(k)] = find(spec.a[k]);
    parent[find(k)] = find(spec.b[k]);
  }
  std::vector<std::vector<int>> comps;
  std::array<int, kCopies> slot{-1, -1, -1, -1};
  for (int k = 0; k < kCopies; ++k) {
    const int root = find(k);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(k);
  }
  return comps;
}

Complex chain_trace(std::span<const ComplexMatrix, kCopies> ops, const CopyPermutation& s,
                    int start) {
  ComplexMatrix chain = ops[start];
  for (int k = s[start]; k != start; k = s[k]) chain = ops[k] * chain;
  return chain.trace();
}

Complex contract_component(std::span<const ComplexMatrix, kCopies> ops, int dA, int dB,
                           const PermutationSpec& spec, const std::vector<int>& comp) {
  const int d = dA * dB;
  const int len = static_cast<int>(comp.size());
  std::array<int, kCopies> n{};
  std::array<int, kCopies> counter{};
  Complex total{0.0, 0.0};
  while (true) {
    for (int i = 0; i < len; ++i) n[comp[i]] = counter[i];
    Complex term{1.0, 0.0};
    for (int k : comp) {
      const int row = (n[spec.a[k]] / dB) * dB + n[spec.b[k]] % dB;
      term *= ops[k](row, n[k]);
      if (term == Complex{0.0, 0.0}) break;
    }
    total += term;
    int i = 0;
    while (i < len && ++counter[i] == d) counter[i++] = 0;
    if (i == len) break;
  }
  return total;
}

}  // namespace

Complex permutation_trace(std::span<const ComplexMatrix, kCopies> ops, int dA, int dB,
                          const PermutationSpec& spec) {
  const int d = dA * dB;
  for (const auto& op : ops) {
    if (op.rows() != d || op.cols() != d) throw DimensionError("permutation_trace: operator size mismatch");
  }
  Complex result{1.0, 0.0};
  for (const auto& comp : wiring_components(spec)) {
    const bool aligned = std::all_of(comp.begin(), comp.end(),
                                     [&](int k) { return spec.a[k] == spec.b[k]; });
    result *= aligned ? chain_trace(ops, spec.a, comp.front())
                      : contract_component(ops, dA, dB, spec, comp);
  }
  return result;
}

Complex permutation_trace(const ComplexMatrix& rho, int dA, int dB, const PermutationSpec& spec) {
  const std::array<ComplexMatrix, kCopies> ops{rho, rho, rho, rho};
  return permutation_trace(std::span<const ComplexMatrix, kCopies>(ops), dA, dB, spec);
}

}  // namespace qdw
