// Permutation operators on four copies of a bipartite system.
//
// A CopyPermutation with source table s acts on product amplitudes of
// four copies as (P psi)(n_1, ..., n_4) = psi(n_{s(1)}, ..., n_{s(4)}),
// so P_s P_t = P_{s o t} and
//   Tr(P_s (r_1 (x) r_2 (x) r_3 (x) r_4)) = sum_n prod_k r_k[n_{s(k)}, n_k].
// Public constructors take copy labels 1..4; storage is 0-based.

#pragma once

#include "qdw/matrix.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qdw {

inline constexpr int kCopies = 4;

class CopyPermutation {
 public:
  CopyPermutation();  // identity
  /// source[k] is the 0-based slot that output slot k reads from.
  explicit CopyPermutation(std::array<int, kCopies> source);

  static CopyPermutation identity() { return {}; }
  /// V_ij, labels 1..4.
  static CopyPermutation transposition(int i, int j);
  /// |n1 n2 n3 n4> <n2 n3 n4 n1|
  static CopyPermutation cyclic_shift();

  int operator[](int k) const { return source_[k]; }
  const std::array<int, kCopies>& source() const { return source_; }

  CopyPermutation inverse() const;
  bool operator==(const CopyPermutation&) const = default;

  std::string to_string() const;  // 1-based source table, e.g. "(2 3 4 1)"

 private:
  std::array<int, kCopies> source_;
};

/// this o rhs: the operator P_this * P_rhs.
CopyPermutation operator*(const CopyPermutation& lhs, const CopyPermutation& rhs);

/// Independent permutations of the A-copies and the B-copies.
struct PermutationSpec {
  CopyPermutation a;
  CopyPermutation b;

  PermutationSpec adjoint() const { return {a.inverse(), b.inverse()}; }
  bool operator==(const PermutationSpec&) const = default;
};

PermutationSpec operator*(const PermutationSpec& lhs, const PermutationSpec& rhs);

/// Index table over the (dA*dB)^4 four-copy space, copy 1 most significant:
/// (P psi)[n] = psi[table[n]].
std::vector<std::uint32_t> source_index_table(const PermutationSpec& spec, int dA, int dB);

using SparseReal = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Sparse matrix of P on the four-copy space.
SparseReal permutation_matrix(const PermutationSpec& spec, int dA, int dB);

/// Tr(P (op_1 (x) op_2 (x) op_3 (x) op_4)) for (dA*dB)-square ops. Copies are
/// grouped into the connected components of the A/B wiring; a component on
/// which both permutations agree is a single cycle and reduces to the trace
/// of a matrix chain, others are contracted index by index.
Complex permutation_trace(std::span<const ComplexMatrix, kCopies> ops, int dA, int dB,
                          const PermutationSpec& spec);
Complex permutation_trace(const ComplexMatrix& rho, int dA, int dB, const PermutationSpec& spec);

}  // namespace qdw
