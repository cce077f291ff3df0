// Local orthogonal observables and the partial expansion
//   rho_AB = sum_mu rho^A_mu (x) G^B_mu,   rho^A_mu = Tr_B(rho_AB (I (x) G_mu)).

#pragma once

#include "qdw/states.hpp"

#include <vector>

namespace qdw {

/// d^2 Hermitian d x d matrices with Tr(G_mu G_nu) = delta_mu_nu.
struct LOOBasis {
  int dim = 0;
  std::vector<ComplexMatrix> observables;

  std::size_t size() const { return observables.size(); }
  const ComplexMatrix& operator[](std::size_t mu) const { return observables[mu]; }
};

struct LOODefects {
  double hermiticity = 0.0;    // max over observables
  double orthonormality = 0.0; // max |Tr(G_mu G_nu) - delta|
  double completeness = 0.0;   // max entry of sum_mu G_mu (x) G_mu - SWAP
};

LOODefects check_basis(const LOOBasis& basis);

/// SWAP on C^d (x) C^d: |n1, n2> -> |n2, n1>.
RealMatrix swap_matrix(int d);

/// I/sqrt(d), then symmetric (E_jk + E_kj)/sqrt(2) for j < k in lexicographic
/// order, then antisymmetric -i(E_jk - E_kj)/sqrt(2) in the same order, then
/// the d - 1 normalized diagonal traceless matrices. Throws for d < 2.
LOOBasis gell_mann_basis(int d);

/// G'_mu = sum_nu o(mu, nu) G_nu for a real orthogonal o.
LOOBasis rotate_basis(const LOOBasis& basis, const RealMatrix& o);

struct PartialExpansion {
  LOOBasis basis;                       // acts on B
  std::vector<ComplexMatrix> components; // dA x dA, one per observable

  ComplexMatrix reconstruct() const;
};

PartialExpansion partial_expansion(const BipartiteState& state, const LOOBasis& basis);

/// Largest ||[rho_mu, rho_nu]||_F over all pairs.
double max_commutator_norm(const PartialExpansion& expansion);

}  // namespace qdw
