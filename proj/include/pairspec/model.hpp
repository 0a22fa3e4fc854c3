// Hamiltonians of the simulation: the spin-form pairing Hamiltonian
//
//   H_p = sum_m (eps_m / 2) sigma_z^(m)
//         - (V / 2) sum_{m<l} (sigma_x^(m) sigma_x^(l) + sigma_y^(m) sigma_y^(l))
//
// and the diagonal laboratory NMR Hamiltonian
//
//   H_nmr = (1/2) (sum_i omega0_i sigma_z^(i) + sum_{i<j} pi J_ij sigma_z^(i) sigma_z^(j)).
//
// H_p conserves the number of up-spins, so it is block-diagonal over the
// subspaces S_0 .. S_N; subspace_block extracts one block in the member
// order of enumerate_subspace. Units: hbar = 1, all energies angular.
#pragma once

#include "pairspec/basis.hpp"
#include "pairspec/types.hpp"

#include <vector>

namespace pairspec {

struct PairingModel {
  int n_spins = 1;
  VectorR epsilon;  // level energies eps_1..eps_N
  Real coupling = 0.0;
};

struct NmrModel {
  VectorR larmor;      // omega0 per spin, angular
  MatrixR j_coupling;  // symmetric, zero diagonal, in Hz (enters as pi*J)
};

/// NmrModel with a single uniform J on every off-diagonal pair.
NmrModel make_uniform_nmr(const VectorR& larmor, Real j_hz);

struct Eigensystem {
  VectorR values;                  // ascending
  MatrixR vectors;                 // orthonormal columns
  std::vector<int> subspace_tags;  // dominant up-spin count per column
};

/// Dense 2^N x 2^N matrix of H_p. Real symmetric in the standard basis.
MatrixR build_pairing_hamiltonian(const PairingModel& model);

/// Diagonal of H_nmr in label order. Throws on an asymmetric or
/// nonzero-diagonal J matrix.
VectorR build_nmr_hamiltonian(const NmrModel& model);

/// Block of H over the members of S_n, rows/cols in ascending label order.
MatrixR subspace_block(const MatrixR& hamiltonian, int n_spins, int n_up);

/// Full diagonalization. Input must be symmetric to 1e-12 (max-norm);
/// eigenvalues come back ascending with orthonormal eigenvectors, each
/// tagged with the subspace carrying most of its weight.
Eigensystem exact_spectrum(const MatrixR& hamiltonian, int n_spins);

/// Upper bound on max |E_i - E_j| of H_p without diagonalizing:
/// sum |eps_m| + |V| N (N-1).
Real spectral_range_bound(const PairingModel& model);

}  // namespace pairspec
