// Brute-force reference constructions for the test suites. Everything here
// is built from explicit Pauli matrices and naive O(M^2) sums, independent
// of the library's closed forms, so the two can check each other.
#pragma once

#include "pairspec/model.hpp"
#include "pairspec/types.hpp"

#include <random>

namespace oracle {

using pairspec::Complex;
using pairspec::MatrixC;
using pairspec::MatrixR;
using pairspec::Real;
using pairspec::VectorC;
using pairspec::VectorR;

/// 2x2 op at 1-based site within an N-spin register (identity elsewhere).
MatrixC site_operator(int n_spins, int site, const MatrixC& op);

MatrixC pauli_x();
MatrixC pauli_y();
MatrixC pauli_z();
MatrixC sigma_plus();   // (x + i y) / 2
MatrixC sigma_minus();  // (x - i y) / 2

/// sum_k sigma_k^+ over the register.
MatrixC collective_raising(int n_spins);

/// H_p assembled term by term from Pauli products.
MatrixC brute_pairing_hamiltonian(const pairspec::PairingModel& model);

/// H_nmr assembled term by term from Pauli products (full matrix).
MatrixC brute_nmr_hamiltonian(const pairspec::NmrModel& model);

/// Tr(|i><j| sum_k sigma_k^+) from the explicit matrices.
int brute_transition_weight(int i, int j, int n_spins);

/// Naive forward DFT sum_k x_k exp(-2 pi i m k / M).
VectorC naive_dft(const VectorC& samples);

/// Random pairing model with eps in (0.5, 1.5) and V in (0.05, 0.5).
pairspec::PairingModel random_model(std::mt19937_64& rng, int n_spins);

/// Haar-ish random normalized state of dimension 2^N.
VectorC random_state(std::mt19937_64& rng, int n_spins);

}  // namespace oracle
