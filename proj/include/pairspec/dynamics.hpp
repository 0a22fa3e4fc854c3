// Time evolution: exact propagators from the eigendecomposition and a
// first-order product-formula surrogate for the pulse-sequence evolution.
#pragma once

#include "pairspec/model.hpp"
#include "pairspec/types.hpp"

namespace pairspec {

struct Propagator {
  MatrixC matrix;
  Real tau = 0.0;
};

/// exp(-i H tau) via a fresh eigendecomposition of H.
Propagator exact_propagator(const MatrixR& hamiltonian, int n_spins, Real tau);

/// exp(-i H tau) reusing an existing eigendecomposition; this is the cheap
/// path inside a tau sweep (one diagonalization, many taus).
Propagator exact_propagator(const Eigensystem& eigensystem, Real tau);

/// First-order product formula for H_p: per step, the sigma_z layer followed
/// by each (sx sx + sy sy) pair term in lexicographic (m, l) order. Error is
/// O(tau^2 / steps).
Propagator trotter_propagator(const PairingModel& model, Real tau, int steps);

/// rho = (U psi0)(U psi0)^dagger.
MatrixC evolve_to_density(const VectorC& psi0, const Propagator& propagator);

}  // namespace pairspec
