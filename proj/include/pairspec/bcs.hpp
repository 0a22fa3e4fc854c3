// The BCS gap equation 1 = (V/2) sum_m 1/sqrt(xi_m^2 + Delta^2) and the
// comparison of the quasiparticle-energy difference against the exact gap
// between the two lowest levels of the one-up-spin block of H_p.
#pragma once

#include "pairspec/model.hpp"
#include "pairspec/types.hpp"

namespace pairspec {

struct GapProblem {
  VectorR xi;     // single-particle energies relative to the Fermi level
  Real v = 0.0;   // pairing strength, > 0
};

struct GapRelationReport {
  Real delta = 0.0;    // gap-equation solution
  Real lhs = 0.0;      // difference of the two smallest quasiparticle energies
  Real rhs = 0.0;      // exact two-lowest-level gap of the subspace-1 block
  Real abs_dev = 0.0;
  Real rel_dev = 0.0;  // abs_dev / rhs (infinity if rhs == 0)
};

/// Solve for Delta > 0 by bisection; the right-hand side is strictly
/// decreasing in Delta. Residual of the returned root is <= 1e-12. Throws
/// NoSolutionError when (V/2) sum 1/|xi_m| < 1 with every xi_m nonzero.
Real solve_gap_equation(const GapProblem& problem);

/// Gap-equation residual 1 - (V/2) sum 1/sqrt(xi^2 + Delta^2).
Real gap_equation_residual(const GapProblem& problem, Real delta);

/// Quasiparticle energies sqrt(xi_m^2 + Delta^2), in input order.
VectorR quasiparticle_energies(const VectorR& xi, Real delta);

/// Evaluate both sides of the quasiparticle/spectrum gap relation for
/// xi_m = eps_m - fermi_level. The rhs uses only the N x N subspace-1 block,
/// so this scales to large N without touching the 2^N space.
GapRelationReport gap_relation_check(const VectorR& epsilon, Real v, Real fermi_level);

/// The subspace-1 block of H_p directly from the model parameters:
/// diagonal eps_i - sum(eps)/2, every off-diagonal -V. Equals
/// subspace_block(build_pairing_hamiltonian(model), N, 1) without the
/// 2^N intermediate.
MatrixR subspace1_block(const PairingModel& model);

}  // namespace pairspec
