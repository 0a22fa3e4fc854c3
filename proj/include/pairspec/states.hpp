// Working initial states and their closed-form H_p action identities.
#pragma once

#include "pairspec/basis.hpp"
#include "pairspec/model.hpp"
#include "pairspec/types.hpp"

#include <string>

namespace pairspec {

/// Unit vector |label> of dimension 2^N, amplitude 1 at index label-1.
VectorC basis_ket(SpinBasisLabel label);

/// Anti-W state: uniform superposition of the N single-up basis states,
/// (1/sqrt(N)) sum_i |up at i, rest down>. Requires N >= 2.
VectorC anti_w_state(int n_spins);

/// (1/sqrt(2)) (|up at i> - |up at j>), i != j, both in [1, N].
VectorC u_state(int i, int j, int n_spins);

/// (1/sqrt(3)) (|all-down> + anti-W + u_12): the easy-to-prepare state whose
/// support is confined to S_0 and S_1. Requires N >= 2.
VectorC proposal_initial_state(int n_spins);

/// Residual norm of
///   H_p |W> = -[ sumeps/2 + (N-1) V ] |W> + (1/sqrt(N)) sum_m eps_m |up at m>.
/// Exact identity; the returned residual is pure roundoff (<= 1e-12).
Real check_w_identity(const PairingModel& model);

/// Residual norm of
///   H_p |u_ij> = -[ sum_eps/2 - eps_j - V ] |u_ij>
///                - (eps_j - eps_i) (1/sqrt(2)) |up at i>.
Real check_u_identity(const PairingModel& model, int i, int j);

/// Initial state from a spec string: "proposal", "anti_w", "u:i,j" or
/// "ket:<label>". Throws ConfigError on anything else.
VectorC named_initial_state(const std::string& name, int n_spins);

}  // namespace pairspec
