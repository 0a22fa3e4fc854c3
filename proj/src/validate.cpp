// Invariant suite behind `pairspec validate`. Checks here rebuild their
// expectations from explicit Pauli matrices and quadrature-free identities
// rather than reusing the library's closed forms.
#include "pairspec/experiment.hpp"

#include "pairspec/basis.hpp"
#include "pairspec/bcs.hpp"
#include "pairspec/dynamics.hpp"
#include "pairspec/states.hpp"

#include <cmath>
#include <iostream>
#include <random>

namespace pairspec {

namespace {

// Explicit Pauli-product operators, built by Kronecker products.
MatrixC kron_chain(int n_spins, int site, const MatrixC& op) {
  const MatrixC eye = MatrixC::Identity(2, 2);
  MatrixC result = MatrixC::Identity(1, 1);
  for (int m = 1; m <= n_spins; ++m) {
    const MatrixC& factor = m == site ? op : eye;
    MatrixC next(result.rows() * 2, result.cols() * 2);
    for (Eigen::Index r = 0; r < result.rows(); ++r) {
      for (Eigen::Index c = 0; c < result.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = result(r, c) * factor;
      }
    }
    result = std::move(next);
  }
  return result;
}

MatrixC sigma_plus_total(int n_spins) {
  MatrixC plus(2, 2);
  plus << 0, 1, 0, 0;  // |0><1|: flips down to up in the bit basis
  MatrixC total = MatrixC::Zero(dimension(n_spins), dimension(n_spins));
  for (int k = 1; k <= n_spins; ++k) total += kron_chain(n_spins, k, plus);
  return total;
}

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool ok) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  }
};

PairingModel random_model(std::mt19937_64& rng, int n_spins) {
  std::uniform_real_distribution<Real> eps_dist(0.5, 1.5);
  std::uniform_real_distribution<Real> v_dist(0.05, 0.5);
  PairingModel model;
  model.n_spins = n_spins;
  model.epsilon.resize(n_spins);
  for (int m = 0; m < n_spins; ++m) model.epsilon[m] = eps_dist(rng);
  model.coupling = v_dist(rng);
  return model;
}

}  // namespace

int run_validation_suite(std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  Reporter reporter{out};

  // Selection rule vs the explicit sigma+ matrix, all pairs, N <= 4.
  {
    bool ok = true;
    for (int n = 1; n <= 4 && ok; ++n) {
      const MatrixC total = sigma_plus_total(n);
      const int dim = static_cast<int>(dimension(n));
      for (int i = 1; i <= dim && ok; ++i) {
        for (int j = 1; j <= dim; ++j) {
          // Tr(|i><j| S+) = (S+)_{ji}
          const Real brute = total(j - 1, i - 1).real();
          if (transition_weight({i, n}, {j, n}) != static_cast<int>(std::lround(brute))) {
            ok = false;
            break;
          }
        }
      }
    }
    reporter.check("selection rule equals explicit-matrix trace (N <= 4, all pairs)", ok);
  }

  // Subspace partition and lowering-operator closure.
  {
    bool ok = true;
    for (int n = 1; n <= 6 && ok; ++n) {
      std::size_t covered = 0;
      for (int n_up = 0; n_up <= n; ++n_up) {
        const auto subspace = enumerate_subspace(n, n_up);
        covered += subspace.members.size();
        for (const int label : subspace.members) {
          for (const int lowered : lowering_image({label, n})) {
            if (count_up({lowered, n}) != n_up - 1) ok = false;
          }
        }
      }
      if (covered != static_cast<std::size_t>(dimension(n))) ok = false;
    }
    reporter.check("subspaces partition the basis; lowering maps S_n to S_{n-1}", ok);
  }

  // Anti-W / u-state identities over random draws.
  {
    bool ok = true;
    for (int draw = 0; draw < 100; ++draw) {
      std::uniform_int_distribution<int> n_dist(2, 6);
      const auto model = random_model(rng, n_dist(rng));
      if (check_w_identity(model) > 1e-12) ok = false;
      std::uniform_int_distribution<int> pos(1, model.n_spins);
      int i = pos(rng), j = pos(rng);
      if (i == j) j = (j % model.n_spins) + 1;
      if (check_u_identity(model, i, j) > 1e-12) ok = false;
    }
    reporter.check("H_p action identities for anti-W and u states (100 draws)", ok);
  }

  // Block diagonality across subspaces and the all-down eigenvector.
  {
    bool ok = true;
    for (int draw = 0; draw < 10; ++draw) {
      std::uniform_int_distribution<int> n_dist(2, 6);
      const auto model = random_model(rng, n_dist(rng));
      const MatrixR h = build_pairing_hamiltonian(model);
      const int dim = static_cast<int>(dimension(model.n_spins));
      for (int r = 1; r <= dim; ++r) {
        for (int c = 1; c <= dim; ++c) {
          if (count_up({r, model.n_spins}) != count_up({c, model.n_spins}) &&
              h(r - 1, c - 1) != 0.0) {
            ok = false;
          }
        }
      }
      VectorR down = VectorR::Zero(dim);
      down[dim - 1] = 1.0;
      if ((h * down + 0.5 * model.epsilon.sum() * down).norm() > 1e-12) ok = false;
    }
    reporter.check("H_p block diagonal over subspaces; |all-down> eigenvector", ok);
  }

  // Unitarity and norm conservation.
  {
    bool ok = true;
    std::uniform_real_distribution<Real> tau_dist(0.0, 10.0);
    for (int draw = 0; draw < 10; ++draw) {
      const auto model = random_model(rng, 3);
      const auto eig = exact_spectrum(build_pairing_hamiltonian(model), model.n_spins);
      const auto u = exact_propagator(eig, tau_dist(rng));
      const MatrixC defect =
          u.matrix.adjoint() * u.matrix - MatrixC::Identity(u.matrix.rows(), u.matrix.cols());
      if (defect.cwiseAbs().maxCoeff() > 1e-10) ok = false;
      if (std::abs((u.matrix * proposal_initial_state(3)).norm() - 1.0) > 1e-10) ok = false;
    }
    reporter.check("propagator unitarity and norm conservation to 1e-10", ok);
  }

  // Measurement chain: oracle coherence vs FID + DFT, plus Parseval.
  {
    bool ok = true;
    for (int draw = 0; draw < 10; ++draw) {
      const auto model = random_model(rng, 3);
      const auto nmr = make_uniform_nmr(kTwoPi * VectorR::LinSpaced(3, 100.0, 120.0), 2.0);
      const VectorR diag = build_nmr_hamiltonian(nmr);
      const auto eig = exact_spectrum(build_pairing_hamiltonian(model), model.n_spins);
      std::uniform_real_distribution<Real> tau_dist(0.0, 5.0);
      const MatrixC rho =
          evolve_to_density(proposal_initial_state(3), exact_propagator(eig, tau_dist(rng)));
      const int samples = 512;
      const FidSignal fid = fid_signal(rho, diag, 3, 1.0 / samples, samples);
      const NmrSpectrum spectrum = first_ft(fid);

      const Real time_energy = fid.samples.squaredNorm();
      const Real freq_energy = spectrum.amplitudes.squaredNorm() / samples;
      if (std::abs(time_energy - freq_energy) > 1e-8 * std::max(time_energy, 1e-30)) ok = false;

      for (const auto& peak : auto_tracked_peaks(3, diag, proposal_initial_state(3))) {
        const Complex oracle = coherence_amplitude(rho, diag, 3, peak);
        const Complex measured = peak_amplitude(spectrum, peak, 0) / static_cast<Real>(samples);
        const Real scale = std::max(std::abs(oracle), 1e-9);
        if (std::abs(oracle - measured) > 1e-6 * scale) ok = false;
      }
    }
    reporter.check("FID+DFT reproduces the coherence oracle; Parseval to 1e-8", ok);
  }

  // End-to-end: recovered differences sit on exact level differences.
  {
    const auto model = PairingModel{3, (VectorR(3) << 0.8, 1.0, 1.2).finished(), 0.3};
    ExperimentConfig config;
    config.model = model;
    config.larmor = kTwoPi * (VectorR(3) << 100.0, 110.0, 120.0).finished();
    config.j_coupling_hz = MatrixR::Constant(3, 3, 2.0);
    config.j_coupling_hz.diagonal().setZero();
    const auto setup = prepare_experiment(config);
    const auto analysis = analyze_sweep(setup, run_sweep(setup));
    bool ok = !analysis.merged.empty();
    for (const auto& assignment : analysis.levels.assignments) {
      if (assignment.residual > 1.5 * analysis.natural_bin) ok = false;
    }
    reporter.check("end-to-end sweep recovers exact level differences (N = 3)", ok);
  }

  // Gap equation: worked values and V-monotonicity.
  {
    bool ok = true;
    const GapProblem two{(VectorR(2) << -0.5, 0.5).finished(), 1.0};
    ok = ok && std::abs(solve_gap_equation(two) - std::sqrt(0.75)) < 1e-10;
    const GapProblem single{(VectorR(1) << 0.0).finished(), 2.0};
    ok = ok && std::abs(solve_gap_equation(single) - 1.0) < 1e-10;
    try {
      solve_gap_equation(GapProblem{(VectorR(2) << -1.0, 1.0).finished(), 0.5});
      ok = false;
    } catch (const NoSolutionError&) {
    }
    Real previous = 0.0;
    for (Real v = 0.6; v <= 2.0; v += 0.2) {
      const Real delta = solve_gap_equation(GapProblem{(VectorR(2) << -0.5, 0.5).finished(), v});
      if (delta <= previous) ok = false;
      previous = delta;
    }
    reporter.check("gap equation worked examples and monotonicity in V", ok);
  }

  out << (reporter.failures == 0 ? "validate: all checks passed\n"
                                 : "validate: " + std::to_string(reporter.failures) +
                                       " check(s) failed\n");
  return reporter.failures;
}

}  // namespace pairspec
