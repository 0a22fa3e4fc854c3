#include "pairspec/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace pairspec {

namespace {

VectorC phase_vector(const VectorR& energies, Real tau) {
  VectorC phases(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) {
    phases[k] = std::exp(Complex{0.0, -energies[k] * tau});
  }
  return phases;
}

}  // namespace

Propagator exact_propagator(const MatrixR& hamiltonian, int n_spins, Real tau) {
  return exact_propagator(exact_spectrum(hamiltonian, n_spins), tau);
}

Propagator exact_propagator(const Eigensystem& eigensystem, Real tau) {
  const MatrixC v = eigensystem.vectors.cast<Complex>();
  const VectorC phases = phase_vector(eigensystem.values, tau);
  return Propagator{v * phases.asDiagonal() * v.adjoint(), tau};
}

Propagator trotter_propagator(const PairingModel& model, Real tau, int steps) {
  if (steps < 1) throw std::invalid_argument("trotter_propagator: steps must be >= 1");
  const int n = model.n_spins;
  const auto dim = dimension(n);
  const Real dt = tau / static_cast<Real>(steps);

  // sigma_z layer: diagonal phases of the V=0 Hamiltonian.
  PairingModel diagonal_only = model;
  diagonal_only.coupling = 0.0;
  const VectorR diag = build_pairing_hamiltonian(diagonal_only).diagonal();
  MatrixC step = phase_vector(diag, dt).asDiagonal();

  // One pair term exp(+i V dt (sx sx + sy sy)/2 ...): acting on the
  // {up-down, down-up} pair block as cos(V dt) I + i sin(V dt) sigma_x.
  const Real c = std::cos(model.coupling * dt);
  const Complex is{0.0, std::sin(model.coupling * dt)};
  for (int m = 1; m <= n; ++m) {
    for (int l = m + 1; l < n + 1; ++l) {
      MatrixC pair = MatrixC::Zero(dim, dim);
      for (int label = 1; label <= dim; ++label) {
        const auto config = label_to_config({label, n});
        if (config[m - 1] == config[l - 1]) {
          pair(label - 1, label - 1) = 1.0;
          continue;
        }
        auto flipped = config;
        std::swap(flipped[m - 1], flipped[l - 1]);
        const int partner = config_to_label(flipped);
        pair(label - 1, label - 1) = c;
        pair(partner - 1, label - 1) = is;
      }
      step = pair * step;
    }
  }

  MatrixC u = MatrixC::Identity(dim, dim);
  for (int k = 0; k < steps; ++k) u = step * u;
  return Propagator{std::move(u), tau};
}

MatrixC evolve_to_density(const VectorC& psi0, const Propagator& propagator) {
  if (psi0.size() != propagator.matrix.cols()) {
    throw std::invalid_argument("evolve_to_density: dimension mismatch");
  }
  const VectorC psi = propagator.matrix * psi0;
  return psi * psi.adjoint();
}

}  // namespace pairspec
