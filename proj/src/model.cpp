#include "pairspec/model.hpp"

#include <Eigen/Eigenvalues>

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pairspec {

namespace {

void check_model(const PairingModel& model) {
  if (model.n_spins < 1) throw std::invalid_argument("PairingModel: n_spins must be >= 1");
  if (model.epsilon.size() != model.n_spins) {
    throw std::invalid_argument("PairingModel: epsilon length " +
                                std::to_string(model.epsilon.size()) + " != n_spins " +
                                std::to_string(model.n_spins));
  }
}

Real sign_of(Spin s) { return s == Spin::Up ? 1.0 : -1.0; }

}  // namespace

NmrModel make_uniform_nmr(const VectorR& larmor, Real j_hz) {
  const auto n = larmor.size();
  MatrixR j = MatrixR::Constant(n, n, j_hz);
  j.diagonal().setZero();
  return NmrModel{larmor, std::move(j)};
}

MatrixR build_pairing_hamiltonian(const PairingModel& model) {
  check_model(model);
  const int n = model.n_spins;
  const auto dim = dimension(n);
  MatrixR h = MatrixR::Zero(dim, dim);

  for (int label = 1; label <= dim; ++label) {
    const auto config = label_to_config({label, n});

    Real diag = 0.0;
    for (int m = 0; m < n; ++m) diag += 0.5 * model.epsilon[m] * sign_of(config[m]);
    h(label - 1, label - 1) = diag;

    // -(V/2)(sx sx + sy sy) exchanges opposite spins at (m, l); each such
    // pair contributes a single off-diagonal element -V.
    for (int m = 0; m < n; ++m) {
      for (int l = m + 1; l < n; ++l) {
        if (config[m] == config[l]) continue;
        auto flipped = config;
        std::swap(flipped[m], flipped[l]);
        h(config_to_label(flipped) - 1, label - 1) = -model.coupling;
      }
    }
  }
  return h;
}

VectorR build_nmr_hamiltonian(const NmrModel& model) {
  const int n = static_cast<int>(model.larmor.size());
  if (n < 1) throw std::invalid_argument("NmrModel: empty larmor list");
  if (model.j_coupling.rows() != n || model.j_coupling.cols() != n) {
    throw std::invalid_argument("NmrModel: J matrix must be N x N");
  }
  if ((model.j_coupling - model.j_coupling.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("NmrModel: J matrix must be symmetric");
  }
  if (model.j_coupling.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("NmrModel: J matrix must have zero diagonal");
  }

  const auto dim = dimension(n);
  VectorR diag(dim);
  for (int label = 1; label <= dim; ++label) {
    const auto config = label_to_config({label, n});
    Real e = 0.0;
    for (int i = 0; i < n; ++i) e += model.larmor[i] * sign_of(config[i]);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        e += kPi * model.j_coupling(i, j) * sign_of(config[i]) * sign_of(config[j]);
      }
    }
    diag[label - 1] = 0.5 * e;
  }
  return diag;
}

MatrixR subspace_block(const MatrixR& hamiltonian, int n_spins, int n_up) {
  const auto members = enumerate_subspace(n_spins, n_up).members;
  if (hamiltonian.rows() != dimension(n_spins) || hamiltonian.cols() != dimension(n_spins)) {
    throw std::invalid_argument("subspace_block: matrix dimension does not match n_spins");
  }
  const auto size = static_cast<Eigen::Index>(members.size());
  MatrixR block(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) {
      block(r, c) = hamiltonian(members[r] - 1, members[c] - 1);
    }
  }
  return block;
}

Eigensystem exact_spectrum(const MatrixR& hamiltonian, int n_spins) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw std::invalid_argument("exact_spectrum: matrix must be square");
  }
  if (hamiltonian.rows() != dimension(n_spins)) {
    throw std::invalid_argument("exact_spectrum: matrix dimension does not match n_spins");
  }
  if ((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("exact_spectrum: matrix is not symmetric to 1e-12");
  }

  Eigen::SelfAdjointEigenSolver<MatrixR> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_spectrum: eigendecomposition failed");
  }

  Eigensystem eig;
  eig.values = solver.eigenvalues();
  eig.vectors = solver.eigenvectors();

  // Tag each eigenvector with the subspace holding most of its weight.
  eig.subspace_tags.resize(static_cast<std::size_t>(eig.values.size()));
  const int dim = static_cast<int>(dimension(n_spins));
  for (Eigen::Index col = 0; col < eig.vectors.cols(); ++col) {
    VectorR weight = VectorR::Zero(n_spins + 1);
    for (int label = 1; label <= dim; ++label) {
      const Real amp = eig.vectors(label - 1, col);
      weight[count_up({label, n_spins})] += amp * amp;
    }
    Eigen::Index best = 0;
    weight.maxCoeff(&best);
    eig.subspace_tags[static_cast<std::size_t>(col)] = static_cast<int>(best);
  }
  return eig;
}

Real spectral_range_bound(const PairingModel& model) {
  check_model(model);
  const Real n = static_cast<Real>(model.n_spins);
  return model.epsilon.cwiseAbs().sum() + std::abs(model.coupling) * n * (n - 1.0);
}

}  // namespace pairspec
