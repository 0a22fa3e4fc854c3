#include "pairspec/states.hpp"

#include <cmath>
#include <stdexcept>

namespace pairspec {

namespace {

int single_up_label(int position, int n_spins) {
  // spin-up exactly at `position`: label 2^N - 2^(N - position)
  return static_cast<int>(dimension(n_spins)) - (1 << (n_spins - position));
}

void check_position(int position, int n_spins) {
  if (position < 1 || position > n_spins) {
    throw std::out_of_range("spin position " + std::to_string(position) + " outside [1, " +
                            std::to_string(n_spins) + "]");
  }
}

}  // namespace

VectorC basis_ket(SpinBasisLabel label) {
  if (label.value < 1 || label.value > dimension(label.n_spins)) {
    throw std::out_of_range("basis_ket: label out of range");
  }
  VectorC psi = VectorC::Zero(dimension(label.n_spins));
  psi[label.value - 1] = Complex{1.0, 0.0};
  return psi;
}

VectorC anti_w_state(int n_spins) {
  if (n_spins < 2) throw std::invalid_argument("anti_w_state: requires N >= 2");
  VectorC psi = VectorC::Zero(dimension(n_spins));
  const Real amp = 1.0 / std::sqrt(static_cast<Real>(n_spins));
  for (int i = 1; i <= n_spins; ++i) {
    psi[single_up_label(i, n_spins) - 1] = amp;
  }
  return psi;
}

VectorC u_state(int i, int j, int n_spins) {
  check_position(i, n_spins);
  check_position(j, n_spins);
  if (i == j) throw std::invalid_argument("u_state: positions i and j must differ");
  VectorC psi = VectorC::Zero(dimension(n_spins));
  const Real amp = 1.0 / std::sqrt(2.0);
  psi[single_up_label(i, n_spins) - 1] = amp;
  psi[single_up_label(j, n_spins) - 1] = -amp;
  return psi;
}

VectorC proposal_initial_state(int n_spins) {
  if (n_spins < 2) throw std::invalid_argument("proposal_initial_state: requires N >= 2");
  const auto dim = dimension(n_spins);
  VectorC psi = basis_ket({static_cast<int>(dim), n_spins});
  psi += anti_w_state(n_spins);
  psi += u_state(1, 2, n_spins);
  return psi / std::sqrt(3.0);
}

Real check_w_identity(const PairingModel& model) {
  if (model.n_spins < 2) throw std::invalid_argument("check_w_identity: requires N >= 2");
  const MatrixR h = build_pairing_hamiltonian(model);
  const VectorC w = anti_w_state(model.n_spins);

  const Real eps_sum = model.epsilon.sum();
  VectorC rhs = -(0.5 * eps_sum + (model.n_spins - 1) * model.coupling) * w;
  const Real amp = 1.0 / std::sqrt(static_cast<Real>(model.n_spins));
  for (int m = 1; m <= model.n_spins; ++m) {
    rhs += model.epsilon[m - 1] * amp * basis_ket({single_up_label(m, model.n_spins), model.n_spins});
  }
  return (h * w - rhs).norm();
}

Real check_u_identity(const PairingModel& model, int i, int j) {
  check_position(i, model.n_spins);
  check_position(j, model.n_spins);
  if (i == j) throw std::invalid_argument("check_u_identity: i and j must differ");
  const MatrixR h = build_pairing_hamiltonian(model);
  const VectorC u = u_state(i, j, model.n_spins);

  const Real eps_sum = model.epsilon.sum();
  const Real eps_i = model.epsilon[i - 1];
  const Real eps_j = model.epsilon[j - 1];
  VectorC rhs = -(0.5 * eps_sum - eps_j - model.coupling) * u;
  rhs -= (eps_j - eps_i) / std::sqrt(2.0) *
         basis_ket({single_up_label(i, model.n_spins), model.n_spins});
  return (h * u - rhs).norm();
}

VectorC named_initial_state(const std::string& name, int n_spins) {
  if (name == "proposal") return proposal_initial_state(n_spins);
  if (name == "anti_w") return anti_w_state(n_spins);
  if (name.rfind("u:", 0) == 0) {
    const auto comma = name.find(',', 2);
    if (comma == std::string::npos) {
      throw ConfigError("initial_state: expected \"u:i,j\", got \"" + name + "\"");
    }
    int i = 0;
    int j = 0;
    try {
      i = std::stoi(name.substr(2, comma - 2));
      j = std::stoi(name.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw ConfigError("initial_state: could not parse \"" + name + "\"");
    }
    return u_state(i, j, n_spins);
  }
  if (name.rfind("ket:", 0) == 0) {
    int label = 0;
    try {
      label = std::stoi(name.substr(4));
    } catch (const std::logic_error&) {
      throw ConfigError("initial_state: could not parse \"" + name + "\"");
    }
    return basis_ket({label, n_spins});
  }
  throw ConfigError("initial_state: unknown state \"" + name +
                    "\" (expected proposal, anti_w, u:i,j or ket:<label>)");
}

}  // namespace pairspec
