#include "pairspec/basis.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace pairspec {

namespace {

void check_label(SpinBasisLabel label) {
  if (label.n_spins < 1) {
    throw std::invalid_argument("SpinBasisLabel: n_spins must be >= 1");
  }
  if (label.value < 1 || label.value > dimension(label.n_spins)) {
    throw std::out_of_range("SpinBasisLabel: label " + std::to_string(label.value) +
                            " outside [1, 2^" + std::to_string(label.n_spins) + "]");
  }
}

}  // namespace

std::vector<Spin> label_to_config(SpinBasisLabel label) {
  check_label(label);
  const unsigned bits = static_cast<unsigned>(label.value - 1);
  std::vector<Spin> config(label.n_spins);
  for (int m = 1; m <= label.n_spins; ++m) {
    const unsigned bit = (bits >> (label.n_spins - m)) & 1u;
    config[m - 1] = bit ? Spin::Down : Spin::Up;
  }
  return config;
}

int config_to_label(const std::vector<Spin>& config) {
  if (config.empty()) throw std::invalid_argument("config_to_label: empty config");
  int bits = 0;
  for (const Spin s : config) {
    bits = (bits << 1) | (s == Spin::Down ? 1 : 0);
  }
  return bits + 1;
}

int count_up(SpinBasisLabel label) {
  check_label(label);
  const auto down = std::popcount(static_cast<unsigned>(label.value - 1));
  return label.n_spins - static_cast<int>(down);
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
  }
  return result;
}

SubspaceIndex enumerate_subspace(int n_spins, int n_up) {
  if (n_spins < 1) throw std::invalid_argument("enumerate_subspace: n_spins must be >= 1");
  if (n_up < 0 || n_up > n_spins) {
    throw std::out_of_range("enumerate_subspace: n_up " + std::to_string(n_up) +
                            " outside [0, " + std::to_string(n_spins) + "]");
  }
  SubspaceIndex subspace{n_spins, n_up, {}};
  subspace.members.reserve(static_cast<std::size_t>(binomial(n_spins, n_up)));
  const int dim = static_cast<int>(dimension(n_spins));
  for (int label = 1; label <= dim; ++label) {
    if (count_up({label, n_spins}) == n_up) subspace.members.push_back(label);
  }
  assert(static_cast<std::int64_t>(subspace.members.size()) == binomial(n_spins, n_up));
  return subspace;
}

std::vector<int> lowering_image(SpinBasisLabel label) {
  check_label(label);
  std::vector<int> image;
  const unsigned bits = static_cast<unsigned>(label.value - 1);
  for (int k = 1; k <= label.n_spins; ++k) {
    const int weight = 1 << (label.n_spins - k);
    if ((bits & static_cast<unsigned>(weight)) == 0) {
      image.push_back(label.value + weight);  // flip spin k down
    }
  }
  return image;
}

int transition_weight(SpinBasisLabel i, SpinBasisLabel j) {
  check_label(i);
  check_label(j);
  if (i.n_spins != j.n_spins) {
    throw std::invalid_argument("transition_weight: mismatched n_spins");
  }
  const int diff = i.value - j.value;
  if (diff <= 0 || std::popcount(static_cast<unsigned>(diff)) != 1) return 0;
  if (diff > (1 << (i.n_spins - 1))) return 0;
  // diff = 2^(N-k); require spin k of j to be up so the flip is valid.
  const bool j_up_at_k = (static_cast<unsigned>(j.value - 1) & static_cast<unsigned>(diff)) == 0;
  return j_up_at_k ? 1 : 0;
}

}  // namespace pairspec
