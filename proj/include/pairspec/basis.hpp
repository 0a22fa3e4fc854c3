// Product-basis labeling for N spin-1/2 sites, excitation-number subspaces,
// and the collective-raising selection rule.
//
// Labeling convention: label runs over [1, 2^N]. The N-bit binary expansion
// of (label - 1), most significant bit first, stores spin m's state at bit
// position m (bit 0 = spin-up, bit 1 = spin-down). Label 1 is all-up,
// label 2^N is all-down, and the state with spin-up exactly at positions
// i_1..i_n carries label 2^N - sum_a 2^(N - i_a).
#pragma once

#include "pairspec/types.hpp"

#include <cstdint>
#include <vector>

namespace pairspec {

enum class Spin : std::uint8_t { Up = 0, Down = 1 };

/// 1-based label of a product spin state together with the register size.
struct SpinBasisLabel {
  int value = 1;
  int n_spins = 1;
};

/// Members of S_n: all labels with exactly n up-spins, ascending.
struct SubspaceIndex {
  int n_spins = 0;
  int n_up = 0;
  std::vector<int> members;
};

/// Per-spin states for `label`, index 0 holding spin 1.
std::vector<Spin> label_to_config(SpinBasisLabel label);

/// Inverse of label_to_config.
int config_to_label(const std::vector<Spin>& config);

/// Number of up-spins in a label's configuration.
int count_up(SpinBasisLabel label);

/// Binomial coefficient C(n, k); 0 when k is out of range.
std::int64_t binomial(int n, int k);

/// All labels with exactly n_up up-spins, ascending label order.
SubspaceIndex enumerate_subspace(int n_spins, int n_up);

/// Labels produced by the collective lowering operator sum_k sigma_k^-,
/// one entry per up-spin k in ascending k order (so descending label
/// increment 2^(N-k)). Empty for the all-down label.
std::vector<int> lowering_image(SpinBasisLabel label);

/// Tr(|i><j| sum_k sigma_k^+) as an integer count. Nonzero (value 1) exactly
/// when i = j + 2^(N-k) for some position k at which j holds an up-spin,
/// i.e. when flipping one up-spin of j down yields i.
int transition_weight(SpinBasisLabel i, SpinBasisLabel j);

}  // namespace pairspec
