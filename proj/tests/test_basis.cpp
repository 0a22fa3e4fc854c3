#include "pairspec/basis.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <set>

using namespace pairspec;

TEST_CASE("label/config round trip and endpoints") {
  CHECK(label_to_config({1, 2}) == std::vector<Spin>{Spin::Up, Spin::Up});
  CHECK(label_to_config({4, 2}) == std::vector<Spin>{Spin::Down, Spin::Down});
  // label 2 = 2^2 - 2^(2-1): spin-up at position 1
  CHECK(label_to_config({2, 2}) == std::vector<Spin>{Spin::Up, Spin::Down});

  for (int n = 1; n <= 6; ++n) {
    for (int label = 1; label <= dimension(n); ++label) {
      CHECK(config_to_label(label_to_config({label, n})) == label);
    }
  }

  CHECK_THROWS_AS(label_to_config({0, 2}), std::out_of_range);
  CHECK_THROWS_AS(label_to_config({5, 2}), std::out_of_range);
}

TEST_CASE("single-up labels follow 2^N - 2^(N-i)") {
  for (int n = 2; n <= 5; ++n) {
    for (int i = 1; i <= n; ++i) {
      std::vector<Spin> config(n, Spin::Down);
      config[i - 1] = Spin::Up;
      CHECK(config_to_label(config) == (1 << n) - (1 << (n - i)));
    }
  }
}

TEST_CASE("subspace enumeration") {
  CHECK(enumerate_subspace(2, 0).members == std::vector<int>{4});
  CHECK(enumerate_subspace(2, 2).members == std::vector<int>{1});
  CHECK(enumerate_subspace(3, 1).members == std::vector<int>{4, 6, 7});
  CHECK_THROWS_AS(enumerate_subspace(3, 4), std::out_of_range);
  CHECK_THROWS_AS(enumerate_subspace(3, -1), std::out_of_range);

  for (int n = 1; n <= 6; ++n) {
    std::set<int> seen;
    for (int n_up = 0; n_up <= n; ++n_up) {
      const auto subspace = enumerate_subspace(n, n_up);
      CHECK(static_cast<std::int64_t>(subspace.members.size()) == binomial(n, n_up));
      CHECK(std::is_sorted(subspace.members.begin(), subspace.members.end()));
      for (const int label : subspace.members) {
        CHECK(seen.insert(label).second);  // disjoint across n_up
        CHECK(count_up({label, n}) == n_up);
      }
    }
    CHECK(seen.size() == static_cast<std::size_t>(dimension(n)));  // full cover
  }
}

TEST_CASE("lowering image") {
  CHECK(lowering_image({1, 2}) == std::vector<int>{3, 2});
  CHECK(lowering_image({4, 2}).empty());
  CHECK(lowering_image({2, 3}) == std::vector<int>{6, 4});

  // Against the explicit collective sigma^- matrix: column `label` holds
  // exactly the image labels.
  for (int n = 1; n <= 4; ++n) {
    MatrixC lowering = MatrixC::Zero(dimension(n), dimension(n));
    for (int k = 1; k <= n; ++k) lowering += oracle::site_operator(n, k, oracle::sigma_minus());
    for (int label = 1; label <= dimension(n); ++label) {
      const auto image = lowering_image({label, n});
      std::set<int> expected;
      for (int row = 1; row <= dimension(n); ++row) {
        if (std::abs(lowering(row - 1, label - 1)) > 0.5) expected.insert(row);
      }
      CHECK(std::set<int>(image.begin(), image.end()) == expected);
    }
  }

  // S_n members map into S_{n-1}.
  for (int n = 1; n <= 6; ++n) {
    for (int n_up = 1; n_up <= n; ++n_up) {
      for (const int label : enumerate_subspace(n, n_up).members) {
        for (const int lowered : lowering_image({label, n})) {
          CHECK(count_up({lowered, n}) == n_up - 1);
        }
      }
    }
  }
}

TEST_CASE("transition weight examples and brute-force equality") {
  CHECK(transition_weight({3, 2}, {1, 2}) == 1);
  CHECK(transition_weight({1, 2}, {1, 2}) == 0);
  CHECK(transition_weight({4, 2}, {2, 2}) == 1);
  CHECK_THROWS_AS(transition_weight({1, 2}, {1, 3}), std::invalid_argument);

  for (int n = 1; n <= 5; ++n) {
    const MatrixC raising = oracle::collective_raising(n);
    for (int i = 1; i <= dimension(n); ++i) {
      for (int j = 1; j <= dimension(n); ++j) {
        const int brute = static_cast<int>(std::lround(raising(j - 1, i - 1).real()));
        CHECK(transition_weight({i, n}, {j, n}) == brute);
        CHECK(brute <= 1);  // multiplicities above one never occur
      }
    }
  }
}
