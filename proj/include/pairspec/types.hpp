// Shared scalar/matrix aliases and error types for the pairspec library.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace pairspec {

using Real = double;
using Complex = std::complex<Real>;

using VectorR = Eigen::VectorXd;
using VectorC = Eigen::VectorXcd;
using MatrixR = Eigen::MatrixXd;
using MatrixC = Eigen::MatrixXcd;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;

/// Hilbert-space dimension 2^N for N spins.
inline Eigen::Index dimension(int n_spins) {
  return Eigen::Index{1} << n_spins;
}

// Contract-violation errors surfaced to the CLI. Exit-code mapping:
// NyquistError/AliasingError -> 2, AmbiguousAssignmentError -> 3,
// everything else -> 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NyquistError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AliasingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AmbiguousAssignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pairspec
