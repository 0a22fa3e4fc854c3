#include "pairspec/bcs.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairspec {

Real gap_equation_residual(const GapProblem& problem, Real delta) {
  Real sum = 0.0;
  for (Eigen::Index m = 0; m < problem.xi.size(); ++m) {
    sum += 1.0 / std::sqrt(problem.xi[m] * problem.xi[m] + delta * delta);
  }
  return 1.0 - 0.5 * problem.v * sum;
}

Real solve_gap_equation(const GapProblem& problem) {
  if (problem.xi.size() == 0) throw std::invalid_argument("gap equation: empty xi");
  if (problem.v <= 0.0) throw std::invalid_argument("gap equation: V must be positive");

  // Solvability: the RHS at Delta -> 0+ is (V/2) sum 1/|xi|, its supremum.
  const Real min_abs_xi = problem.xi.cwiseAbs().minCoeff();
  if (min_abs_xi > 0.0) {
    Real limit = 0.0;
    for (Eigen::Index m = 0; m < problem.xi.size(); ++m) {
      limit += 0.5 * problem.v / std::abs(problem.xi[m]);
    }
    if (limit < 1.0) {
      throw NoSolutionError("gap equation has no solution: (V/2) sum 1/|xi| = " +
                            std::to_string(limit) + " < 1");
    }
  }

  Real lo = 1e-15;
  Real hi = 0.5 * problem.v * static_cast<Real>(problem.xi.size()) +
            problem.xi.cwiseAbs().maxCoeff();
  // residual(lo) <= 0 <= residual(hi); residual is increasing in Delta.
  for (int iter = 0; iter < 200; ++iter) {
    const Real mid = 0.5 * (lo + hi);
    if (gap_equation_residual(problem, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

VectorR quasiparticle_energies(const VectorR& xi, Real delta) {
  if (delta < 0.0) throw std::invalid_argument("quasiparticle_energies: Delta must be >= 0");
  return (xi.array().square() + delta * delta).sqrt().matrix();
}

MatrixR subspace1_block(const PairingModel& model) {
  const int n = model.n_spins;
  if (model.epsilon.size() != n) {
    throw std::invalid_argument("subspace1_block: epsilon length mismatch");
  }
  MatrixR block = MatrixR::Constant(n, n, -model.coupling);
  const Real half_sum = 0.5 * model.epsilon.sum();
  for (int i = 0; i < n; ++i) block(i, i) = model.epsilon[i] - half_sum;
  return block;
}

GapRelationReport gap_relation_check(const VectorR& epsilon, Real v, Real fermi_level) {
  const int n = static_cast<int>(epsilon.size());
  if (n < 2) throw std::invalid_argument("gap_relation_check: need N >= 2");

  GapProblem problem{epsilon.array() - fermi_level, v};
  GapRelationReport report;
  report.delta = solve_gap_equation(problem);

  VectorR quasi = quasiparticle_energies(problem.xi, report.delta);
  std::sort(quasi.data(), quasi.data() + quasi.size());
  report.lhs = quasi[1] - quasi[0];

  const PairingModel model{n, epsilon, v};
  Eigen::SelfAdjointEigenSolver<MatrixR> solver(subspace1_block(model));
  report.rhs = solver.eigenvalues()[1] - solver.eigenvalues()[0];

  report.abs_dev = std::abs(report.lhs - report.rhs);
  report.rel_dev = report.rhs != 0.0 ? report.abs_dev / report.rhs
                                     : std::numeric_limits<Real>::infinity();
  return report;
}

}  // namespace pairspec
