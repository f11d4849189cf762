#pragma once

// Damped Newton iteration shared by the implicit stepper and the fixpoint helpers.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netdyn::detail {

using ResidualFn = std::function<void(std::span<const double> x, std::span<double> r)>;

enum class LinearSolve {
  LU,            // partial-pivot LU; Jacobian assumed nonsingular
  LeastSquares,  // minimum-norm solve, tolerates rank deficiency
};

struct NewtonOptions {
  double tol = 1e-10;  // on max |r_i|
  int max_iterations = 25;
  int max_halvings = 10;
  LinearSolve solve = LinearSolve::LU;
};

struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max |r_i| at the returned x
  std::string failure;
};

/// Central-difference Jacobian, perturbation sqrt(eps) * max(|x_j|, 1).
void fd_jacobian(const ResidualFn& f, std::span<const double> x, Eigen::MatrixXd& jac);

/// Solves F(x) = 0 in place. A step is halved until the residual 2-norm
/// decreases, at most max_halvings times; failing that the iteration stops.
NewtonOutcome damped_newton(const ResidualFn& f, std::span<double> x, const NewtonOptions& options);

}  // namespace netdyn::detail
