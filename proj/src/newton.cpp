#include "newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdyn::detail {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::isfinite(s) ? std::sqrt(s) : std::numeric_limits<double>::infinity();
}

}  // namespace

void fd_jacobian(const ResidualFn& f, std::span<const double> x, Eigen::MatrixXd& jac) {
  const std::size_t n = x.size();
  static const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  jac.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> rp(n), rm(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double delta = root_eps * std::max(std::abs(x[j]), 1.0);
    xp[j] = x[j] + delta;
    f(xp, rp);
    xp[j] = x[j] - delta;
    f(xp, rm);
    xp[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) {
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (rp[i] - rm[i]) / (2.0 * delta);
    }
  }
}

NewtonOutcome damped_newton(const ResidualFn& f, std::span<double> x, const NewtonOptions& options) {
  const std::size_t n = x.size();
  NewtonOutcome out;
  std::vector<double> r(n), r_try(n), x_try(n);
  Eigen::MatrixXd jac;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));

  f(x, r);
  out.residual = max_abs(r);
  if (!std::isfinite(out.residual)) {
    out.failure = "residual is not finite at the initial guess";
    return out;
  }
  for (; out.iterations < options.max_iterations; ++out.iterations) {
    if (out.residual <= options.tol) {
      out.converged = true;
      return out;
    }
    fd_jacobian(f, x, jac);
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = -r[i];
    Eigen::VectorXd dx;
    if (options.solve == LinearSolve::LU) {
      dx = jac.partialPivLu().solve(rhs);
    } else {
      // Threshold must be set before compute(); 1e-7 is above difference-quotient noise.
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
      cod.setThreshold(1e-7);
      cod.compute(jac);
      dx = cod.solve(rhs);
    }

    const double r0 = norm2(r);
    double lambda = 1.0;
    bool decreased = false;
    for (int halving = 0; halving <= options.max_halvings; ++halving, lambda *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) x_try[i] = x[i] + lambda * dx(static_cast<Eigen::Index>(i));
      f(x_try, r_try);
      if (norm2(r_try) < r0) {
        decreased = true;
        break;
      }
    }
    if (!decreased) {
      out.failure = "damped step does not reduce the residual";
      return out;
    }
    std::copy(x_try.begin(), x_try.end(), x.begin());
    r.swap(r_try);
    out.residual = max_abs(r);
  }
  out.converged = out.residual <= options.tol;
  if (!out.converged) out.failure = "iteration limit reached";
  return out;
}

}  // namespace netdyn::detail
