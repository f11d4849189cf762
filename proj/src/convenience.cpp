#include "netdyn/convenience.hpp"

#include <cmath>
#include <sstream>

#include "netdyn/errors.hpp"
#include "newton.hpp"

namespace netdyn {

namespace {

[[noreturn]] void fail(const char* what, const detail::NewtonOutcome& outcome, double t) {
  std::ostringstream os;
  os << what << " did not converge after " << outcome.iterations << " iterations ("
     << outcome.failure << "), final residual " << outcome.residual;
  throw SolverError(os.str(), t);
}

void check_guess(const NetworkFunction& nf, const std::vector<double>& x) {
  if (x.size() != nf.dim()) throw ParameterError("guess has wrong dimension");
  for (double v : x) {
    if (!std::isfinite(v)) throw ParameterError("guess is not finite");
  }
}

}  // namespace

std::vector<double> find_fixpoint(const NetworkFunction& nf, const ParameterBundle& p,
                                  std::vector<double> x_guess, double t) {
  check_guess(nf, x_guess);
  if (nf.has_delay_edges()) throw ParameterError("fixpoints of delay networks are not supported");
  nf.check_params(p);

  GraphDataBuffer buffer = nf.make_buffer();
  const detail::ResidualFn residual = [&](std::span<const double> x, std::span<double> r) {
    nf.evaluate(buffer, r, x, p, t);
  };
  detail::NewtonOptions options;
  options.tol = kFixpointTolerance;
  options.max_iterations = kFixpointMaxIterations;
  options.solve = detail::LinearSolve::LeastSquares;
  const auto outcome = detail::damped_newton(residual, x_guess, options);
  if (!outcome.converged) fail("find_fixpoint", outcome, t);
  return x_guess;
}

std::vector<double> find_valid_ic(const NetworkFunction& nf, const ParameterBundle& p,
                                  std::vector<double> x_guess, double t) {
  check_guess(nf, x_guess);
  if (nf.has_delay_edges()) throw ParameterError("initialisation of delay networks is not supported");
  nf.check_params(p);

  std::vector<std::size_t> algebraic;
  const auto& mass = nf.mass_diagonal();
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] == 0.0) algebraic.push_back(i);
  }
  if (algebraic.empty()) return x_guess;

  GraphDataBuffer buffer = nf.make_buffer();
  std::vector<double> full = x_guess;
  std::vector<double> du(nf.dim());
  const detail::ResidualFn residual = [&](std::span<const double> z, std::span<double> r) {
    for (std::size_t k = 0; k < algebraic.size(); ++k) full[algebraic[k]] = z[k];
    nf.evaluate(buffer, du, full, p, t);
    for (std::size_t k = 0; k < algebraic.size(); ++k) r[k] = du[algebraic[k]];
  };
  std::vector<double> z(algebraic.size());
  for (std::size_t k = 0; k < algebraic.size(); ++k) z[k] = x_guess[algebraic[k]];

  detail::NewtonOptions options;
  options.tol = kFixpointTolerance;
  options.max_iterations = kFixpointMaxIterations;
  options.solve = detail::LinearSolve::LeastSquares;
  const auto outcome = detail::damped_newton(residual, z, options);
  if (!outcome.converged) fail("find_valid_ic", outcome, t);

  for (std::size_t k = 0; k < algebraic.size(); ++k) x_guess[algebraic[k]] = z[k];
  return x_guess;
}

}  // namespace netdyn
