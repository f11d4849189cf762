#include <algorithm>
#include <cmath>
#include <sstream>

#include "integrators.hpp"
#include "netdyn/errors.hpp"
#include "newton.hpp"

namespace netdyn {

namespace detail {

void run_implicit_euler(const RhsFn& f, std::span<const double> mass, std::vector<double> u0,
                        TimeSpan span, const SolverConfig& cfg, const EventSpec* events,
                        ParameterBundle* params, const RunOptions& run, Solution& sol) {
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0) || !(cfg.dt_max > 0.0)) {
    throw ParameterError("invalid solver configuration");
  }
  if (!(span.t1 > span.t0)) throw ParameterError("need t1 > t0");
  if (mass.size() != u0.size()) throw ParameterError("mass diagonal has wrong length");
  for (double m : mass) {
    if (m != 0.0 && m != 1.0) throw ParameterError("mass diagonal entries must be 0 or 1");
  }
  for (double x : u0) {
    if (!std::isfinite(x)) throw ParameterError("initial state is not finite");
  }

  const std::size_t n = u0.size();
  const double dt = std::min(std::isfinite(cfg.dt_max) ? cfg.dt_max : 1e-2, run.step_cap);
  const double h_nominal = (span.t1 - span.t0) / std::ceil((span.t1 - span.t0) / dt);

  std::vector<double> u = std::move(u0);
  std::vector<double> x(n), fx(n);
  DenseOutput scratch(DenseOutput::Kind::Linear, n);

  double t = span.t0;
  sol.times.push_back(t);
  sol.states.push_back(u);

  NewtonOptions newton;
  newton.tol = kNewtonTolerance;
  newton.max_iterations = kImplicitNewtonMaxIterations;
  newton.solve = LinearSolve::LU;

  std::size_t step_index = 0;
  while (t < span.t1) {
    if (step_index >= cfg.max_steps) throw SolverError("maximum number of steps exceeded", t);
    const double remaining = span.t1 - t;
    const bool last = remaining <= h_nominal * (1.0 + 1e-9);
    const double h = last ? remaining : h_nominal;
    const double t_next = last ? span.t1 : t + h;

    // Differential rows: x - u - h f(x); algebraic rows: f(x) itself.
    const ResidualFn residual = [&](std::span<const double> xs, std::span<double> r) {
      f(fx, xs, t_next);
      ++sol.n_rhs_evals;
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = mass[i] != 0.0 ? xs[i] - u[i] - h * fx[i] : fx[i];
      }
    };
    std::copy(u.begin(), u.end(), x.begin());
    const NewtonOutcome outcome = damped_newton(residual, x, newton);
    if (!outcome.converged) {
      std::ostringstream os;
      os.precision(17);
      os << "Newton iteration failed in implicit step " << step_index << " at t = " << t << " ("
         << outcome.failure << ", residual " << outcome.residual << ")";
      throw SolverError(os.str(), t);
    }
    ++sol.n_accepted;
    ++step_index;

    std::vector<double> coeffs(2 * n);
    std::copy(u.begin(), u.end(), coeffs.begin());
    std::copy(x.begin(), x.end(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));
    bool fired = false;
    t = finish_step(scratch, std::move(coeffs), t, h, t_next, x, u, cfg, events, params, run, sol,
                    fired);
  }
  store_final(t, u, sol);
}

}  // namespace detail

Solution integrate_mass_matrix(const RhsFn& f, std::span<const double> mass, std::vector<double> u0,
                               TimeSpan span, const SolverConfig& cfg, const EventSpec* events,
                               ParameterBundle* params) {
  Solution sol(DenseOutput::Kind::Linear, u0.size());
  detail::run_implicit_euler(f, mass, std::move(u0), span, cfg, events, params, {}, sol);
  return sol;
}

Solution integrate_mass_matrix(const NetworkFunction& nf, std::vector<double> u0, TimeSpan span,
                               const ParameterBundle& p, const SolverConfig& cfg,
                               const EventSpec* events) {
  if (u0.size() != nf.dim()) throw ParameterError("initial state has wrong dimension");
  if (nf.has_delay_edges()) throw ParameterError("network has delay edges; use integrate_dde");
  nf.check_params(p);

  ParameterBundle live = p;
  GraphDataBuffer buffer = nf.make_buffer();
  const RhsFn rhs = [&](std::span<double> du, std::span<const double> u, double t) {
    nf.evaluate(buffer, du, u, live, t);
  };
  Solution sol = integrate_mass_matrix(rhs, nf.mass_diagonal(), std::move(u0), span, cfg, events, &live);
  sol.symbols = nf.symbols();
  sol.final_params = std::move(live);
  return sol;
}

}  // namespace netdyn
