#include <algorithm>
#include <cmath>

#include "integrators.hpp"
#include "netdyn/errors.hpp"

namespace netdyn {

Solution integrate_dde(const NetworkFunction& nf, std::vector<double> u0, const HistoryFn& history,
                       TimeSpan span, const ParameterBundle& p, double tau, const SolverConfig& cfg,
                       const EventSpec* events) {
  if (!(tau > 0.0)) throw ParameterError("delay must be positive");
  if (!history) throw ParameterError("a history function is required");
  if (u0.size() != nf.dim()) throw ParameterError("initial state has wrong dimension");
  nf.check_params(p);

  const std::size_t n = nf.dim();
  const bool implicit = nf.has_algebraic_states();
  const auto kind = implicit ? DenseOutput::Kind::Linear : DenseOutput::Kind::DormandPrince;

  DenseOutput past(kind, n);
  const std::vector<double> start = u0;
  std::vector<double> lagged(n);
  ParameterBundle live = p;
  GraphDataBuffer buffer = nf.make_buffer();

  // Method of steps: with every step no longer than tau, t - tau never lies
  // past the last completed step.
  const auto fill_lagged = [&](double t) {
    const double s = t - tau;
    if (s < span.t0) {
      history(lagged, s);
      return;
    }
    if (past.empty()) {
      if (s > span.t0 + 1e-12 * std::max(1.0, std::abs(span.t0))) {
        throw SolverError("lagged read before history coverage", t);
      }
      std::copy(start.begin(), start.end(), lagged.begin());
      return;
    }
    if (s > past.t_end()) {
      if (s - past.t_end() > 1e-12 * std::max(1.0, std::abs(t))) {
        throw SolverError("lagged read before history coverage", t);
      }
      past.eval(past.t_end(), lagged);
      return;
    }
    past.eval(s, lagged);
  };
  const RhsFn rhs = [&](std::span<double> du, std::span<const double> u, double t) {
    fill_lagged(t);
    nf.evaluate(buffer, du, u, live, t, lagged);
  };

  detail::RunOptions run;
  run.step_cap = tau;
  run.history = &past;
  run.history_keep = tau;

  Solution sol(kind, n);
  if (implicit) {
    detail::run_implicit_euler(rhs, nf.mass_diagonal(), std::move(u0), span, cfg, events, &live, run,
                               sol);
  } else {
    detail::run_dp5(rhs, std::move(u0), span, cfg, events, &live, run, sol);
  }
  sol.symbols = nf.symbols();
  sol.final_params = std::move(live);
  return sol;
}

}  // namespace netdyn
