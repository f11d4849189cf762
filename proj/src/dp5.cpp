#include <algorithm>
#include <cmath>
#include <sstream>

#include "integrators.hpp"
#include "netdyn/errors.hpp"

namespace netdyn {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Fifth minus embedded fourth order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

std::string at_time(const char* what, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t = " << t;
  return os.str();
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Weighted RMS norm used for step control.
double scaled_rms(std::span<const double> v, std::span<const double> a, std::span<const double> b,
                  double atol, double rtol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double r = v[i] / sc;
    sum += r * r;
  }
  return v.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(v.size()));
}

// Hairer-Norsett-Wanner starting step from two derivative evaluations.
double initial_step(const RhsFn& f, std::span<const double> u0, std::span<const double> f0, double t0,
                    double h_limit, const SolverConfig& cfg, Solution& sol) {
  const std::size_t n = u0.size();
  const double d0 = scaled_rms(u0, u0, u0, cfg.atol, cfg.rtol);
  const double d1 = scaled_rms(f0, u0, u0, cfg.atol, cfg.rtol);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, h_limit);
  std::vector<double> u1(n), f1(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) u1[i] = u0[i] + h0 * f0[i];
  f(f1, u1, t0 + h0);
  ++sol.n_rhs_evals;
  for (std::size_t i = 0; i < n; ++i) diff[i] = (f1[i] - f0[i]) / h0;
  const double d2 = scaled_rms(diff, u0, u0, cfg.atol, cfg.rtol);
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, h_limit});
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ParameterError("tolerances must be positive");
  if (!(facmin < 1.0) || !(facmax > 1.0) || !(facmin > 0.0)) {
    throw ParameterError("need 0 < facmin < 1 < facmax");
  }
  if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety factor must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ParameterError("dt_max must be positive");
  if (dt_init < 0.0) throw ParameterError("dt_init must be non-negative");
  if (!adaptive && !(dt_init > 0.0)) throw ParameterError("fixed-step mode needs dt_init > 0");
}

namespace detail {

void run_dp5(const RhsFn& f, std::vector<double> u0, TimeSpan span, const SolverConfig& cfg,
             const EventSpec* events, ParameterBundle* params, const RunOptions& run, Solution& sol) {
  cfg.validate();
  if (!(span.t1 > span.t0)) throw ParameterError("need t1 > t0");
  if (!all_finite(u0)) throw ParameterError("initial state is not finite");

  const std::size_t n = u0.size();
  const double h_limit = std::min({cfg.dt_max, run.step_cap, span.t1 - span.t0});
  std::vector<double> u = std::move(u0);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y(n), y_new(n), err(n);
  DenseOutput scratch(DenseOutput::Kind::DormandPrince, n);

  double t = span.t0;
  sol.times.push_back(t);
  sol.states.push_back(u);

  f(k1, u, t);
  ++sol.n_rhs_evals;

  double h;
  if (!cfg.adaptive) {
    h = (span.t1 - span.t0) / std::ceil((span.t1 - span.t0) / std::min(cfg.dt_init, h_limit));
  } else if (cfg.dt_init > 0.0) {
    h = std::min(cfg.dt_init, h_limit);
  } else {
    h = initial_step(f, u, k1, t, h_limit, cfg, sol);
  }

  bool last_rejected = false;
  while (t < span.t1) {
    if (sol.n_accepted + sol.n_rejected >= cfg.max_steps) {
      throw SolverError(at_time("maximum number of steps exceeded", t), t);
    }
    const double remaining = span.t1 - t;
    bool last = false;
    if (cfg.adaptive) {
      if (t + 1.01 * h >= span.t1 && remaining <= h_limit) {
        h = remaining;
        last = true;
      }
    } else if (remaining <= h * (1.0 + 1e-9)) {
      h = remaining;
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw SolverError(at_time("step size underflow", t), t);

    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + h * a21 * k1[i];
    f(k2, y, t + c2 * h);
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(k3, y, t + c3 * h);
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(k4, y, t + c4 * h);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = u[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    f(k5, y, t + c5 * h);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = u[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    const double t_end = last ? span.t1 : t + h;
    f(k6, y, t_end);
    for (std::size_t i = 0; i < n; ++i) {
      y_new[i] = u[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    f(k7, y_new, t_end);
    sol.n_rhs_evals += 6;

    double err_norm = 0.0;
    if (cfg.adaptive) {
      for (std::size_t i = 0; i < n; ++i) {
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      }
      err_norm = scaled_rms(err, u, y_new, cfg.atol, cfg.rtol);
      if (!std::isfinite(err_norm)) throw SolverError(at_time("non-finite state", t), t);
      if (err_norm > 1.0) {
        const double fac = std::max(cfg.facmin, cfg.safety * std::pow(err_norm, -0.2));
        h *= std::min(1.0, fac);
        ++sol.n_rejected;
        last_rejected = true;
        continue;
      }
    }
    if (!all_finite(y_new)) throw SolverError(at_time("non-finite state", t), t);

    std::vector<double> coeffs(5 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = y_new[i] - u[i];
      const double bspl = h * k1[i] - diff;
      coeffs[i] = u[i];
      coeffs[n + i] = diff;
      coeffs[2 * n + i] = bspl;
      coeffs[3 * n + i] = diff - h * k7[i] - bspl;
      coeffs[4 * n + i] =
          h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    ++sol.n_accepted;

    bool fired = false;
    const double h_taken = h;
    t = finish_step(scratch, std::move(coeffs), t, h_taken, t_end, y_new, u, cfg, events, params, run,
                    sol, fired);
    if (fired) {
      f(k1, u, t);
      ++sol.n_rhs_evals;
    } else {
      k1.swap(k7);
    }

    if (cfg.adaptive) {
      double fac = err_norm == 0.0 ? cfg.facmax : cfg.safety * std::pow(err_norm, -0.2);
      fac = std::clamp(fac, cfg.facmin, last_rejected ? 1.0 : cfg.facmax);
      h = std::min(h_taken * fac, h_limit);
      last_rejected = false;
    }
  }
  store_final(t, u, sol);
}

}  // namespace detail

Solution integrate_dp5(const RhsFn& f, std::vector<double> u0, TimeSpan span, const SolverConfig& cfg,
                       const EventSpec* events, ParameterBundle* params) {
  Solution sol(DenseOutput::Kind::DormandPrince, u0.size());
  detail::run_dp5(f, std::move(u0), span, cfg, events, params, {}, sol);
  return sol;
}

Solution integrate_dp5(const NetworkFunction& nf, std::vector<double> u0, TimeSpan span,
                       const ParameterBundle& p, const SolverConfig& cfg, const EventSpec* events) {
  if (u0.size() != nf.dim()) throw ParameterError("initial state has wrong dimension");
  if (nf.has_algebraic_states()) {
    throw ParameterError("network has algebraic states; use integrate_mass_matrix");
  }
  if (nf.has_delay_edges()) throw ParameterError("network has delay edges; use integrate_dde");
  nf.check_params(p);

  ParameterBundle live = p;
  GraphDataBuffer buffer = nf.make_buffer();
  const RhsFn rhs = [&](std::span<double> du, std::span<const double> u, double t) {
    nf.evaluate(buffer, du, u, live, t);
  };
  Solution sol = integrate_dp5(rhs, std::move(u0), span, cfg, events, &live);
  sol.symbols = nf.symbols();
  sol.final_params = std::move(live);
  return sol;
}

}  // namespace netdyn
