#include <algorithm>
#include <cmath>

#include "integrators.hpp"
#include "netdyn/errors.hpp"

namespace netdyn {

namespace {

// +1 / -1 / 0; NaN counts as 0 and never brackets a root.
int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

bool crossed(double left, double right) {
  const int a = sign_of(left);
  if (a == 0) return false;
  if (std::isnan(right)) return false;
  return sign_of(right) != a;
}

}  // namespace

std::optional<EventHit> detect_events(const DenseStep& step, const EventSpec& events) {
  const std::size_t n = events.n_conditions;
  if (n == 0 || !events.condition) return std::nullopt;

  std::vector<double> y(step.dim), g_left(n), g_right(n), g(n);
  step.state_at(step.t0, y);
  events.condition(g_left, y, step.t0);
  step.state_at(step.t1, y);
  events.condition(g_right, y, step.t1);

  const double tol = 1e-10 * std::max(1.0, std::abs(step.t1));
  std::optional<EventHit> best;
  for (std::size_t i = 0; i < n; ++i) {
    if (!crossed(g_left[i], g_right[i])) continue;
    double lo = step.t0;
    double hi = step.t1;
    // A root past an earlier candidate cannot win.
    if (best) {
      step.state_at(best->t, y);
      events.condition(g, y, best->t);
      if (!crossed(g_left[i], g[i])) continue;
      hi = best->t;
    }
    while (hi - lo > tol) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      step.state_at(mid, y);
      events.condition(g, y, mid);
      if (crossed(g_left[i], g[i])) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (!best || hi < best->t) best = EventHit{hi, i};
  }
  return best;
}

namespace detail {

double finish_step(DenseOutput& scratch, std::vector<double> coeffs, double t, double h, double t_end,
                   std::span<const double> y_end, std::vector<double>& u, const SolverConfig& cfg,
                   const EventSpec* events, ParameterBundle* params, const RunOptions& run,
                   Solution& sol, bool& fired) {
  fired = false;
  std::optional<EventHit> hit;
  if (events != nullptr && events->n_conditions > 0) {
    scratch.clear();
    scratch.push(t, h, coeffs);
    scratch.truncate_last(t_end);
    hit = detect_events(
        {t, t_end, u.size(), [&scratch](double s, std::span<double> out) { scratch.eval_last(s, out); }},
        *events);
  }

  double t_next = t_end;
  if (hit) {
    t_next = hit->t;
    scratch.truncate_last(t_next);
    scratch.eval_last(t_next, u);
  } else {
    std::copy(y_end.begin(), y_end.end(), u.begin());
  }

  if (run.history != nullptr) {
    run.history->push(t, h, coeffs);
    run.history->truncate_last(t_next);
    run.history->prune_before(t_next - run.history_keep);
  }
  if (cfg.save_steps) {
    sol.dense.push(t, h, std::move(coeffs));
    sol.dense.truncate_last(t_next);
  }

  if (hit) {
    if (events->affect) {
      IntegratorHandle handle{t_next, u, params};
      events->affect(handle, hit->index);
    }
    sol.events.push_back({t_next, hit->index});
    fired = true;
  }
  if (cfg.save_steps || hit) {
    sol.times.push_back(t_next);
    sol.states.push_back(u);
  }
  return t_next;
}

void store_final(double t, const std::vector<double>& u, Solution& sol) {
  if (sol.times.empty() || sol.times.back() != t) {
    sol.times.push_back(t);
    sol.states.push_back(u);
  }
}

}  // namespace detail

}  // namespace netdyn
