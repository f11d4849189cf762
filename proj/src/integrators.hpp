#pragma once

// Step loops behind the public integrate_* entry points. The method-of-steps
// driver reuses them with a step cap and a rolling history sink.

#include <limits>
#include <span>
#include <vector>

#include "netdyn/solver.hpp"

namespace netdyn::detail {

struct RunOptions {
  /// Hard upper bound on every step (the lag, for delay problems).
  double step_cap = std::numeric_limits<double>::infinity();
  /// Receives every accepted segment; segments older than t - keep are pruned.
  DenseOutput* history = nullptr;
  double history_keep = 0.0;
};

void run_dp5(const RhsFn& f, std::vector<double> u0, TimeSpan span, const SolverConfig& cfg,
             const EventSpec* events, ParameterBundle* params, const RunOptions& run, Solution& sol);

void run_implicit_euler(const RhsFn& f, std::span<const double> mass, std::vector<double> u0,
                        TimeSpan span, const SolverConfig& cfg, const EventSpec* events,
                        ParameterBundle* params, const RunOptions& run, Solution& sol);

/// Commits an accepted step over [t, t_end] with interpolation coefficients
/// `coeffs` (nominal length h): event search and truncation, storage of dense
/// output and states, the affect. `y_end` is the state at t_end. On return `u`
/// holds the state to continue from; the return value is the new time.
/// `fired` is set when an affect ran.
double finish_step(DenseOutput& scratch, std::vector<double> coeffs, double t, double h, double t_end,
                   std::span<const double> y_end, std::vector<double>& u, const SolverConfig& cfg,
                   const EventSpec* events, ParameterBundle* params, const RunOptions& run,
                   Solution& sol, bool& fired);

/// Appends the final state when intermediate steps were not saved.
void store_final(double t, const std::vector<double>& u, Solution& sol);

}  // namespace netdyn::detail
