#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "netdyn/network.hpp"
#include "netdyn/parameters.hpp"
#include "netdyn/solution.hpp"

namespace netdyn {

struct TimeSpan {
  double t0;
  double t1;
};

struct SolverConfig {
  double rtol = 1e-6;
  double atol = 1e-8;
  /// Initial step; 0 selects it automatically. In fixed-step mode this is the step.
  double dt_init = 0.0;
  /// Upper step bound. The implicit stepper uses 1e-2 when this is left infinite.
  double dt_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 10'000'000;
  double safety = 0.9;
  double facmin = 0.2;
  double facmax = 10.0;
  /// false: fixed steps of dt_init (shortened so the grid ends on t1), no error control.
  bool adaptive = true;
  /// false: keep only the initial, event and final states and no dense output.
  bool save_steps = true;

  void validate() const;
};

/// du = f(u, t)
using RhsFn = std::function<void(std::span<double> du, std::span<const double> u, double t)>;

/// What an event affect may touch. `params` is null when integrating a plain RhsFn.
struct IntegratorHandle {
  double t;
  std::span<double> u;
  ParameterBundle* params;
};

/// Vector of continuous conditions; the affect fires when condition i crosses zero.
struct EventSpec {
  std::size_t n_conditions = 0;
  std::function<void(std::span<double> out, std::span<const double> u, double t)> condition;
  std::function<void(IntegratorHandle& integrator, std::size_t index)> affect;
};

struct EventHit {
  double t;
  std::size_t index;
};

/// One accepted step as seen by event detection: its interval and interpolant.
struct DenseStep {
  double t0;
  double t1;
  std::size_t dim;
  std::function<void(double t, std::span<double> out)> state_at;
};

/// Earliest zero crossing of any condition on the step, located by bisection
/// on the interpolant to 1e-10 * max(1, |t|). A condition that is exactly zero
/// at t0 does not fire; exactly zero at t1 does. The returned time is the right
/// end of the final bracket, so the condition has already changed sign there.
std::optional<EventHit> detect_events(const DenseStep& step, const EventSpec& events);

/// Adaptive Dormand-Prince 5(4) with FSAL and dense output.
Solution integrate_dp5(const RhsFn& f, std::vector<double> u0, TimeSpan span, const SolverConfig& cfg,
                       const EventSpec* events = nullptr, ParameterBundle* params = nullptr);

/// Network overload. Requires a pure ODE (all mass entries 1) without delay edges.
Solution integrate_dp5(const NetworkFunction& nf, std::vector<double> u0, TimeSpan span,
                       const ParameterBundle& p, const SolverConfig& cfg,
                       const EventSpec* events = nullptr);

/// Fixed-step implicit Euler for M u' = f(u, t) with diagonal 0/1 mass,
/// solved per step by damped Newton with a central-difference Jacobian.
/// Algebraic rows are solved to `kNewtonTolerance` at every step.
Solution integrate_mass_matrix(const RhsFn& f, std::span<const double> mass, std::vector<double> u0,
                               TimeSpan span, const SolverConfig& cfg,
                               const EventSpec* events = nullptr, ParameterBundle* params = nullptr);

Solution integrate_mass_matrix(const NetworkFunction& nf, std::vector<double> u0, TimeSpan span,
                               const ParameterBundle& p, const SolverConfig& cfg,
                               const EventSpec* events = nullptr);

/// History for t < t0: writes the state at t.
using HistoryFn = std::function<void(std::span<double> out, double t)>;

/// Constant-lag DDE by the method of steps. Steps are capped at tau so every
/// lagged read falls on completed dense output (or the history for t < t0).
/// Pure-ODE networks use Dormand-Prince; networks with static vertices use the
/// implicit Euler stepper with linear interpolation of its accepted states.
Solution integrate_dde(const NetworkFunction& nf, std::vector<double> u0, const HistoryFn& history,
                       TimeSpan span, const ParameterBundle& p, double tau, const SolverConfig& cfg,
                       const EventSpec* events = nullptr);

inline constexpr double kNewtonTolerance = 1e-10;
inline constexpr int kImplicitNewtonMaxIterations = 25;

}  // namespace netdyn
