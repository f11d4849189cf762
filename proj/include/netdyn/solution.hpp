#pragma once

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netdyn/parameters.hpp"

namespace netdyn {

/// Continuous interpolant over a sequence of accepted steps.
///
/// Dormand-Prince segments carry the five coefficient vectors of the standard
/// fourth-order continuous extension; linear segments carry the two endpoint
/// states. A segment may be truncated (by an event) before its nominal end.
class DenseOutput {
 public:
  enum class Kind { DormandPrince, Linear };

  DenseOutput(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return segments_.empty(); }
  std::size_t size() const noexcept { return segments_.size(); }
  double t_begin() const { return segments_.front().t0; }
  double t_end() const { return segments_.back().t_end; }

  /// Appends a segment over [t0, t0 + h]; `coeffs` holds 5*dim (DP) or 2*dim (linear) values.
  void push(double t0, double h, std::vector<double> coeffs);
  void clear() { segments_.clear(); }
  /// Shortens the last segment to end at t_end.
  void truncate_last(double t_end);
  /// Drops leading segments that end before t.
  void prune_before(double t);

  /// Writes the interpolated state at t into out. Throws SolverError if t is
  /// outside [t_begin, t_end].
  void eval(double t, std::span<double> out) const;
  /// Evaluates the last segment only.
  void eval_last(double t, std::span<double> out) const;

 private:
  struct Segment {
    double t0;
    double h;
    double t_end;
    std::vector<double> coeffs;
  };

  void eval_segment(const Segment& s, double t, std::span<double> out) const;

  Kind kind_;
  std::size_t dim_;
  std::deque<Segment> segments_;
};

struct EventRecord {
  double t;
  std::size_t index;
};

/// Integration result: accepted times and states, dense output and event log.
///
/// At an event time the stored state is the one after the affect was applied,
/// so the trajectory is right-continuous and times stay strictly increasing.
class Solution {
 public:
  Solution(DenseOutput::Kind kind, std::size_t dim) : dense(kind, dim) {}

  std::vector<double> times;
  std::vector<std::vector<double>> states;
  DenseOutput dense;
  std::vector<EventRecord> events;
  std::vector<std::string> symbols;
  /// Parameters as left by event affects (set by the network-function overloads).
  std::optional<ParameterBundle> final_params;

  std::size_t n_rhs_evals = 0;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;

  std::size_t dim() const noexcept { return dense.dim(); }
  const std::vector<double>& final_state() const { return states.back(); }

  /// State at t. Stored times return the stored state exactly; other times use
  /// the dense output (unavailable when steps were not saved).
  std::vector<double> operator()(double t) const;
  void interpolate(double t, std::span<double> out) const;
};

/// CSV with header `t,<symbol...>` and one interpolated row per sample time.
void write_solution_csv(const Solution& sol, std::span<const double> sample_times, std::ostream& out);

}  // namespace netdyn
