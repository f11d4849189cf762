#include "netdyn/solution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "netdyn/errors.hpp"

namespace netdyn {

void DenseOutput::push(double t0, double h, std::vector<double> coeffs) {
  const std::size_t expected = (kind_ == Kind::DormandPrince ? 5 : 2) * dim_;
  if (coeffs.size() != expected) throw ParameterError("dense segment has wrong coefficient count");
  segments_.push_back({t0, h, t0 + h, std::move(coeffs)});
}

void DenseOutput::truncate_last(double t_end) { segments_.back().t_end = t_end; }

void DenseOutput::prune_before(double t) {
  while (segments_.size() > 1 && segments_.front().t_end < t) segments_.pop_front();
}

void DenseOutput::eval_segment(const Segment& s, double t, std::span<double> out) const {
  const double theta = (t - s.t0) / s.h;
  const double* c = s.coeffs.data();
  const std::size_t n = dim_;
  if (kind_ == Kind::Linear) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + theta * (c[n + i] - c[i]);
    return;
  }
  const double theta1 = 1.0 - theta;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = c[i] + theta * (c[n + i] + theta1 * (c[2 * n + i] +
                                                  theta * (c[3 * n + i] + theta1 * c[4 * n + i])));
  }
}

void DenseOutput::eval(double t, std::span<double> out) const {
  if (segments_.empty() || t < segments_.front().t0 || t > segments_.back().t_end) {
    throw SolverError("dense output does not cover t", t);
  }
  // First segment whose end is >= t.
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                             [](const Segment& s, double x) { return s.t_end < x; });
  eval_segment(*it, t, out);
}

void DenseOutput::eval_last(double t, std::span<double> out) const {
  eval_segment(segments_.back(), t, out);
}

std::vector<double> Solution::operator()(double t) const {
  std::vector<double> out(dim());
  interpolate(t, out);
  return out;
}

void Solution::interpolate(double t, std::span<double> out) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it != times.end() && *it == t) {
    const auto& s = states[static_cast<std::size_t>(it - times.begin())];
    std::copy(s.begin(), s.end(), out.begin());
    return;
  }
  if (dense.empty()) throw SolverError("solution has no dense output at t", t);
  dense.eval(t, out);
}

void write_solution_csv(const Solution& sol, std::span<const double> sample_times, std::ostream& out) {
  out << 't';
  for (std::size_t i = 0; i < sol.dim(); ++i) {
    out << ',' << (i < sol.symbols.size() ? sol.symbols[i] : "u_" + std::to_string(i));
  }
  out << '\n';
  std::vector<double> row(sol.dim());
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (double t : sample_times) {
    sol.interpolate(t, row);
    out << t;
    for (double x : row) out << ',' << x;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace netdyn
