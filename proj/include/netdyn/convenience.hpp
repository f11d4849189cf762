#pragma once

#include <vector>

#include "netdyn/network.hpp"
#include "netdyn/parameters.hpp"

namespace netdyn {

inline constexpr double kFixpointTolerance = 1e-10;
inline constexpr int kFixpointMaxIterations = 100;

/// Damped Newton on the full right-hand side (algebraic rows act as residuals).
/// Uses a minimum-norm linear solve, so degenerate families such as the
/// phase-shift invariance of Kuramoto networks are fine; any member is returned.
/// Throws SolverError when the max-abs residual cannot be brought to 1e-10.
std::vector<double> find_fixpoint(const NetworkFunction& nf, const ParameterBundle& p,
                                  std::vector<double> x_guess, double t = 0.0);

/// Solves only the algebraic rows for the algebraic states; differential
/// states keep their guessed values. Returns x_guess untouched for pure ODEs.
std::vector<double> find_valid_ic(const NetworkFunction& nf, const ParameterBundle& p,
                                  std::vector<double> x_guess, double t = 0.0);

}  // namespace netdyn
