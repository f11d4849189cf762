#pragma once

#include <stdexcept>
#include <string>

namespace netdyn {

/// Invalid argument to a constructor or generator (bad dimension, length mismatch, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not defined for the given input (e.g. incidence matrix of a directed graph).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Integration or nonlinear solve failed. `time()` is the simulation time at failure.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace netdyn
