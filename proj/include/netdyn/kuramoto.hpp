#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "netdyn/graph.hpp"
#include "netdyn/network.hpp"
#include "netdyn/parameters.hpp"
#include "netdyn/solver.hpp"

namespace netdyn::kuramoto {

// Component callables of the Kuramoto family. Vertex parameter: the intrinsic
// frequency omega (or the pinned angle for the static vertex). Edge parameter:
// the coupling strength sigma. Only the first vertex state (the phase) couples.

/// e = sigma * sin(theta_src - theta_dst)
inline constexpr auto edge = [](Window e, ConstWindow v_src, ConstWindow v_dst, ParamView p, double) {
  e[0] = p[0] * std::sin(v_src[0] - v_dst[0]);
};

/// e = sigma * sin(theta_src - lagged theta_dst)
inline constexpr auto delay_edge = [](Window e, ConstWindow v_src, ConstWindow, ConstWindow,
                                      ConstWindow h_dst, ParamView p, double) {
  e[0] = p[0] * std::sin(v_src[0] - h_dst[0]);
};

/// dtheta = omega + sum of incoming edges
inline constexpr auto vertex = [](Window dv, ConstWindow, const EdgeWindows& edges, ParamView p, double) {
  double sum = p[0];
  for (ConstWindow e : edges) sum += e[0];
  dv[0] = sum;
};

/// Second order: dtheta = w, dw = P - w + sum of incoming edges.
inline constexpr auto inertia_vertex = [](Window dv, ConstWindow v, const EdgeWindows& edges, ParamView p,
                                          double) {
  double sum = p[0] - v[1];
  for (ConstWindow e : edges) sum += e[0];
  dv[0] = v[1];
  dv[1] = sum;
};

/// theta = c
inline constexpr auto static_vertex = [](Window v, const EdgeWindows&, ParamView p, double) { v[0] = p[0]; };

/// Initial frequency of the inertia vertex's second state.
inline constexpr double kInertiaInitialFrequency = 3.0;

struct Variant {
  std::optional<std::size_t> inertia_at;  // vertex replaced by a second-order oscillator
  std::optional<std::size_t> static_at;   // vertex pinned to its parameter
  bool delayed = false;                   // delay edges reading the lagged destination phase
  Coupling coupling = Coupling::Fiducial;
  NetworkOptions options;

  static Variant first_order() { return {}; }
  static Variant with_inertia_at(std::size_t v) {
    Variant out;
    out.inertia_at = v;
    return out;
  }
  static Variant static_at_vertex(std::size_t v) {
    Variant out;
    out.static_at = v;
    return out;
  }
};

enum class InitialData {
  /// omega_i = x0_i = (i + 1 - (N + 1) / 2) / N, i.e. -0.45 ... 0.45 for N = 10.
  Formula,
  /// omega then x0, each N draws uniform on [-pi, pi] from Rng(seed).
  Random,
};

struct System {
  NetworkFunction nf;
  std::vector<double> omega;  // one per vertex
  std::vector<double> x0;     // length nf.dim()
  ParameterBundle params;     // split(per-vertex omega, uniform sigma)
};

/// Kuramoto network on g. The inertia vertex gets omega_i as its power and
/// starts with frequency kInertiaInitialFrequency; the static vertex is pinned
/// to omega_i and starts there.
System build(const Graph& g, const Variant& variant, double sigma = 5.0,
             InitialData init = InitialData::Formula, std::uint64_t seed = 0);

/// omega_i = (i + 1 - (N + 1) / 2) / N
std::vector<double> formula_frequencies(std::size_t n);

/// du = omega - sigma * B sin(B^T u) with sparse products; B from oriented_incidence.
RhsFn incidence_rhs(const Eigen::SparseMatrix<double>& b, std::vector<double> omega, double sigma);

}  // namespace netdyn::kuramoto
