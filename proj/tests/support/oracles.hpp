#pragma once

// Test-side reference implementations. Written independently of the library
// code paths they check: dense matrices, plain loops, no shared helpers.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "netdyn/graph.hpp"
#include "netdyn/random.hpp"

namespace oracle {

/// du_i = omega_i + sigma * sum_j A(j, i) * sin(u_j - u_i)
std::vector<double> kuramoto_adjacency(const Eigen::MatrixXi& a, const std::vector<double>& omega,
                                       double sigma, const std::vector<double>& u);

/// omega - sigma * B sin(B^T u), dense B
std::vector<double> kuramoto_incidence(const Eigen::MatrixXd& b, const std::vector<double>& omega,
                                       double sigma, const std::vector<double>& u);

using Rhs = std::function<void(const std::vector<double>& u, double t, std::vector<double>& du)>;

/// Classic fourth-order Runge-Kutta with n = round((t1 - t0) / h) equal steps.
std::vector<double> rk4(const Rhs& f, std::vector<double> u, double t0, double t1, double h);

/// Watts-Strogatz rewiring on an adjacency matrix, same draw sequence as the
/// documented generator.
std::vector<netdyn::Edge> watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Random undirected simple graph: each pair kept with probability q, stored in
/// a random orientation, edge order shuffled.
netdyn::Graph random_graph(netdyn::Rng& rng, std::size_t n, double q);

std::vector<double> random_vector(netdyn::Rng& rng, std::size_t n, double lo, double hi);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);
double norm2_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
