#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace oracle {

std::vector<double> kuramoto_adjacency(const Eigen::MatrixXi& a, const std::vector<double>& omega,
                                       double sigma, const std::vector<double>& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  std::vector<double> du(u.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(j, i)) s += a(j, i) * std::sin(u[j] - u[i]);
    }
    du[i] = omega[i] + sigma * s;
  }
  return du;
}

std::vector<double> kuramoto_incidence(const Eigen::MatrixXd& b, const std::vector<double>& omega,
                                       double sigma, const std::vector<double>& u) {
  const Eigen::Map<const Eigen::VectorXd> th(u.data(), static_cast<Eigen::Index>(u.size()));
  const Eigen::VectorXd s = (b.transpose() * th).array().sin().matrix();
  const Eigen::VectorXd c = b * s;
  std::vector<double> du(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) du[i] = omega[i] - sigma * c[static_cast<Eigen::Index>(i)];
  return du;
}

std::vector<double> rk4(const Rhs& f, std::vector<double> u, double t0, double t1, double h) {
  const auto steps = static_cast<long>(std::llround((t1 - t0) / h));
  const double dt = (t1 - t0) / static_cast<double>(steps);
  const std::size_t n = u.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * dt;
    f(u, t, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    f(tmp, t + 0.5 * dt, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    f(tmp, t + 0.5 * dt, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
    f(tmp, t + dt, k4);
    for (std::size_t i = 0; i < n; ++i) u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return u;
}

std::vector<netdyn::Edge> watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  netdyn::Rng rng(seed);
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<netdyn::Edge> edges;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + d) % n;
      edges.push_back({i, j});
      adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
      adj(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1;
    }
  }
  for (auto& e : edges) {
    const auto u = static_cast<Eigen::Index>(e.src);
    if (rng.uniform01() >= p) continue;
    if (adj.row(u).sum() >= static_cast<int>(n) - 1) continue;
    Eigen::Index w;
    do {
      w = static_cast<Eigen::Index>(rng.index(n));
    } while (w == u || adj(u, w));
    const auto v = static_cast<Eigen::Index>(e.dst);
    adj(u, v) = adj(v, u) = 0;
    adj(u, w) = adj(w, u) = 1;
    e.dst = static_cast<std::size_t>(w);
  }
  return edges;
}

netdyn::Graph random_graph(netdyn::Rng& rng, std::size_t n, double q) {
  std::vector<netdyn::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() >= q) continue;
      if (rng.uniform01() < 0.5) {
        edges.push_back({i, j});
      } else {
        edges.push_back({j, i});
      }
    }
  }
  for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.index(i)]);
  return netdyn::Graph(false, n, std::move(edges));
}

std::vector<double> random_vector(netdyn::Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double norm2_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace oracle
