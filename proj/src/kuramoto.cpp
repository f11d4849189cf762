#include "netdyn/kuramoto.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <Eigen/Dense>

#include "netdyn/errors.hpp"
#include "netdyn/random.hpp"

namespace netdyn::kuramoto {

std::vector<double> formula_frequencies(std::size_t n) {
  std::vector<double> omega(n);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    omega[i] = (static_cast<double>(i + 1) - mean) / static_cast<double>(n);
  }
  return omega;
}

System build(const Graph& g, const Variant& variant, double sigma, InitialData init,
             std::uint64_t seed) {
  const std::size_t n = g.n_vertices();
  if (variant.inertia_at && *variant.inertia_at >= n) throw ParameterError("inertia vertex index out of range");
  if (variant.static_at && *variant.static_at >= n) throw ParameterError("static vertex index out of range");
  if (variant.inertia_at && variant.static_at && *variant.inertia_at == *variant.static_at) {
    throw ParameterError("a vertex cannot be both inertial and static");
  }

  std::vector<double> omega, theta;
  if (init == InitialData::Formula) {
    omega = formula_frequencies(n);
    theta = omega;
  } else {
    Rng rng(seed);
    omega.resize(n);
    theta.resize(n);
    for (double& w : omega) w = rng.uniform(-std::numbers::pi, std::numbers::pi);
    for (double& x : theta) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
  }
  if (variant.static_at) theta[*variant.static_at] = omega[*variant.static_at];

  const VertexModel first = make_ode_vertex(vertex, 1, {"θ"});
  std::vector<VertexModel> vertices;
  if (variant.inertia_at || variant.static_at) {
    vertices.assign(n, first);
    if (variant.inertia_at) vertices[*variant.inertia_at] = make_ode_vertex(inertia_vertex, 2, {"θ", "ω"});
    if (variant.static_at) vertices[*variant.static_at] = make_static_vertex(static_vertex, 1, {"θ"});
  } else {
    vertices.push_back(first);
  }
  EdgeModel e = variant.delayed ? make_static_delay_edge(delay_edge, 1, variant.coupling)
                                : make_static_edge(edge, 1, variant.coupling);

  NetworkFunction nf(std::move(vertices), {std::move(e)}, g, variant.options);

  std::vector<double> x0;
  x0.reserve(nf.dim());
  for (std::size_t i = 0; i < n; ++i) {
    x0.push_back(theta[i]);
    if (variant.inertia_at && *variant.inertia_at == i) x0.push_back(kInertiaInitialFrequency);
  }
  ParameterBundle params =
      ParameterBundle::split(ParamPart::per_component(omega), ParamPart::uniform(sigma));
  return {std::move(nf), std::move(omega), std::move(x0), std::move(params)};
}

RhsFn incidence_rhs(const Eigen::SparseMatrix<double>& b, std::vector<double> omega, double sigma) {
  if (static_cast<std::size_t>(b.rows()) != omega.size()) {
    throw ParameterError("incidence matrix rows do not match the number of frequencies");
  }
  struct State {
    Eigen::SparseMatrix<double> b;
    Eigen::SparseMatrix<double> bt;
    Eigen::VectorXd omega;
    Eigen::VectorXd edge_values;
    Eigen::VectorXd node_sums;
    double sigma;
  };
  auto s = std::make_shared<State>();
  s->b = b;
  s->bt = b.transpose();
  s->omega = Eigen::Map<const Eigen::VectorXd>(omega.data(), static_cast<Eigen::Index>(omega.size()));
  s->edge_values.resize(b.cols());
  s->node_sums.resize(b.rows());
  s->sigma = sigma;

  return [s](std::span<double> du, std::span<const double> u, double) {
    const auto n = static_cast<Eigen::Index>(u.size());
    if (n != s->omega.size() || du.size() != u.size()) {
      throw ParameterError("state dimension does not match the incidence matrix");
    }
    const Eigen::Map<const Eigen::VectorXd> theta(u.data(), n);
    Eigen::Map<Eigen::VectorXd> dtheta(du.data(), n);
    s->edge_values.noalias() = s->bt * theta;
    s->edge_values = s->edge_values.array().sin();
    s->node_sums.noalias() = s->b * s->edge_values;
    dtheta = s->omega - s->sigma * s->node_sums;
  };
}

}  // namespace netdyn::kuramoto
