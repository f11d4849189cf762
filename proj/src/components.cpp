#include "netdyn/components.hpp"

#include <algorithm>
#include <utility>

#include "netdyn/errors.hpp"

namespace netdyn {

namespace {

std::vector<std::string> checked_symbols(std::vector<std::string> symbols, std::size_t dim,
                                         const char* prefix) {
  if (dim < 1) throw ParameterError("component dimension must be at least 1");
  if (symbols.empty()) {
    for (std::size_t i = 1; i <= dim; ++i) symbols.push_back(prefix + std::to_string(i));
  }
  if (symbols.size() != dim) {
    throw ParameterError("got " + std::to_string(symbols.size()) + " symbols for dimension " +
                         std::to_string(dim));
  }
  return symbols;
}

}  // namespace

void coupling_sum(Window dv, const EdgeWindows& edges) {
  for (ConstWindow e : edges) {
    const std::size_t n = std::min(dv.size(), e.size());
    for (std::size_t i = 0; i < n; ++i) dv[i] += e[i];
  }
}

namespace detail {

VertexModel vertex_model(VertexKind kind, std::size_t dim, std::vector<std::string> symbols,
                         std::variant<OdeVertexFn, StaticVertexFn> f) {
  const bool empty = std::visit([](const auto& fn) { return !fn; }, f);
  if (empty) throw ParameterError("vertex model needs a callable");
  return {kind, dim, checked_symbols(std::move(symbols), dim, "v_"), std::move(f), {}};
}

EdgeModel edge_model(EdgeKind kind, std::size_t dim, Coupling coupling, std::vector<std::string> symbols,
                     std::variant<StaticEdgeFn, OdeEdgeFn, StaticDelayEdgeFn> f) {
  const bool empty = std::visit([](const auto& fn) { return !fn; }, f);
  if (empty) throw ParameterError("edge model needs a callable");
  if (kind == EdgeKind::ODE && (coupling == Coupling::Symmetric || coupling == Coupling::Antisymmetric)) {
    throw ParameterError("ODE edges cannot use symmetric or antisymmetric coupling");
  }
  return {kind, dim, coupling, checked_symbols(std::move(symbols), dim, "e_"), std::move(f), {}};
}

void ensure_loop(VertexModel& m) {
  if (m.loop) return;
  if (const auto* f = std::get_if<OdeVertexFn>(&m.f)) {
    m.loop = ode_vertex_loop(*f);
  } else {
    m.loop = static_vertex_loop(std::get<StaticVertexFn>(m.f));
  }
}

void ensure_loop(EdgeModel& m) {
  if (m.loop) return;
  if (const auto* f = std::get_if<StaticEdgeFn>(&m.f)) {
    m.loop = static_edge_loop(*f);
  } else if (const auto* g = std::get_if<OdeEdgeFn>(&m.f)) {
    m.loop = ode_edge_loop(*g);
  } else {
    m.loop = delay_edge_loop(std::get<StaticDelayEdgeFn>(m.f));
  }
}

}  // namespace detail

}  // namespace netdyn
