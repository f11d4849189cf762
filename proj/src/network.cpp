#include "netdyn/network.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "netdyn/errors.hpp"

namespace netdyn {

namespace {

EdgeCall call_mode(const EdgeModel& m, bool directed) {
  if (directed) {
    if (m.coupling == Coupling::Symmetric || m.coupling == Coupling::Antisymmetric) {
      throw ParameterError("symmetric/antisymmetric coupling requires an undirected graph");
    }
    return EdgeCall::Once;
  }
  switch (m.coupling) {
    case Coupling::Directed:
      return EdgeCall::Once;
    case Coupling::Symmetric:
      if (m.kind == EdgeKind::ODE) throw ParameterError("ODE edges cannot use symmetric coupling");
      return EdgeCall::Copy;
    case Coupling::Antisymmetric:
      if (m.kind == EdgeKind::ODE) throw ParameterError("ODE edges cannot use antisymmetric coupling");
      return EdgeCall::Negate;
    case Coupling::Undirected:
    case Coupling::Fiducial:
      return EdgeCall::Twice;
  }
  return EdgeCall::Twice;
}

template <class Model>
std::vector<std::size_t> broadcast_index(const std::vector<Model>& models, std::size_t count,
                                         const char* what) {
  std::vector<std::size_t> index(count, 0);
  if (models.size() == 1) return index;
  if (models.size() != count) {
    throw ParameterError(std::string("expected 1 or ") + std::to_string(count) + " " + what +
                         " models, got " + std::to_string(models.size()));
  }
  for (std::size_t i = 0; i < count; ++i) index[i] = i;
  return index;
}

}  // namespace

NetworkFunction::NetworkFunction(std::vector<VertexModel> vertex_models,
                                 std::vector<EdgeModel> edge_models, Graph graph,
                                 NetworkOptions options)
    : graph_(std::move(graph)),
      options_(options),
      vertex_models_(std::move(vertex_models)),
      edge_models_(std::move(edge_models)) {
  const std::size_t nv = graph_.n_vertices();
  const std::size_t ne = graph_.n_edges();
  if (vertex_models_.empty() && nv > 0) throw ParameterError("no vertex models given");
  if (edge_models_.empty() && ne > 0) throw ParameterError("no edge models given");
  vertex_model_of_ = broadcast_index(vertex_models_, nv, "vertex");
  edge_model_of_ = ne > 0 ? broadcast_index(edge_models_, ne, "edge") : std::vector<std::size_t>{};

  for (auto& m : vertex_models_) {
    if (m.dim < 1 || m.symbols.size() != m.dim) throw ParameterError("malformed vertex model");
    if (m.kind == VertexKind::ODE && !std::holds_alternative<OdeVertexFn>(m.f)) {
      throw ParameterError("ODE vertex model holds a static callable");
    }
    if (m.kind == VertexKind::Static && !std::holds_alternative<StaticVertexFn>(m.f)) {
      throw ParameterError("static vertex model holds an ODE callable");
    }
    detail::ensure_loop(m);
  }
  for (auto& m : edge_models_) {
    if (m.dim < 1 || m.symbols.size() != m.dim) throw ParameterError("malformed edge model");
    const bool ok = (m.kind == EdgeKind::Static && std::holds_alternative<StaticEdgeFn>(m.f)) ||
                    (m.kind == EdgeKind::ODE && std::holds_alternative<OdeEdgeFn>(m.f)) ||
                    (m.kind == EdgeKind::StaticDelay && std::holds_alternative<StaticDelayEdgeFn>(m.f));
    if (!ok) throw ParameterError("edge model kind does not match its callable");
    if (m.kind == EdgeKind::StaticDelay) has_delay_ = true;
    detail::ensure_loop(m);
  }
  if (ne == 0) has_delay_ = false;

  const auto group = [](const std::vector<std::size_t>& model_of, std::size_t n_models) {
    std::vector<Group> groups(n_models);
    for (std::size_t m = 0; m < n_models; ++m) groups[m].model = m;
    for (std::size_t i = 0; i < model_of.size(); ++i) groups[model_of[i]].members.push_back(i);
    std::erase_if(groups, [](const Group& g) { return g.members.empty(); });
    return groups;
  };
  vertex_groups_ = group(vertex_model_of_, vertex_models_.size());
  edge_groups_ = group(edge_model_of_, edge_models_.size());

  // Vertex windows.
  gs_.directed = graph_.directed();
  gs_.vertices.resize(nv);
  std::size_t offset = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    gs_.vertices[v] = {offset, vertex_model(v).dim, 0, 0};
    offset += vertex_model(v).dim;
  }
  gs_.vertex_dim = offset;

  // Edge windows: ODE-edge states follow the vertex states; every edge owns a
  // cache slot.
  std::size_t cache = 0;
  std::vector<std::vector<EdgeRef>> incoming(nv);
  gs_.edges.resize(ne);
  for (std::size_t j = 0; j < ne; ++j) {
    const EdgeModel& m = edge_model(j);
    const Edge& e = graph_.edge(j);
    EdgeLayout& l = gs_.edges[j];
    l.src = e.src;
    l.dst = e.dst;
    l.src_offset = gs_.vertices[e.src].state_offset;
    l.src_dim = gs_.vertices[e.src].dim;
    l.dst_offset = gs_.vertices[e.dst].state_offset;
    l.dst_dim = gs_.vertices[e.dst].dim;
    l.dim = m.dim;
    l.call = call_mode(m, graph_.directed());
    l.doubled = l.call != EdgeCall::Once;
    l.cache_offset = cache;
    cache += l.stored_dim();
    if (m.kind == EdgeKind::ODE) {
      l.state_offset = offset;
      offset += l.stored_dim();
    } else {
      l.state_offset = npos;
    }
    incoming[e.dst].push_back({l.cache_offset, l.dim});
    if (l.doubled) incoming[e.src].push_back({l.cache_offset + l.dim, l.dim});
  }
  gs_.state_dim = offset;
  gs_.cache_dim = cache;
  for (std::size_t v = 0; v < nv; ++v) {
    gs_.vertices[v].incoming_begin = gs_.incoming.size();
    gs_.vertices[v].incoming_count = incoming[v].size();
    gs_.incoming.insert(gs_.incoming.end(), incoming[v].begin(), incoming[v].end());
  }

  // Mass diagonal and symbols.
  mass_.assign(gs_.state_dim, 1.0);
  symbols_.reserve(gs_.state_dim);
  for (std::size_t v = 0; v < nv; ++v) {
    const VertexModel& m = vertex_model(v);
    for (std::size_t i = 0; i < m.dim; ++i) {
      symbols_.push_back(m.symbols[i] + "_" + std::to_string(v));
      if (m.kind == VertexKind::Static) mass_[gs_.vertices[v].state_offset + i] = 0.0;
    }
  }
  for (std::size_t j = 0; j < ne; ++j) {
    const EdgeLayout& l = gs_.edges[j];
    if (l.state_offset == npos) continue;
    const EdgeModel& m = edge_model(j);
    for (std::size_t i = 0; i < m.dim; ++i) symbols_.push_back(m.symbols[i] + "_" + std::to_string(j));
    if (l.doubled) {
      for (std::size_t i = 0; i < m.dim; ++i) {
        symbols_.push_back(m.symbols[i] + "_" + std::to_string(j) + "_rev");
      }
    }
  }
  std::unordered_set<std::string> unique(symbols_.begin(), symbols_.end());
  if (unique.size() != symbols_.size()) {
    throw ParameterError("composite state symbols are not unique; rename component symbols");
  }

  buffer_ = make_buffer();
}

bool NetworkFunction::has_algebraic_states() const noexcept {
  return std::find(mass_.begin(), mass_.end(), 0.0) != mass_.end();
}

void NetworkFunction::check_params(const ParameterBundle& p) const {
  if (!p.is_split()) return;
  const auto check = [](const ParamPart& part, std::size_t count, const char* what) {
    if (part.is_per_component() && part.size() != count) {
      throw ParameterError(std::string(what) + " parameters have " + std::to_string(part.size()) +
                           " entries, network has " + std::to_string(count));
    }
  };
  check(p.vertex_part(), graph_.n_vertices(), "vertex");
  check(p.edge_part(), graph_.n_edges(), "edge");
}

namespace {

// Components per parallel work item.
constexpr std::size_t kChunk = 256;

template <class Args, class Loop>
void run_group(const Loop& loop, Args args, std::span<const std::size_t> members,
               std::span<const std::size_t> Args::*field, bool parallel) {
  if (!parallel || members.size() <= kChunk) {
    args.*field = members;
    loop(args);
    return;
  }
  const auto chunks = static_cast<long>((members.size() + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(static) firstprivate(args)
  for (long c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    args.*field = members.subspan(begin, std::min(kChunk, members.size() - begin));
    loop(args);
  }
}

}  // namespace

void NetworkFunction::edge_loop(GraphDataBuffer& buffer, std::span<double> du,
                                std::span<const double> u, const ParamTable& p, double t,
                                std::span<const double> u_lagged) const {
  const EdgeLoopArgs args{gs_.edges.data(), {}, buffer.e_array.data(), du, u, u_lagged, p, t};
  for (const Group& g : edge_groups_) {
    run_group(edge_models_[g.model].loop, args, g.members, &EdgeLoopArgs::edges, options_.parallel);
  }
}

void NetworkFunction::vertex_loop(const GraphDataBuffer& buffer, std::span<double> du,
                                  std::span<const double> u, const ParamTable& p,
                                  double t) const {
  const VertexLoopArgs args{gs_.vertices.data(), {}, buffer.e_array.data(), gs_.incoming.data(), du, u, p,
                            t};
  for (const Group& g : vertex_groups_) {
    run_group(vertex_models_[g.model].loop, args, g.members, &VertexLoopArgs::vertices,
              options_.parallel);
  }
}

void NetworkFunction::evaluate(GraphDataBuffer& buffer, std::span<double> du,
                               std::span<const double> u, const ParameterBundle& p, double t,
                               std::span<const double> u_lagged) const {
  if (du.size() != gs_.state_dim || u.size() != gs_.state_dim) {
    throw ParameterError("state vectors must have length " + std::to_string(gs_.state_dim));
  }
  if (has_delay_ && u_lagged.size() != gs_.state_dim) {
    throw ParameterError("network has delay edges; the lagged state is required");
  }
  if (buffer.e_array.size() != gs_.cache_dim) throw ParameterError("edge buffer has wrong size");
  check_params(p);

  edge_loop(buffer, du, u, p.table(Side::Edge), t, u_lagged);
  vertex_loop(buffer, du, u, p.table(Side::Vertex), t);
}

void NetworkFunction::write_symbols(std::ostream& out) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) out << symbols_[i] << ' ' << i << '\n';
}

NetworkFunction network_dynamics(VertexModel vertex, EdgeModel edge, const Graph& g,
                                 NetworkOptions options) {
  return NetworkFunction({std::move(vertex)}, {std::move(edge)}, g, options);
}

NetworkFunction network_dynamics(std::vector<VertexModel> vertices, EdgeModel edge, const Graph& g,
                                 NetworkOptions options) {
  return NetworkFunction(std::move(vertices), {std::move(edge)}, g, options);
}

NetworkFunction network_dynamics(VertexModel vertex, std::vector<EdgeModel> edges, const Graph& g,
                                 NetworkOptions options) {
  return NetworkFunction({std::move(vertex)}, std::move(edges), g, options);
}

NetworkFunction network_dynamics(std::vector<VertexModel> vertices, std::vector<EdgeModel> edges,
                                 const Graph& g, NetworkOptions options) {
  return NetworkFunction(std::move(vertices), std::move(edges), g, options);
}

std::vector<std::string> syms_containing(const NetworkFunction& nf, std::string_view fragment) {
  std::vector<std::string> out;
  for (const auto& s : nf.symbols()) {
    if (s.find(fragment) != std::string::npos) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> idx_containing(const NetworkFunction& nf, std::string_view fragment) {
  std::vector<std::size_t> out;
  const auto& syms = nf.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].find(fragment) != std::string::npos) out.push_back(i);
  }
  return out;
}

}  // namespace netdyn
