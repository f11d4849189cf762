#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netdyn/components.hpp"
#include "netdyn/graph.hpp"
#include "netdyn/parameters.hpp"

namespace netdyn {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Precomputed index structure mapping every component into the flat buffers.
///
/// State layout: all vertex states in vertex order, then all ODE-edge states in
/// edge order. Each undirected edge stores 2*dim cache entries; the first half
/// is the value seen by the fiducial destination, the second by the source.
struct GraphStruct {
  bool directed = false;
  std::vector<VertexLayout> vertices;
  std::vector<EdgeLayout> edges;
  std::vector<EdgeRef> incoming;  // concatenated per-vertex incoming windows
  std::size_t vertex_dim = 0;     // sum of vertex dims
  std::size_t state_dim = 0;      // D
  std::size_t cache_dim = 0;      // E

  std::span<const EdgeRef> incoming_of(std::size_t v) const {
    const auto& l = vertices[v];
    return {incoming.data() + l.incoming_begin, l.incoming_count};
  }
};

/// Mutable scratch of one evaluation context: the edge cache. Vertex states
/// are read in place from the solver's state vector.
struct GraphDataBuffer {
  std::vector<double> e_array;
};

struct NetworkOptions {
  /// Run each of the two loops across OpenMP threads. Callables must be reentrant.
  bool parallel = false;
};

/// The assembled right-hand side of the coupled system M u' = f(u, p, t).
class NetworkFunction {
 public:
  /// Each model vector has either one entry (broadcast) or one per component.
  NetworkFunction(std::vector<VertexModel> vertex_models, std::vector<EdgeModel> edge_models,
                  Graph graph, NetworkOptions options = {});

  std::size_t dim() const noexcept { return gs_.state_dim; }
  const Graph& graph() const noexcept { return graph_; }
  const GraphStruct& graph_struct() const noexcept { return gs_; }
  /// 1 for differential states, 0 for states of static vertices.
  const std::vector<double>& mass_diagonal() const noexcept { return mass_; }
  bool has_algebraic_states() const noexcept;
  bool has_delay_edges() const noexcept { return has_delay_; }
  bool parallel() const noexcept { return options_.parallel; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  const VertexModel& vertex_model(std::size_t v) const { return vertex_models_[vertex_model_of_[v]]; }
  const EdgeModel& edge_model(std::size_t e) const { return edge_models_[edge_model_of_[e]]; }

  /// Throws ParameterError unless per-component parts match the vertex/edge counts.
  void check_params(const ParameterBundle& p) const;

  GraphDataBuffer make_buffer() const { return {std::vector<double>(gs_.cache_dim, 0.0)}; }

  /// Evaluates du = f(u, p, t) with the caller's buffer. `u_lagged` is the full
  /// state at t - tau and is required iff the network has delay edges.
  void evaluate(GraphDataBuffer& buffer, std::span<double> du, std::span<const double> u,
                const ParameterBundle& p, double t, std::span<const double> u_lagged = {}) const;

  /// Same as evaluate() with the internal buffer; not safe to call concurrently.
  void operator()(std::span<double> du, std::span<const double> u, const ParameterBundle& p,
                  double t, std::span<const double> u_lagged = {}) const {
    evaluate(buffer_, du, u, p, t, u_lagged);
  }

  /// One `name index` line per state.
  void write_symbols(std::ostream& out) const;

 private:
  struct Group {
    std::size_t model;
    std::vector<std::size_t> members;
  };

  void edge_loop(GraphDataBuffer& buffer, std::span<double> du, std::span<const double> u,
                 const ParamTable& p, double t, std::span<const double> u_lagged) const;
  void vertex_loop(const GraphDataBuffer& buffer, std::span<double> du, std::span<const double> u,
                   const ParamTable& p, double t) const;

  Graph graph_;
  NetworkOptions options_;
  std::vector<VertexModel> vertex_models_;
  std::vector<EdgeModel> edge_models_;
  std::vector<std::size_t> vertex_model_of_;
  std::vector<std::size_t> edge_model_of_;
  std::vector<Group> vertex_groups_;
  std::vector<Group> edge_groups_;
  GraphStruct gs_;
  std::vector<double> mass_;
  std::vector<std::string> symbols_;
  bool has_delay_ = false;
  mutable GraphDataBuffer buffer_;
};

NetworkFunction network_dynamics(VertexModel vertex, EdgeModel edge, const Graph& g,
                                 NetworkOptions options = {});
NetworkFunction network_dynamics(std::vector<VertexModel> vertices, EdgeModel edge, const Graph& g,
                                 NetworkOptions options = {});
NetworkFunction network_dynamics(VertexModel vertex, std::vector<EdgeModel> edges, const Graph& g,
                                 NetworkOptions options = {});
NetworkFunction network_dynamics(std::vector<VertexModel> vertices, std::vector<EdgeModel> edges,
                                 const Graph& g, NetworkOptions options = {});

/// All composite symbols containing `fragment`, in state order.
std::vector<std::string> syms_containing(const NetworkFunction& nf, std::string_view fragment);
/// State indices of syms_containing(nf, fragment).
std::vector<std::size_t> idx_containing(const NetworkFunction& nf, std::string_view fragment);

}  // namespace netdyn
