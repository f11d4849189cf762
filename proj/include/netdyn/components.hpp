#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "netdyn/parameters.hpp"

namespace netdyn {

using Window = std::span<double>;
using ConstWindow = std::span<const double>;

/// Location of one edge value inside the flat edge cache.
struct EdgeRef {
  std::size_t offset;
  std::size_t dim;
};

/// The incoming edge values of one vertex, as read-only windows into the edge
/// cache. A non-owning view; iterating it never allocates.
class EdgeWindows {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ConstWindow;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = ConstWindow;

    iterator() = default;
    iterator(const double* base, const EdgeRef* ref) : base_(base), ref_(ref) {}

    ConstWindow operator*() const { return {base_ + ref_->offset, ref_->dim}; }
    iterator& operator++() {
      ++ref_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++ref_;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.ref_ == b.ref_; }

   private:
    const double* base_ = nullptr;
    const EdgeRef* ref_ = nullptr;
  };

  EdgeWindows() = default;
  EdgeWindows(const double* base, std::span<const EdgeRef> refs) : base_(base), refs_(refs) {}

  std::size_t size() const noexcept { return refs_.size(); }
  bool empty() const noexcept { return refs_.empty(); }
  ConstWindow operator[](std::size_t i) const { return {base_ + refs_[i].offset, refs_[i].dim}; }
  iterator begin() const { return {base_, refs_.data()}; }
  iterator end() const { return {base_, refs_.data() + refs_.size()}; }

 private:
  const double* base_ = nullptr;
  std::span<const EdgeRef> refs_;
};

/// In-place adds every incoming edge window to dv (element-wise, over the
/// shorter of the two lengths).
void coupling_sum(Window dv, const EdgeWindows& edges);

/// How the edge loop fills the cache of one edge.
enum class EdgeCall {
  Once,    // single call, destination half only
  Twice,   // fiducial: src->dst into the first half, dst->src into the second
  Copy,    // symmetric: second half = first half
  Negate,  // antisymmetric: second half = -first half
};

struct VertexLayout {
  std::size_t state_offset;
  std::size_t dim;
  std::size_t incoming_begin;  // into GraphStruct::incoming
  std::size_t incoming_count;
};

struct EdgeLayout {
  std::size_t src, dst;
  std::size_t src_offset, src_dim;
  std::size_t dst_offset, dst_dim;
  std::size_t dim;           // value dimension of one orientation
  std::size_t cache_offset;  // first half; the second half (if doubled) follows
  bool doubled;
  EdgeCall call;
  std::size_t state_offset;  // ODE edges: first state index in u; npos otherwise

  std::size_t stored_dim() const { return doubled ? 2 * dim : dim; }
};

/// Everything one assembly loop over a set of edges needs.
struct EdgeLoopArgs {
  const EdgeLayout* layouts;          // indexed by edge
  std::span<const std::size_t> edges;  // edges to process
  double* cache;
  std::span<double> du;
  std::span<const double> u;
  std::span<const double> u_lagged;  // empty unless the network has delay edges
  ParamTable p;
  double t;
};

struct VertexLoopArgs {
  const VertexLayout* layouts;
  std::span<const std::size_t> vertices;
  const double* cache;
  const EdgeRef* incoming;
  std::span<double> du;
  std::span<const double> u;
  ParamTable p;
  double t;
};

/// Loop over a group of components sharing one model. Built from the concrete
/// callable type so the per-component call can be inlined.
using EdgeLoop = std::function<void(const EdgeLoopArgs&)>;
using VertexLoop = std::function<void(const VertexLoopArgs&)>;

// Callable signatures. Callables write their result into the first argument
// and return nothing.

/// (dv, v, incoming edges, p, t)
using OdeVertexFn = std::function<void(Window, ConstWindow, const EdgeWindows&, ParamView, double)>;
/// (v_target, incoming edges, p, t): writes the value the vertex state must equal.
using StaticVertexFn = std::function<void(Window, const EdgeWindows&, ParamView, double)>;
/// (e, v_src, v_dst, p, t)
using StaticEdgeFn = std::function<void(Window, ConstWindow, ConstWindow, ParamView, double)>;
/// (e, v_src, v_dst, h_v_src, h_v_dst, p, t) with h_* the lagged vertex states.
using StaticDelayEdgeFn =
    std::function<void(Window, ConstWindow, ConstWindow, ConstWindow, ConstWindow, ParamView, double)>;
/// (de, e, v_src, v_dst, p, t)
using OdeEdgeFn = std::function<void(Window, ConstWindow, ConstWindow, ConstWindow, ParamView, double)>;

enum class VertexKind { ODE, Static };
enum class EdgeKind { Static, ODE, StaticDelay };

/// How an edge callable maps onto the two endpoints.
///
/// On undirected graphs: Fiducial and Undirected call the function twice
/// (src->dst for the destination, dst->src for the source); Symmetric calls once
/// and hands the same value to both ends; Antisymmetric calls once and hands the
/// negated value to the source; Directed calls once and only the destination
/// sees the value. On directed graphs every edge is called once in its natural
/// orientation; Symmetric and Antisymmetric are rejected.
enum class Coupling { Directed, Undirected, Symmetric, Antisymmetric, Fiducial };

struct VertexModel {
  VertexKind kind;
  std::size_t dim;
  std::vector<std::string> symbols;
  std::variant<OdeVertexFn, StaticVertexFn> f;
  /// Filled by the make_* functions; rebuilt from f when empty.
  VertexLoop loop;
};

struct EdgeModel {
  EdgeKind kind;
  std::size_t dim;
  Coupling coupling;
  std::vector<std::string> symbols;
  std::variant<StaticEdgeFn, OdeEdgeFn, StaticDelayEdgeFn> f;
  /// Filled by the make_* functions; rebuilt from f when empty.
  EdgeLoop loop;
};

namespace detail {

inline void finish_second_half(const EdgeLayout& l, double* first) {
  double* second = first + l.dim;
  if (l.call == EdgeCall::Copy) {
    for (std::size_t i = 0; i < l.dim; ++i) second[i] = first[i];
  } else if (l.call == EdgeCall::Negate) {
    for (std::size_t i = 0; i < l.dim; ++i) second[i] = -first[i];
  }
}

template <class F>
EdgeLoop static_edge_loop(F f) {
  return [f = std::move(f)](const EdgeLoopArgs& a) mutable {
    const double* u = a.u.data();
    for (const std::size_t j : a.edges) {
      const EdgeLayout& l = a.layouts[j];
      const ConstWindow vs(u + l.src_offset, l.src_dim);
      const ConstWindow vd(u + l.dst_offset, l.dst_dim);
      const ParamView p = a.p[j];
      double* first = a.cache + l.cache_offset;
      f(Window(first, l.dim), vs, vd, p, a.t);
      if (l.call == EdgeCall::Twice) {
        f(Window(first + l.dim, l.dim), vd, vs, p, a.t);
      } else {
        finish_second_half(l, first);
      }
    }
  };
}

template <class F>
EdgeLoop delay_edge_loop(F f) {
  return [f = std::move(f)](const EdgeLoopArgs& a) mutable {
    const double* u = a.u.data();
    const double* h = a.u_lagged.data();
    for (const std::size_t j : a.edges) {
      const EdgeLayout& l = a.layouts[j];
      const ConstWindow vs(u + l.src_offset, l.src_dim);
      const ConstWindow vd(u + l.dst_offset, l.dst_dim);
      const ConstWindow hs(h + l.src_offset, l.src_dim);
      const ConstWindow hd(h + l.dst_offset, l.dst_dim);
      const ParamView p = a.p[j];
      double* first = a.cache + l.cache_offset;
      f(Window(first, l.dim), vs, vd, hs, hd, p, a.t);
      if (l.call == EdgeCall::Twice) {
        f(Window(first + l.dim, l.dim), vd, vs, hd, hs, p, a.t);
      } else {
        finish_second_half(l, first);
      }
    }
  };
}

// ODE edges write derivatives to du and expose their current state to the
// vertices through the cache.
template <class F>
EdgeLoop ode_edge_loop(F f) {
  return [f = std::move(f)](const EdgeLoopArgs& a) mutable {
    const double* u = a.u.data();
    for (const std::size_t j : a.edges) {
      const EdgeLayout& l = a.layouts[j];
      const ConstWindow vs(u + l.src_offset, l.src_dim);
      const ConstWindow vd(u + l.dst_offset, l.dst_dim);
      const ParamView p = a.p[j];
      f(a.du.subspan(l.state_offset, l.dim), a.u.subspan(l.state_offset, l.dim), vs, vd, p, a.t);
      if (l.call == EdgeCall::Twice) {
        f(a.du.subspan(l.state_offset + l.dim, l.dim), a.u.subspan(l.state_offset + l.dim, l.dim), vd, vs,
          p, a.t);
      }
      std::copy_n(u + l.state_offset, l.stored_dim(), a.cache + l.cache_offset);
    }
  };
}

template <class F>
VertexLoop ode_vertex_loop(F f) {
  return [f = std::move(f)](const VertexLoopArgs& a) mutable {
    for (const std::size_t v : a.vertices) {
      const VertexLayout& l = a.layouts[v];
      const EdgeWindows edges(a.cache, {a.incoming + l.incoming_begin, l.incoming_count});
      f(Window(a.du.data() + l.state_offset, l.dim), ConstWindow(a.u.data() + l.state_offset, l.dim),
        edges, a.p[v], a.t);
    }
  };
}

// The static callable writes its target g, which becomes the algebraic
// residual g - u.
template <class F>
VertexLoop static_vertex_loop(F f) {
  return [f = std::move(f)](const VertexLoopArgs& a) mutable {
    for (const std::size_t v : a.vertices) {
      const VertexLayout& l = a.layouts[v];
      const EdgeWindows edges(a.cache, {a.incoming + l.incoming_begin, l.incoming_count});
      double* dv = a.du.data() + l.state_offset;
      f(Window(dv, l.dim), edges, a.p[v], a.t);
      for (std::size_t i = 0; i < l.dim; ++i) dv[i] -= a.u[l.state_offset + i];
    }
  };
}

VertexModel vertex_model(VertexKind kind, std::size_t dim, std::vector<std::string> symbols,
                         std::variant<OdeVertexFn, StaticVertexFn> f);
EdgeModel edge_model(EdgeKind kind, std::size_t dim, Coupling coupling, std::vector<std::string> symbols,
                     std::variant<StaticEdgeFn, OdeEdgeFn, StaticDelayEdgeFn> f);

/// Fills an empty loop from the stored type-erased callable.
void ensure_loop(VertexModel& m);
void ensure_loop(EdgeModel& m);

}  // namespace detail

// Constructors validate dim >= 1 and symbols.size() == dim. An empty symbol
// list yields the defaults v_1..v_dim (vertices) or e_1..e_dim (edges).
// None of them invokes the callable. Any callable with a matching call
// signature works; lambdas and function objects are inlined into the
// assembly loop.

template <class F>
VertexModel make_ode_vertex(F f, std::size_t dim, std::vector<std::string> symbols = {}) {
  VertexModel m = detail::vertex_model(VertexKind::ODE, dim, std::move(symbols), OdeVertexFn(f));
  m.loop = detail::ode_vertex_loop(std::move(f));
  return m;
}

template <class F>
VertexModel make_static_vertex(F f, std::size_t dim, std::vector<std::string> symbols = {}) {
  VertexModel m = detail::vertex_model(VertexKind::Static, dim, std::move(symbols), StaticVertexFn(f));
  m.loop = detail::static_vertex_loop(std::move(f));
  return m;
}

template <class F>
EdgeModel make_static_edge(F f, std::size_t dim, Coupling coupling = Coupling::Fiducial,
                           std::vector<std::string> symbols = {}) {
  EdgeModel m = detail::edge_model(EdgeKind::Static, dim, coupling, std::move(symbols), StaticEdgeFn(f));
  m.loop = detail::static_edge_loop(std::move(f));
  return m;
}

template <class F>
EdgeModel make_static_delay_edge(F f, std::size_t dim, Coupling coupling = Coupling::Fiducial,
                                 std::vector<std::string> symbols = {}) {
  EdgeModel m =
      detail::edge_model(EdgeKind::StaticDelay, dim, coupling, std::move(symbols), StaticDelayEdgeFn(f));
  m.loop = detail::delay_edge_loop(std::move(f));
  return m;
}

/// ODE edges support Directed and Fiducial/Undirected coupling only; their
/// states cannot be shared between orientations.
template <class F>
EdgeModel make_ode_edge(F f, std::size_t dim, std::vector<std::string> symbols = {},
                        Coupling coupling = Coupling::Fiducial) {
  EdgeModel m = detail::edge_model(EdgeKind::ODE, dim, coupling, std::move(symbols), OdeEdgeFn(f));
  m.loop = detail::ode_edge_loop(std::move(f));
  return m;
}

}  // namespace netdyn
