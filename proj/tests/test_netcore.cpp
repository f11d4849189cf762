#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "netdyn/errors.hpp"
#include "netdyn/kuramoto.hpp"
#include "netdyn/network.hpp"
#include "support/alloc_counter.hpp"
#include "support/oracles.hpp"

using namespace netdyn;

namespace {

std::vector<double> rhs(const NetworkFunction& nf, const ParameterBundle& p, const std::vector<double>& u,
                        std::span<const double> lagged = {}) {
  std::vector<double> du(nf.dim());
  nf(du, u, p, 0.0, lagged);
  return du;
}

NetworkFunction homogeneous(const Graph& g, Coupling c = Coupling::Fiducial, NetworkOptions o = {}) {
  return network_dynamics(make_ode_vertex(kuramoto::vertex, 1, {"θ"}),
                          make_static_edge(kuramoto::edge, 1, c), g, o);
}

ParameterBundle kuramoto_params(std::vector<double> omega, double sigma) {
  return ParameterBundle::split(ParamPart::per_component(std::move(omega)), ParamPart::uniform(sigma));
}

}  // namespace

TEST(NetworkDynamics, HomogeneousRing) {
  const NetworkFunction nf = homogeneous(ring(10));
  EXPECT_EQ(nf.dim(), 10u);
  EXPECT_EQ(nf.mass_diagonal(), std::vector<double>(10, 1.0));
  EXPECT_FALSE(nf.has_algebraic_states());
}

TEST(NetworkDynamics, HeterogeneousVertices) {
  kuramoto::Variant v;
  v.inertia_at = 0;
  v.static_at = 4;
  const auto sys = kuramoto::build(ring(10), v);
  EXPECT_EQ(sys.nf.dim(), 11u);
  EXPECT_EQ(std::count(sys.nf.mass_diagonal().begin(), sys.nf.mass_diagonal().end(), 0.0), 1);
  EXPECT_EQ(sys.nf.mass_diagonal()[5], 0.0);
  EXPECT_EQ(sys.x0.size(), 11u);
  EXPECT_EQ(sys.x0[1], kuramoto::kInertiaInitialFrequency);
}

TEST(NetworkDynamics, RejectsLengthMismatch) {
  std::vector<VertexModel> three(3, make_ode_vertex(kuramoto::vertex, 1));
  EXPECT_THROW(network_dynamics(three, make_static_edge(kuramoto::edge, 1), ring(10)), ParameterError);
  std::vector<EdgeModel> two(2, make_static_edge(kuramoto::edge, 1));
  EXPECT_THROW(network_dynamics(make_ode_vertex(kuramoto::vertex, 1), two, ring(10)), ParameterError);
}

TEST(NetworkDynamics, RejectsSymmetricCouplingOnDirectedGraph) {
  const Graph g(true, 2, {{0, 1}});
  EXPECT_THROW(homogeneous(g, Coupling::Antisymmetric), ParameterError);
  EXPECT_THROW(homogeneous(g, Coupling::Symmetric), ParameterError);
  EXPECT_NO_THROW(homogeneous(g, Coupling::Directed));
}

TEST(GraphStruct, LayoutInvariants) {
  const Graph g = watts_strogatz(30, 4, 0.3, 8);
  kuramoto::Variant v;
  v.inertia_at = 3;
  v.static_at = 7;
  const auto sys = kuramoto::build(g, v);
  const GraphStruct& gs = sys.nf.graph_struct();
  std::size_t next = 0;
  for (const VertexLayout& l : gs.vertices) {
    EXPECT_EQ(l.state_offset, next);
    next += l.dim;
  }
  EXPECT_EQ(next, gs.vertex_dim);
  EXPECT_EQ(gs.state_dim, gs.vertex_dim);
  std::size_t cache = 0;
  for (const EdgeLayout& l : gs.edges) {
    EXPECT_TRUE(l.doubled);
    EXPECT_EQ(l.cache_offset, cache);
    cache += 2 * l.dim;
  }
  EXPECT_EQ(gs.cache_dim, cache);
  // Each vertex sees exactly one half of each incident edge.
  for (std::size_t i = 0; i < gs.vertices.size(); ++i) {
    EXPECT_EQ(gs.incoming_of(i).size(), g.degrees()[i]);
  }
  for (std::size_t j = 0; j < gs.edges.size(); ++j) {
    const EdgeLayout& l = gs.edges[j];
    const auto dst_in = gs.incoming_of(l.dst);
    const auto src_in = gs.incoming_of(l.src);
    EXPECT_TRUE(std::any_of(dst_in.begin(), dst_in.end(), [&](EdgeRef r) { return r.offset == l.cache_offset; }));
    EXPECT_TRUE(std::any_of(src_in.begin(), src_in.end(),
                            [&](EdgeRef r) { return r.offset == l.cache_offset + l.dim; }));
  }
}

TEST(Evaluate, RingMatchesIncidenceOracle) {
  const Graph g = ring(10);
  const auto omega = kuramoto::formula_frequencies(10);
  const NetworkFunction nf = homogeneous(g);
  const auto du = rhs(nf, kuramoto_params(omega, 5.0), omega);
  const auto ref = oracle::kuramoto_incidence(Eigen::MatrixXd(oriented_incidence(g)), omega, 5.0, omega);
  EXPECT_LE(oracle::max_abs_diff(du, ref), 1e-12);
}

TEST(Evaluate, ZeroCouplingGivesFrequencies) {
  Rng rng(4);
  const Graph g = watts_strogatz(50, 4, 0.2, 4);
  const auto omega = oracle::random_vector(rng, 50, -3, 3);
  const auto u = oracle::random_vector(rng, 50, -3, 3);
  EXPECT_EQ(rhs(homogeneous(g), kuramoto_params(omega, 0.0), u), omega);
}

TEST(Evaluate, EqualPhasesGiveCommonFrequency) {
  const Graph g = watts_strogatz(40, 6, 0.3, 1);
  const std::vector<double> u(40, 1.234);
  const auto du = rhs(homogeneous(g), ParameterBundle::split(ParamPart::uniform(0.7), ParamPart::uniform(5.0)), u);
  EXPECT_EQ(du, std::vector<double>(40, 0.7));
}

TEST(Evaluate, RandomGraphsMatchAdjacencyOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(50);
    const Graph g = oracle::random_graph(rng, n, rng.uniform(0.0, 0.5));
    const auto omega = oracle::random_vector(rng, n, -1, 1);
    const auto u = oracle::random_vector(rng, n, -M_PI, M_PI);
    const double sigma = rng.uniform(0.0, 10.0);
    for (Coupling c : {Coupling::Fiducial, Coupling::Antisymmetric, Coupling::Undirected}) {
      const auto du = rhs(homogeneous(g, c), kuramoto_params(omega, sigma), u);
      EXPECT_LE(oracle::max_abs_diff(du, oracle::kuramoto_adjacency(adjacency(g), omega, sigma, u)), 1e-12);
    }
  }
}

TEST(Evaluate, DirectedGraphSeesIncomingOnly) {
  const Graph g(true, 3, {{0, 1}, {1, 2}});
  const std::vector<double> u{0.3, -0.2, 1.0};
  const auto du = rhs(homogeneous(g), kuramoto_params({1, 2, 3}, 2.0), u);
  EXPECT_EQ(du[0], 1.0);
  EXPECT_DOUBLE_EQ(du[1], 2.0 + 2.0 * std::sin(0.3 + 0.2));
  EXPECT_DOUBLE_EQ(du[2], 3.0 + 2.0 * std::sin(-0.2 - 1.0));
  EXPECT_LE(oracle::max_abs_diff(du, oracle::kuramoto_adjacency(adjacency(g), {1, 2, 3}, 2.0, u)), 1e-15);
}

TEST(Evaluate, DirectedCouplingOnUndirectedGraphReachesDestinationOnly) {
  const Graph g(false, 2, {{0, 1}});
  const auto du = rhs(homogeneous(g, Coupling::Directed), kuramoto_params({0, 0}, 1.0), {M_PI / 2, 0.0});
  EXPECT_EQ(du[0], 0.0);
  EXPECT_DOUBLE_EQ(du[1], 1.0);
}

TEST(Evaluate, AntisymmetricCallsOncePerEdgeAndMatchesBitwise) {
  const Graph g = watts_strogatz(100, 4, 0.2, 3);
  std::atomic<std::size_t> count{0};
  const auto counted = [&count](Window e, ConstWindow vs, ConstWindow vd, ParamView p, double t) {
    ++count;
    kuramoto::edge(e, vs, vd, p, t);
  };
  const auto build = [&](Coupling c) {
    return network_dynamics(make_ode_vertex(kuramoto::vertex, 1), make_static_edge(counted, 1, c), g);
  };
  Rng rng(1);
  const auto omega = oracle::random_vector(rng, 100, -1, 1);
  const auto u = oracle::random_vector(rng, 100, -M_PI, M_PI);
  const auto p = kuramoto_params(omega, 5.0);

  count = 0;
  const auto fid = rhs(build(Coupling::Fiducial), p, u);
  EXPECT_EQ(count.load(), 2 * g.n_edges());
  count = 0;
  const auto anti = rhs(build(Coupling::Antisymmetric), p, u);
  EXPECT_EQ(count.load(), g.n_edges());
  EXPECT_EQ(fid, anti);
}

TEST(Evaluate, SymmetricCouplingCopiesValue) {
  const Graph g(false, 2, {{0, 1}});
  const auto shared = [](Window e, ConstWindow vs, ConstWindow vd, ParamView, double) { e[0] = vs[0] + vd[0]; };
  const auto nf = network_dynamics(make_ode_vertex(kuramoto::vertex, 1), make_static_edge(shared, 1, Coupling::Symmetric), g);
  const auto du = rhs(nf, kuramoto_params({0, 0}, 0.0), {1.0, 2.0});
  EXPECT_EQ(du, (std::vector<double>{3.0, 3.0}));
}

TEST(Evaluate, StaticVertexResidualVanishesOnConstraint) {
  kuramoto::Variant v;
  v.inertia_at = 0;
  v.static_at = 4;
  const auto sys = kuramoto::build(ring(10), v);
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = oracle::random_vector(rng, 11, -2, 2);
    u[5] = sys.omega[4];
    EXPECT_EQ(rhs(sys.nf, sys.params, u)[5], 0.0);
    u[5] += 0.25;
    EXPECT_DOUBLE_EQ(rhs(sys.nf, sys.params, u)[5], -0.25);
  }
}

TEST(Evaluate, InertiaVertexEquations) {
  kuramoto::Variant v;
  v.inertia_at = 0;
  const auto sys = kuramoto::build(ring(10), v);
  const auto du = rhs(sys.nf, sys.params, sys.x0);
  // Vertex 0 neighbours 1 and 9; x0 layout: theta_0, omega_0, theta_1, ..., theta_9.
  const double coupling = 5.0 * (std::sin(sys.x0[2] - sys.x0[0]) + std::sin(sys.x0[10] - sys.x0[0]));
  EXPECT_EQ(du[0], sys.x0[1]);
  EXPECT_NEAR(du[1], sys.omega[0] - sys.x0[1] + coupling, 1e-14);
}

TEST(Evaluate, OdeEdgeStatesFollowVertices) {
  // Path 0 - 1 - 2 with a relaxing edge state de = (v_src - v_dst) - e.
  const Graph g(false, 3, {{0, 1}, {1, 2}});
  const auto edge = [](Window de, ConstWindow e, ConstWindow vs, ConstWindow vd, ParamView, double) {
    de[0] = (vs[0] - vd[0]) - e[0];
  };
  const auto vertex = [](Window dv, ConstWindow, const EdgeWindows& edges, ParamView, double) {
    dv[0] = 0.0;
    coupling_sum(dv, edges);
  };
  const auto nf = network_dynamics(make_ode_vertex(vertex, 1, {"x"}), make_ode_edge(edge, 1, {"f"}), g);
  ASSERT_EQ(nf.dim(), 3u + 4u);
  EXPECT_EQ(nf.symbols(), (std::vector<std::string>{"x_0", "x_1", "x_2", "f_0", "f_0_rev", "f_1", "f_1_rev"}));
  const std::vector<double> u{1.0, 2.0, 4.0, 0.1, 0.2, 0.3, 0.4};
  const auto du = rhs(nf, ParameterBundle::none(), u);
  // Vertex 1 is the destination of edge 0 (first half) and the source of edge 1 (second half).
  EXPECT_DOUBLE_EQ(du[0], 0.2);
  EXPECT_DOUBLE_EQ(du[1], 0.1 + 0.4);
  EXPECT_DOUBLE_EQ(du[2], 0.3);
  EXPECT_DOUBLE_EQ(du[3], (1.0 - 2.0) - 0.1);
  EXPECT_DOUBLE_EQ(du[4], (2.0 - 1.0) - 0.2);
  EXPECT_DOUBLE_EQ(du[5], (2.0 - 4.0) - 0.3);
  EXPECT_DOUBLE_EQ(du[6], (4.0 - 2.0) - 0.4);
}

TEST(Evaluate, DelayEdgeNeedsLaggedState) {
  kuramoto::Variant v;
  v.delayed = true;
  const auto sys = kuramoto::build(ring(4), v);
  EXPECT_TRUE(sys.nf.has_delay_edges());
  std::vector<double> du(4);
  EXPECT_THROW(sys.nf(du, sys.x0, sys.params, 0.0), ParameterError);
  const std::vector<double> lagged{0.0, 0.0, 0.0, 0.0};
  const auto d = rhs(sys.nf, sys.params, sys.x0, lagged);
  // Vertex 0 neighbours 1 and 3; the delay edge reads the lagged destination phase.
  EXPECT_DOUBLE_EQ(d[0], sys.omega[0] + 5.0 * (std::sin(sys.x0[1]) + std::sin(sys.x0[3])));
}

TEST(Evaluate, WrongParameterLengthRejected) {
  const NetworkFunction nf = homogeneous(ring(5));
  std::vector<double> du(5);
  const std::vector<double> u(5, 0.0);
  EXPECT_THROW(nf(du, u, kuramoto_params({1, 2}, 1.0), 0.0), ParameterError);
  EXPECT_THROW(nf(du, std::vector<double>(4), kuramoto_params({1, 2, 3, 4, 5}, 1.0), 0.0), ParameterError);
}

TEST(Evaluate, HeterogeneousEdgeModels) {
  const Graph g(false, 3, {{0, 1}, {1, 2}});
  const auto half = [](Window e, ConstWindow vs, ConstWindow vd, ParamView, double) { e[0] = 0.5 * (vs[0] - vd[0]); };
  std::vector<EdgeModel> edges{make_static_edge(kuramoto::edge, 1, Coupling::Antisymmetric),
                               make_static_edge(half, 1)};
  const auto nf = network_dynamics(make_ode_vertex(kuramoto::vertex, 1), edges, g);
  const auto p = ParameterBundle::split(ParamPart::uniform(0.0), ParamPart::per_component(std::vector<double>{2.0, 0.0}));
  const auto du = rhs(nf, p, {0.0, 1.0, 3.0});
  EXPECT_DOUBLE_EQ(du[0], 2.0 * std::sin(1.0));
  EXPECT_DOUBLE_EQ(du[1], 2.0 * std::sin(-1.0) + 0.5 * (3.0 - 1.0));
  EXPECT_DOUBLE_EQ(du[2], 0.5 * (1.0 - 3.0));
}

TEST(Evaluate, NoAllocationAfterConstruction) {
  kuramoto::Variant v;
  v.inertia_at = 0;
  v.static_at = 4;
  const auto sys = kuramoto::build(watts_strogatz(200, 4, 0.2, 1), v);
  GraphDataBuffer buffer = sys.nf.make_buffer();
  std::vector<double> du(sys.nf.dim());
  alloc_counter::start();
  for (int i = 0; i < 100; ++i) {
    sys.nf.evaluate(buffer, du, sys.x0, sys.params, 0.1 * i);
    sys.nf(du, sys.x0, sys.params, 0.0);
  }
  EXPECT_EQ(alloc_counter::stop(), 0u);
}

TEST(Evaluate, Deterministic) {
  Rng rng(6);
  const auto g = watts_strogatz(300, 4, 0.2, 6);
  const auto nf = homogeneous(g);
  const auto p = kuramoto_params(oracle::random_vector(rng, 300, -1, 1), 3.0);
  const auto u = oracle::random_vector(rng, 300, -3, 3);
  const auto first = rhs(nf, p, u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(rhs(nf, p, u), first);
}

TEST(Evaluate, ParallelMatchesSequentialBitwise) {
  Rng rng(7);
  const auto g = watts_strogatz(2000, 6, 0.2, 7);
  kuramoto::Variant v;
  v.inertia_at = 10;
  v.static_at = 500;
  const auto seq = kuramoto::build(g, v, 5.0, kuramoto::InitialData::Random, 1);
  v.options.parallel = true;
  const auto par = kuramoto::build(g, v, 5.0, kuramoto::InitialData::Random, 1);
  EXPECT_TRUE(par.nf.parallel());
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = oracle::random_vector(rng, seq.nf.dim(), -3, 3);
    EXPECT_EQ(rhs(seq.nf, seq.params, u), rhs(par.nf, par.params, u));
  }
}

TEST(ResolveParam, Dispatch) {
  const std::vector<double> omega{0.1, 0.2, 0.3, 0.4};
  const auto split = kuramoto_params(omega, 5.0);
  EXPECT_EQ(resolve_param(split, Side::Vertex, 3)[0], omega[3]);
  EXPECT_EQ(resolve_param(split, Side::Edge, 17)[0], 5.0);
  const auto global = ParameterBundle::global(2.5);
  EXPECT_EQ(resolve_param(global, Side::Edge, 99)[0], 2.5);
  EXPECT_EQ(resolve_param(global, Side::Vertex, 0)[0], 2.5);
  const auto edge_array = ParameterBundle::split(ParamPart::uniform(1.0),
                                                 ParamPart::per_component(std::vector<double>{1, 2, 3}));
  EXPECT_EQ(resolve_param(edge_array, Side::Edge, 2)[0], 3.0);
  EXPECT_THROW(resolve_param(edge_array, Side::Edge, 3), std::out_of_range);
}

TEST(ResolveParam, VectorValuedComponents) {
  const auto p = ParameterBundle::split(ParamPart::per_component(std::vector<std::vector<double>>{{1, 2}, {3}}),
                                        ParamPart::uniform(std::vector<double>{4, 5, 6}));
  EXPECT_EQ(resolve_param(p, Side::Vertex, 0).size(), 2u);
  EXPECT_EQ(resolve_param(p, Side::Vertex, 1)[0], 3.0);
  EXPECT_EQ(resolve_param(p, Side::Edge, 8).size(), 3u);
}

TEST(Symbols, ContainingQueries) {
  const NetworkFunction nf = homogeneous(ring(10));
  const auto idx = idx_containing(nf, "θ");
  ASSERT_EQ(idx.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(idx[i], i);
  EXPECT_TRUE(idx_containing(nf, "zzz").empty());
  EXPECT_TRUE(syms_containing(nf, "zzz").empty());
  EXPECT_EQ(syms_containing(nf, "θ_3"), std::vector<std::string>{"θ_3"});

  kuramoto::Variant v;
  v.inertia_at = 0;
  v.static_at = 4;
  const auto sys = kuramoto::build(ring(10), v);
  EXPECT_EQ(idx_containing(sys.nf, "ω"), std::vector<std::size_t>{1});
  EXPECT_EQ(syms_containing(sys.nf, "ω"), std::vector<std::string>{"ω_0"});
  EXPECT_EQ(idx_containing(sys.nf, "θ").size(), 10u);
}

TEST(Symbols, UniqueAndExported) {
  kuramoto::Variant v;
  v.inertia_at = 2;
  const auto sys = kuramoto::build(ring(3), v);
  std::ostringstream os;
  sys.nf.write_symbols(os);
  EXPECT_EQ(os.str(), "θ_0 0\nθ_1 1\nθ_2 2\nω_2 3\n");
}

TEST(Symbols, DuplicateCompositeNamesRejected) {
  std::vector<VertexModel> vs(3, make_ode_vertex(kuramoto::vertex, 1, {"x"}));
  vs[0] = make_ode_vertex(kuramoto::inertia_vertex, 2, {"x", "x"});
  EXPECT_THROW(network_dynamics(vs, make_static_edge(kuramoto::edge, 1), ring(3)), ParameterError);
}
