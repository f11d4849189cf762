#include "netdyn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "netdyn/errors.hpp"
#include "netdyn/random.hpp"

namespace netdyn {

namespace {

std::pair<std::size_t, std::size_t> unordered_key(const Edge& e) {
  return std::minmax(e.src, e.dst);
}

}  // namespace

Graph::Graph(bool directed, std::size_t n_vertices, std::vector<Edge> edges)
    : directed_(directed), n_vertices_(n_vertices), edges_(std::move(edges)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    const Edge& e = edges_[j];
    if (e.src >= n_vertices_ || e.dst >= n_vertices_) {
      throw ParameterError("edge " + std::to_string(j) + " references a vertex outside [0, " +
                           std::to_string(n_vertices_) + ")");
    }
    if (!directed_ && e.src == e.dst) {
      throw ParameterError("undirected graph contains self-loop at vertex " + std::to_string(e.src));
    }
    const auto key = directed_ ? std::make_pair(e.src, e.dst) : unordered_key(e);
    if (!seen.insert(key).second) {
      throw ParameterError("duplicate edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                           ")");
    }
  }
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n_vertices_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.dst];
    if (!directed_) ++deg[e.src];
  }
  return deg;
}

Graph ring(std::size_t n) {
  if (n < 3) throw ParameterError("ring needs at least 3 vertices");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(false, n, std::move(edges));
}

Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw ParameterError("watts_strogatz: k must be even and >= 2");
  if (n <= k) throw ParameterError("watts_strogatz: need n > k");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("watts_strogatz: p must lie in [0, 1]");

  const std::size_t half = k / 2;
  std::vector<Edge> edges;
  edges.reserve(n * half);
  std::vector<std::unordered_set<std::size_t>> adj(n);
  for (std::size_t d = 1; d <= half; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t t = (i + d) % n;
      edges.push_back({i, t});
      adj[i].insert(t);
      adj[t].insert(i);
    }
  }

  Rng rng(seed);
  for (std::size_t pos = 0; pos < edges.size(); ++pos) {
    if (rng.uniform01() >= p) continue;
    const std::size_t u = edges[pos].src;
    if (adj[u].size() >= n - 1) continue;
    std::size_t w;
    do {
      w = rng.index(n);
    } while (w == u || adj[u].contains(w));
    const std::size_t v = edges[pos].dst;
    adj[u].erase(v);
    adj[v].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
    edges[pos].dst = w;
  }
  return Graph(false, n, std::move(edges));
}

Eigen::SparseMatrix<double> oriented_incidence(const Graph& g) {
  if (g.directed()) throw UnsupportedError("oriented_incidence: graph must be undirected");
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.n_edges());
  for (std::size_t j = 0; j < g.n_edges(); ++j) {
    const Edge& e = g.edge(j);
    entries.emplace_back(static_cast<int>(e.src), static_cast<int>(j), -1.0);
    entries.emplace_back(static_cast<int>(e.dst), static_cast<int>(j), 1.0);
  }
  Eigen::SparseMatrix<double> b(static_cast<Eigen::Index>(g.n_vertices()),
                                static_cast<Eigen::Index>(g.n_edges()));
  b.setFromTriplets(entries.begin(), entries.end());
  return b;
}

Eigen::MatrixXi adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.src, e.dst) = 1;
    if (!g.directed()) a(e.dst, e.src) = 1;
  }
  return a;
}

Eigen::MatrixXi laplacian(const Graph& g) {
  if (g.directed()) throw UnsupportedError("laplacian: graph must be undirected");
  Eigen::MatrixXi l = -adjacency(g);
  const auto deg = g.degrees();
  for (std::size_t i = 0; i < deg.size(); ++i) l(i, i) = static_cast<int>(deg[i]);
  return l;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << (g.directed() ? "directed " : "undirected ") << g.n_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.src << ' ' << e.dst << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("edge list: missing header");
  std::istringstream header(line);
  std::string kind;
  std::size_t n = 0;
  if (!(header >> kind >> n) || (kind != "directed" && kind != "undirected")) {
    throw ParameterError("edge list: bad header '" + line + "'");
  }
  std::vector<Edge> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long long s = -1, d = -1;
    std::string rest;
    if (!(row >> s >> d) || (row >> rest) || s < 0 || d < 0) {
      throw ParameterError("edge list: bad edge on line " + std::to_string(lineno));
    }
    edges.push_back({static_cast<std::size_t>(s), static_cast<std::size_t>(d)});
  }
  return Graph(kind == "directed", n, std::move(edges));
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  return read_edge_list(in);
}

}  // namespace netdyn
