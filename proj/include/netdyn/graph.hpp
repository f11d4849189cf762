#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace netdyn {

struct Edge {
  std::size_t src;
  std::size_t dst;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Topology input: a directedness flag plus an ordered edge list.
///
/// Edge j always refers to the same vertex pair. For undirected graphs each
/// edge is stored once, in its fiducial orientation (src, dst), and neither
/// self-loops nor multi-edges are allowed. Directed graphs forbid duplicate
/// (src, dst) pairs but may contain both (a, b) and (b, a).
class Graph {
 public:
  Graph(bool directed, std::size_t n_vertices, std::vector<Edge> edges = {});

  bool directed() const noexcept { return directed_; }
  std::size_t n_vertices() const noexcept { return n_vertices_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t j) const { return edges_.at(j); }

  /// Number of edges touching v (undirected) or ending at v (directed).
  std::vector<std::size_t> degrees() const;

 private:
  bool directed_;
  std::size_t n_vertices_;
  std::vector<Edge> edges_;
};

/// Undirected cycle 0-1-...-(n-1)-0.
Graph ring(std::size_t n);

/// Watts-Strogatz small-world graph.
///
/// Builds the ring lattice where each vertex links to its k nearest neighbours
/// (k/2 on each side), lap by lap: lap d = 1..k/2 contributes edges
/// (i, i+d mod n) for i = 0..n-1 in that order. Each lattice edge is visited
/// once in the same order and, with probability p, its far endpoint is moved to
/// a vertex drawn uniformly from [0, n), redrawing until the target is neither
/// i itself nor already adjacent to i. Vertices already adjacent to every other
/// vertex are left alone. Per edge the generator consumes one uniform01() draw
/// and, if rewired, one index(n) draw per attempt.
Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Oriented N x M incidence matrix: column j holds -1 at src(j) and +1 at dst(j).
Eigen::SparseMatrix<double> oriented_incidence(const Graph& g);

/// A(j, i) = 1 iff edge j -> i exists (both directions for undirected graphs).
Eigen::MatrixXi adjacency(const Graph& g);

/// Degree matrix minus adjacency; undirected graphs only.
Eigen::MatrixXi laplacian(const Graph& g);

/// Edge-list text format: header `directed|undirected <n>`, then one `src dst` per line.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace netdyn
