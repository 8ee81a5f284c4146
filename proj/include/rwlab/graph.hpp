// graph.hpp - weighted undirected multigraph with loops.
//
// Vertices are dense ids 0..n-1. Edges are a flat multiset of (u, v, weight);
// loops (u, u) and parallel edges are allowed. A graph is immutable once
// built, so the incidence index and per-vertex degree/conductance are computed
// once in the constructor.
//
// Degree counts a loop twice, and so does the weighted degree c(v):
//   d(v) = #non-loop ends at v + 2 #loops at v,  c(v) = sum c(e) + 2 sum_loops c(e).
// An unweighted graph is just a graph whose weights are all 1.
#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace rwlab {

using Vertex = std::size_t;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  bool is_loop() const { return u == v; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws ParameterError on an out-of-range endpoint or a non-positive weight.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }

  /// Edge ids incident to v; a loop appears once.
  std::span<const std::size_t> incident(Vertex v) const;

  std::size_t degree(Vertex v) const;
  double conductance(Vertex v) const;
  /// c(G) = sum_v c(v) = 2 w(G).
  double total_conductance() const { return 2.0 * total_weight_; }
  /// w(G) = sum_e c(e).
  double total_weight() const { return total_weight_; }

  std::size_t min_degree() const;
  std::size_t max_degree() const;

  /// Distinct neighbours of v in increasing order (v itself if it has a loop).
  std::vector<Vertex> neighbors(Vertex v) const;

  bool has_loops() const;
  bool is_simple() const;
  bool is_unit_weight() const;
  bool is_connected() const;

  /// Component id per vertex, ids assigned in order of lowest member.
  std::vector<std::size_t> components() const;

  Graph without_edges(std::span<const std::size_t> edge_ids) const;
  Graph with_weights(std::span<const double> weights) const;

  /// Canonical form: n plus the sorted edge multiset with endpoints ordered
  /// (min, max) and weights rounded to 12 decimal digits.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::size_t> degree_;
  std::vector<double> conductance_;
  double total_weight_ = 0.0;
};

/// BFS hop distances from s; kUnreachable for other components.
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex s);

/// Max hop distance over all pairs. Throws NoPathError when disconnected.
std::size_t diameter(const Graph& g);

/// A minimum-hop path u..v. Among shortest paths it is the lexicographically
/// smallest: each step moves to the lowest-labelled neighbour that is one hop
/// closer to v. Throws NoPathError when v is unreachable.
std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v);

/// Vertex (a, x) of G x H is a * n_H + x. Both factors must be simple and
/// unit-weight; throws UnsupportedInput otherwise.
Graph cartesian_product(const Graph& g, const Graph& h);

/// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

}  // namespace rwlab
