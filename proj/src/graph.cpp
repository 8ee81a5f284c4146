#include "rwlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <tuple>

#include "rwlab/errors.hpp"

namespace rwlab {

Graph::Graph(std::size_t n) : Graph(n, {}) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), incidence_(n), degree_(n, 0), conductance_(n, 0.0) {
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u >= n_ || e.v >= n_) {
      throw ParameterError("edge " + std::to_string(id) + " has an endpoint outside 0.." +
                           std::to_string(n_ == 0 ? 0 : n_ - 1));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ParameterError("edge " + std::to_string(id) + " has non-positive weight");
    }
    incidence_[e.u].push_back(id);
    degree_[e.u] += 1;
    conductance_[e.u] += e.weight;
    if (e.is_loop()) {
      degree_[e.u] += 1;
      conductance_[e.u] += e.weight;
    } else {
      incidence_[e.v].push_back(id);
      degree_[e.v] += 1;
      conductance_[e.v] += e.weight;
    }
    total_weight_ += e.weight;
  }
}

void Graph::check_vertex(Vertex v) const {
  if (v >= n_) throw OutOfRange("vertex " + std::to_string(v) + " out of range");
}

std::span<const std::size_t> Graph::incident(Vertex v) const {
  check_vertex(v);
  return incidence_[v];
}

std::size_t Graph::degree(Vertex v) const {
  check_vertex(v);
  return degree_[v];
}

double Graph::conductance(Vertex v) const {
  check_vertex(v);
  return conductance_[v];
}

std::size_t Graph::min_degree() const {
  return degree_.empty() ? 0 : *std::min_element(degree_.begin(), degree_.end());
}

std::size_t Graph::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  out.reserve(incidence_[v].size());
  for (std::size_t id : incidence_[v]) out.push_back(edges_[id].other(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Graph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool Graph::is_simple() const {
  if (has_loops()) return false;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(edges_.size());
  for (const Edge& e : edges_) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

bool Graph::is_unit_weight() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

std::vector<std::size_t> Graph::components() const {
  std::vector<std::size_t> comp(n_, kUnreachable);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] != kUnreachable) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (std::size_t id : incidence_[x]) {
        Vertex y = edges_[id].other(x);
        if (comp[y] == kUnreachable) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  auto comp = components();
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

Graph Graph::without_edges(std::span<const std::size_t> edge_ids) const {
  std::vector<bool> drop(edges_.size(), false);
  for (std::size_t id : edge_ids) {
    if (id >= edges_.size()) throw OutOfRange("edge id " + std::to_string(id) + " out of range");
    drop[id] = true;
  }
  std::vector<Edge> kept;
  for (std::size_t id = 0; id < edges_.size(); ++id)
    if (!drop[id]) kept.push_back(edges_[id]);
  return Graph(n_, std::move(kept));
}

Graph Graph::with_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) throw ParameterError("weight vector length mismatch");
  std::vector<Edge> out = edges_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].weight = weights[i];
  return Graph(n_, std::move(out));
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  auto canon = [](const Graph& g) {
    std::vector<std::tuple<Vertex, Vertex, double>> out;
    out.reserve(g.edges_.size());
    for (const Edge& e : g.edges_)
      out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), std::round(e.weight * 1e12) / 1e12);
    std::sort(out.begin(), out.end());
    return out;
  };
  return canon(a) == canon(b);
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex s) {
  std::vector<std::size_t> dist(g.num_vertices(), kUnreachable);
  if (s >= g.num_vertices()) throw OutOfRange("vertex " + std::to_string(s) + " out of range");
  std::deque<Vertex> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    for (std::size_t d : bfs_distances(g, s)) {
      if (d == kUnreachable) throw NoPathError("graph is disconnected; diameter undefined");
      best = std::max(best, d);
    }
  }
  return best;
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v) {
  auto to_v = bfs_distances(g, v);
  if (u >= g.num_vertices()) throw OutOfRange("vertex " + std::to_string(u) + " out of range");
  if (to_v[u] == kUnreachable) {
    throw NoPathError("no path from " + std::to_string(u) + " to " + std::to_string(v));
  }
  std::vector<Vertex> path{u};
  Vertex x = u;
  while (x != v) {
    for (Vertex y : g.neighbors(x)) {
      if (to_v[y] + 1 == to_v[x]) {
        x = y;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  if (!g.is_simple() || !h.is_simple() || !g.is_unit_weight() || !h.is_unit_weight()) {
    throw UnsupportedInput("cartesian product requires simple unit-weight factors");
  }
  const std::size_t ng = g.num_vertices();
  const std::size_t nh = h.num_vertices();
  std::vector<Edge> edges;
  edges.reserve(ng * h.num_edges() + nh * g.num_edges());
  for (Vertex a = 0; a < ng; ++a)
    for (const Edge& e : h.edges()) edges.push_back({a * nh + e.u, a * nh + e.v, 1.0});
  for (const Edge& e : g.edges())
    for (Vertex x = 0; x < nh; ++x) edges.push_back({e.u * nh + x, e.v * nh + x, 1.0});
  return Graph(ng * nh, std::move(edges));
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::size_t> index(g.num_vertices(), kUnreachable);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.num_vertices()) throw OutOfRange("vertex out of range");
    index[vertices[i]] = i;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (index[e.u] != kUnreachable && index[e.v] != kUnreachable)
      edges.push_back({index[e.u], index[e.v], e.weight});
  return Graph(vertices.size(), std::move(edges));
}

}  // namespace rwlab
