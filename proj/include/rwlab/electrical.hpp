// electrical.hpp - effective resistance, flows, and resistance-based cover bounds.
//
// Edge weights are conductances; r(e) = 1/c(e). Loops never carry current.
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwlab/graph.hpp"

namespace rwlab {

/// R(u, v) from one voltage solve (W(u) = 1, W(v) = 0, R = 1 / current out
/// of u). Returns 0 for u == v; throws NoPathError when v is unreachable.
double effective_resistance(const Graph& g, Vertex u, Vertex v);

/// All-pairs effective resistance. Pairs in different components are absent.
class ResistanceMatrix {
 public:
  ResistanceMatrix() = default;
  ResistanceMatrix(Eigen::MatrixXd values, std::vector<std::size_t> component)
      : values_(std::move(values)), component_(std::move(component)) {}

  std::size_t size() const { return component_.size(); }
  std::optional<double> operator()(Vertex u, Vertex v) const {
    if (component_.at(u) != component_.at(v)) return std::nullopt;
    return values_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
  }
  /// Largest finite entry.
  double max_finite() const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::size_t> component_;
};

/// Inverts the Laplacian grounded at the lowest vertex of each component:
/// R(u, v) = G_uu + G_vv - 2 G_uv.
ResistanceMatrix resistance_matrix(const Graph& g);

/// COM[u, v] = c(G) R(u, v).
double commute_time(const Graph& g, Vertex u, Vertex v);

/// A flow assigns each edge id a value oriented from edge.u to edge.v.
struct Flow {
  Vertex source = 0;
  Vertex sink = 0;
  std::vector<double> value;

  /// Flow leaving `from` along edge `id` (the antisymmetric view).
  double along(const Graph& g, std::size_t id, Vertex from) const;
};

/// Unit current flow from u to v (currents from the voltage solve, scaled to strength 1).
Flow unit_current_flow(const Graph& g, Vertex u, Vertex v);

/// Throws FlowValidationError naming the violated law: wrong length,
/// loop carrying current (antisymmetry), Kirchhoff's node law off {source, sink},
/// or strength outside 1 +- 1e-9.
void validate_unit_flow(const Graph& g, const Flow& f);

/// E(f) = sum_e f(e)^2 r(e). Validates first.
double flow_energy(const Graph& g, const Flow& f);

/// E(f) - R(u, v); Thomson's principle makes this >= 0 for every unit flow.
double thomson_gap(const Graph& g, Vertex u, Vertex v, const Flow& f);

struct SpanningTreeBound {
  double sharp = 0.0;     // 2m (2n - 2)
  double headline = 0.0;  // 4 m n
};

/// Connected unit-weight graphs only (UnsupportedInput otherwise).
SpanningTreeBound spanning_tree_bound(const Graph& g);

struct MerstResult {
  std::vector<std::pair<Vertex, Vertex>> tree;
  double tree_weight = 0.0;  // sum of R over tree edges
  double bound = 0.0;        // c(G) * tree_weight
};

/// Exact minimum spanning tree (Kruskal) of the complete graph on V weighted
/// by R. Connected, n <= 2000.
MerstResult merst_bound(const Graph& g);

/// max_{u,v} H[u][v] h(n).
double matthews_upper(const Eigen::MatrixXd& H);

/// min_{u != v in A} H[u][v] h(|A| - 1). |A| >= 2 (ParameterError otherwise).
double matthews_lower(const Eigen::MatrixXd& H, std::span<const Vertex> A);

/// max_{u,v in V'} H[u][v] h(|V'|): bounds the time to visit all of V'
/// from any start inside V'.
double matthews_subset(const Eigen::MatrixXd& H, std::span<const Vertex> subset);

struct MatthewsLowerResult {
  double value = 0.0;
  std::vector<Vertex> set;
  bool exhaustive = false;
};

/// Best lower bound over sets of size 2..max_size. Every such set is tried
/// when n <= 16; larger graphs use a greedy search that grows the set from
/// the best pair.
MatthewsLowerResult best_matthews_lower(const Eigen::MatrixXd& H, std::size_t max_size = 12);

struct GridResistanceReport {
  std::size_t k = 0;
  double max_resistance = 0.0;
  double bound = 0.0;  // 8 h(k)
  bool holds = false;
};

/// Max pairwise R on the k x k grid versus 8 h(k). k <= 40.
GridResistanceReport grid_resistance_monitor(std::size_t k);

struct RayleighReport {
  bool holds = true;
  double min_increase = 0.0;         // min over finite pairs of R' - R
  std::size_t disconnected_pairs = 0;  // R' absent: satisfied vacuously
};

/// Compares all-pairs R before and after deleting the given edge ids.
RayleighReport rayleigh_monitor(const Graph& g, std::span<const std::size_t> deleted_edges);

struct BoundRow {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> exact_cover;
  double matthews_lower = 0.0;
  double matthews_upper = 0.0;
  double merst = 0.0;
  double spanning_tree_4mn = 0.0;
};

/// Computes every bound for a connected unit-weight graph; the exact cover
/// time (worst start) is included when n <= 13.
BoundRow bound_row(const Graph& g, const std::string& graph_id);

/// CSV: graph_id,n,m,exact_cover,matthews_lower,matthews_upper,merst,spanning_tree_4mn
void write_bound_header(std::ostream& out);
void write_bound_row(std::ostream& out, const BoundRow& row);

}  // namespace rwlab
