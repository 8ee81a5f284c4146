// product.hpp - locally observed walks, block decomposition, and product-graph bounds.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwlab/graph.hpp"

namespace rwlab {

enum class EdgeTag { interior, exterior };

/// Loc(G, S): the walk on G watched only while it is on S, as a weighted
/// graph on S. An excursion leaving boundary vertex u into X = V \ S and
/// re-entering S at v becomes an exterior edge (u, v) with conductance
///   c(u, v) = sum_{x in N(u) cap X} c(u, x) a(x, v),
/// where a(x, v) is the probability that the walk from x first enters S at v.
///
/// Loop convention: an exterior self-connection (u, u) has conductance c(u, u)
/// and must add exactly c(u, u) to c_H(u). Graph counts loops twice, so the
/// loop is stored in `graph` with weight c(u, u) / 2; `conductance` keeps the
/// unhalved value. With this, c_H(u) = d_G(u) for every u in S and the walk
/// kernel of `graph` is the S-observed kernel of G.
struct LocalObservation {
  std::vector<Vertex> vertices;  // S ascending; H vertex i is vertices[i]
  std::vector<Vertex> boundary;  // original labels of S vertices with a neighbour in X
  Graph graph;
  std::vector<EdgeTag> tags;       // per edge of `graph`
  std::vector<double> conductance; // per edge: weight, or c(u, u) for exterior loops
};

/// G connected; S nonempty. S = V returns G with every edge interior.
LocalObservation local_observation(const Graph& g, std::span<const Vertex> S);

/// Graph format with a fourth column: "u v w interior|exterior" (w as stored in `graph`).
void write_local_observation(std::ostream& out, const LocalObservation& loc);

struct BlockDecomposition {
  std::size_t k = 0;
  std::vector<std::vector<Vertex>> blocks;  // each sorted ascending
};

/// BFS of depth <= k from vertex 0 gives the first block. From each depth-k
/// leaf l (in BFS order, depth first), a BFS of depth <= k over unclaimed
/// vertices grows a tree T(l) that includes l. If T(l) has fewer than k
/// vertices it is appended to its parent's block; otherwise it is a new block
/// and the procedure recurses on its depth-k leaves. Neighbours are scanned in
/// increasing label order. k > n gives the single block V.
BlockDecomposition block_decomposition(const Graph& h, std::size_t k);

struct TheoremMainBounds {
  double lower = 0.0;
  std::optional<double> upper_over_K;  // the upper bound divided by the unknown constant K
  bool upper_condition = false;        // n_H >= D_G + 1 and D_G >= 1
  std::size_t product_edges = 0;       // M
  std::size_t diameter_g = 0;          // D_G
  double ell = 0.0;                    // ln(D_G + 1) ln(n_G D_G)
};

/// lower = max((1 + delta_G / Delta_H) cov_H, (1 + delta_H / Delta_G) cov_G if given);
/// upper / K = (1 + Delta_G / delta_H) bcov_H + M m_G m_H n_H ell^2 / (cov_H D_G),
/// withheld unless n_H >= D_G + 1.
TheoremMainBounds theorem_main_bounds(const Graph& g, const Graph& h, double cov_h, double bcov_h,
                                      std::optional<double> cov_g = {});

struct ProductResistanceReport {
  double r_max = 0.0;
  double alpha = 0.0;                 // n_H / (D_G + 1)
  std::optional<double> ratio;        // r_max / (alpha ln(D_G + 1)), the unknown zeta in disguise
};

/// Max pairwise R on G x H (at most 2500 vertices).
ProductResistanceReport product_resistance_monitor(const Graph& g, const Graph& h);

struct TreeProductReport {
  double r_max_tree = 0.0;  // R_max(G x T)
  double r_max_path = 0.0;  // R_max(G x P_r) with r = |V(T)|
  double ratio = 0.0;       // expected below 4
};

TreeProductReport tree_product_monitor(const Graph& g, const Graph& tree);

}  // namespace rwlab
