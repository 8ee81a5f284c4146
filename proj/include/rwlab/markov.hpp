// markov.hpp - exact (dense linear algebra) Markov-chain quantities.
//
// Everything here is a pure function of an immutable kernel. Linear solves
// use LU with partial pivoting and are capped at n <= 5000.
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwlab/graph.hpp"
#include "rwlab/scheme.hpp"

namespace rwlab {

inline constexpr std::size_t kDenseSolveCap = 5000;
inline constexpr std::size_t kExactCoverCap = 13;
inline constexpr std::size_t kMixingCap = 1'000'000;

struct TransitionKernel {
  Eigen::MatrixXd P;
  bool lazy = false;
  /// "uniform"/"ikeda"/"mindeg" when a scheme was applied, "given" when the
  /// graph's own weights were used, "matrix" for hand-built chains.
  std::string scheme = "matrix";
  /// c(v) of the generating graph; empty for hand-built chains.
  std::vector<double> vertex_weight;

  std::size_t size() const { return static_cast<std::size_t>(P.rows()); }
};

/// Kernel of the walk on g with its own weights:
///   P[u][v] = sum_{e=(u,v)} c(e)/c(u),  P[u][u] = sum_loops 2c(e)/c(u).
/// The lazy variant is (P + I)/2. Throws NumericError for a disconnected graph
/// or a zero-degree vertex.
TransitionKernel build_kernel(const Graph& g, bool lazy = false);

/// Same, after reweighting g with `scheme` (g must be simple, unit weight).
TransitionKernel build_kernel(const Graph& g, Scheme scheme, bool lazy = false);

/// Wraps a hand-built row-stochastic matrix (validated to 1e-12).
TransitionKernel kernel_from_matrix(Eigen::MatrixXd P, bool lazy = false);

bool is_irreducible(const TransitionKernel& k);

/// pi. Closed form c(v)/c(G) for graph kernels, otherwise the solution of
/// pi P = pi. Verified to satisfy pi = pi P within 1e-10. Throws NumericError
/// for reducible kernels.
std::vector<double> stationary(const TransitionKernel& k);

/// H[u][v] = expected steps from u to first visit of v. One linear solve per target.
Eigen::MatrixXd exact_hitting(const TransitionKernel& k);

/// Expected return time to v, 1/pi_v. Cross-checked against
/// 1 + sum_w P[v][w] H[w][v] (one hitting solve); NumericError on disagreement.
double first_return(const TransitionKernel& k, Vertex v);

/// Extends `boundary` to the unique f with f(u) = source + sum_w P[u][w] f(w)
/// on every non-boundary u (source = 0 gives the harmonic extension).
/// Throws ParameterError on an empty boundary, NumericError if some interior
/// vertex cannot reach the boundary.
std::vector<double> harmonic_extension(const TransitionKernel& k,
                                       const std::map<Vertex, double>& boundary,
                                       double source = 0.0);

struct SpectralDecomposition {
  std::vector<double> values;  // descending
  Eigen::MatrixXd vectors;     // columns match `values`, eigenvectors of D^1/2 P D^-1/2
  std::vector<double> pi;
};

/// Eigen-decomposition of the symmetrised kernel diag(sqrt pi) P diag(1/sqrt pi).
/// Requires a reversible kernel; throws NumericError otherwise.
SpectralDecomposition spectral_decomposition(const TransitionKernel& k);

/// lambda_1 >= ... >= lambda_n.
std::vector<double> eigenvalues(const TransitionKernel& k);

/// Smallest t with max_{u,x} |P^t[u][x] - pi_x| <= threshold (default n^-3),
/// found by repeated squaring and then a binary search over the saved powers.
/// Throws TimeoutError when t would exceed 10^6.
std::size_t mixing_time(const TransitionKernel& k, std::optional<double> threshold = {});

/// max_{u,x} |P^t[u][x] - pi_x| for one t, by repeated squaring.
double max_deviation(const TransitionKernel& k, std::size_t t);

/// R_v(T) = sum_{t=0}^{T-1} P^t[v][v].
double return_count(const TransitionKernel& k, Vertex v, std::size_t T);

/// Exact expected cover time from every start vertex, via the absorbing chain
/// on (vertex, visited set). n <= 13.
std::vector<double> exact_cover_times(const TransitionKernel& k);
double exact_cover_time(const TransitionKernel& k, Vertex start);

/// max_{u,v} |pi_u P[u][v] - pi_v P[v][u]|.
double detailed_balance_violation(const TransitionKernel& k);

/// Weighted graph with c(i,j) = pi_i P[i][j]; diagonal mass becomes a loop of
/// weight pi_i P[i][i] / 2. Throws UnsupportedInput when the kernel violates
/// detailed balance by more than 1e-9.
Graph chain_to_graph(const TransitionKernel& k, const std::vector<double>& pi);

/// Kernel dump: "# kernel n=<n> scheme=<id> lazy=<0|1>" then n CSV rows.
void write_kernel_csv(std::ostream& out, const TransitionKernel& k);
TransitionKernel read_kernel_csv(std::istream& in);

}  // namespace rwlab
