// Slow, independent reference computations used only by the tests.
//
// Each oracle takes a different numerical path from the library routine it
// checks (full-pivot LU instead of partial pivoting, Neumann series instead of
// a direct solve, forward probability mass instead of a linear system, plain
// enumeration instead of Gray codes, the Laplacian pseudo-inverse instead of a
// grounded inverse).
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rwlab/graph.hpp"

namespace oracle {

using rwlab::Graph;
using rwlab::Vertex;

inline Eigen::MatrixXd transition_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    if (e.u == e.v) {
      P(e.u, e.u) += 2.0 * e.weight;
    } else {
      P(e.u, e.v) += e.weight;
      P(e.v, e.u) += e.weight;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) P.row(i) /= P.row(i).sum();
  return P;
}

inline Eigen::MatrixXd pick(const Eigen::MatrixXd& P, const std::vector<Vertex>& rows, const std::vector<Vertex>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = P(rows[i], cols[j]);
  return out;
}

inline std::vector<Vertex> complement(std::size_t n, const std::vector<Vertex>& S) {
  std::vector<bool> in(n, false);
  for (Vertex v : S) in[v] = true;
  std::vector<Vertex> X;
  for (Vertex v = 0; v < n; ++v)
    if (!in[v]) X.push_back(v);
  return X;
}

/// Censored chain on S: P_SS + P_SX (I - P_XX)^-1 P_XS. S must be sorted.
inline Eigen::MatrixXd censored_kernel(const Eigen::MatrixXd& P, const std::vector<Vertex>& S) {
  const auto X = complement(static_cast<std::size_t>(P.rows()), S);
  Eigen::MatrixXd out = pick(P, S, S);
  if (X.empty()) return out;
  const Eigen::MatrixXd Pxx = pick(P, X, X);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(Pxx.rows(), Pxx.cols());
  out += pick(P, S, X) * (I - Pxx).fullPivLu().solve(pick(P, X, S));
  return out;
}

/// The same censored chain summed over excursion lengths:
/// P_SS + P_SX sum_k P_XX^k P_XS, iterated until the terms vanish.
inline Eigen::MatrixXd censored_kernel_by_paths(const Eigen::MatrixXd& P, const std::vector<Vertex>& S) {
  const auto X = complement(static_cast<std::size_t>(P.rows()), S);
  Eigen::MatrixXd out = pick(P, S, S);
  if (X.empty()) return out;
  const Eigen::MatrixXd Pxx = pick(P, X, X);
  const Eigen::MatrixXd Pxs = pick(P, X, S);
  Eigen::MatrixXd term = Pxs;
  Eigen::MatrixXd absorbed = Eigen::MatrixXd::Zero(Pxs.rows(), Pxs.cols());
  for (int k = 0; k < 2'000'000 && term.cwiseAbs().maxCoeff() > 1e-17; ++k) {
    absorbed += term;
    term = Pxx * term;
  }
  out += pick(P, S, X) * absorbed;
  return out;
}

/// E[first visit time of v from u] by pushing probability mass forward for
/// `horizon` steps: sum_t t * Pr(first visit at t).
inline double forward_hitting(const Eigen::MatrixXd& P, Vertex u, Vertex v, std::size_t horizon) {
  if (u == v) return 0.0;
  Eigen::RowVectorXd mass = Eigen::RowVectorXd::Zero(P.rows());
  mass(u) = 1.0;
  double expectation = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    mass = mass * P;
    expectation += static_cast<double>(t) * mass(v);
    mass(v) = 0.0;
  }
  return expectation;
}

/// Stationary distribution from the left null space, without the closed form.
inline Eigen::VectorXd stationary(const Eigen::MatrixXd& P) {
  const auto n = P.rows();
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  return A.fullPivLu().solve(b);
}

/// min over every subset S with pi(S) <= 1/2 of Q(S, S^c) / pi(S), plain bitmask loop.
inline double conductance(const Eigen::MatrixXd& P) {
  const auto n = static_cast<std::size_t>(P.rows());
  const Eigen::VectorXd pi = stationary(P);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    double mass = 0.0, cut = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!(mask >> x & 1)) continue;
      mass += pi(x);
      for (std::size_t y = 0; y < n; ++y)
        if (!(mask >> y & 1)) cut += pi(x) * P(x, y);
    }
    if (mass <= 0.5 + 1e-12) best = std::min(best, cut / mass);
  }
  return best;
}

/// Smallest t with max |P^t - 1 pi| <= threshold, by one multiplication per step.
inline std::size_t mixing_by_powers(const Eigen::MatrixXd& P, double threshold, std::size_t cap = 100000) {
  const Eigen::VectorXd pi = stationary(P);
  Eigen::MatrixXd Pt = P;
  for (std::size_t t = 1; t <= cap; ++t) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < P.rows(); ++i)
      for (Eigen::Index j = 0; j < P.cols(); ++j) dev = std::max(dev, std::abs(Pt(i, j) - pi(j)));
    if (dev <= threshold) return t;
    Pt = Pt * P;
  }
  return cap + 1;
}

/// R(u, v) from the Moore-Penrose pseudo-inverse of the weighted Laplacian.
inline Eigen::MatrixXd resistance_by_pseudoinverse(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    L(e.u, e.u) += e.weight;
    L(e.v, e.v) += e.weight;
    L(e.u, e.v) -= e.weight;
    L(e.v, e.u) -= e.weight;
  }
  const Eigen::MatrixXd Lp = L.completeOrthogonalDecomposition().pseudoInverse();
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) R(u, v) = Lp(u, u) + Lp(v, v) - 2.0 * Lp(u, v);
  return R;
}

/// Best Matthews lower bound by trying every subset of size 2..max_size.
inline double matthews_lower_brute(const Eigen::MatrixXd& H, std::size_t max_size) {
  const auto n = static_cast<std::size_t>(H.rows());
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> A;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) A.push_back(v);
    if (A.size() < 2 || A.size() > max_size) continue;
    double m = std::numeric_limits<double>::infinity();
    for (auto a : A)
      for (auto b : A)
        if (a != b) m = std::min(m, H(a, b));
    double h = 0.0;
    for (std::size_t i = 1; i < A.size(); ++i) h += 1.0 / static_cast<double>(i);
    best = std::max(best, m * h);
  }
  return best;
}

/// Expected cover time from `start` by value iteration on (vertex, visited set).
/// Exponential; n <= 8.
inline double cover_by_value_iteration(const Eigen::MatrixXd& P, Vertex start) {
  const auto n = static_cast<std::size_t>(P.rows());
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<double> E(n << n, 0.0);
  auto at = [&](std::size_t v, std::uint64_t S) -> double& { return E[S * n + v]; };
  for (int sweep = 0; sweep < 200000; ++sweep) {
    double change = 0.0;
    for (std::uint64_t S = full - 1; S >= 1; --S) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!(S >> v & 1)) continue;
        double value = 1.0;
        for (std::size_t w = 0; w < n; ++w) {
          if (P(v, w) == 0.0) continue;
          const std::uint64_t T = S | (std::uint64_t{1} << w);
          value += P(v, w) * (T == full ? 0.0 : at(w, T));
        }
        change = std::max(change, std::abs(value - at(v, S)));
        at(v, S) = value;
      }
    }
    if (change < 1e-12) break;
  }
  return at(start, std::uint64_t{1} << start);
}

}  // namespace oracle
