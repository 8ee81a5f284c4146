#include "rwlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "rwlab/errors.hpp"
#include "rwlab/weighting.hpp"

namespace rwlab {

namespace {

void check_solve_size(std::size_t n) {
  if (n > kDenseSolveCap) {
    throw SizeError("dense solve capped at n = " + std::to_string(kDenseSolveCap) + ", got " +
                    std::to_string(n));
  }
}

void check_vertex(const TransitionKernel& k, Vertex v) {
  if (v >= k.size()) throw OutOfRange("vertex " + std::to_string(v) + " out of range");
}

void check_stochastic(const Eigen::MatrixXd& P) {
  if (P.rows() != P.cols() || P.rows() == 0) throw ParameterError("kernel must be square and non-empty");
  for (Eigen::Index u = 0; u < P.rows(); ++u) {
    double sum = 0.0;
    for (Eigen::Index v = 0; v < P.cols(); ++v) {
      if (P(u, v) < 0.0 || !std::isfinite(P(u, v))) throw ParameterError("kernel entries must be >= 0");
      sum += P(u, v);
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ParameterError("kernel row " + std::to_string(u) + " sums to " + std::to_string(sum));
    }
  }
}

// Solve (I - P_II) f_I = source + P_IB f_B over the interior I.
Eigen::VectorXd solve_interior(const Eigen::MatrixXd& P, const std::vector<Eigen::Index>& interior,
                               const std::vector<bool>& is_boundary, const Eigen::VectorXd& f_full,
                               double source) {
  const auto m = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Constant(m, source);
  const Eigen::Index n = P.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index u = interior[i];
    for (Eigen::Index j = 0; j < m; ++j) A(i, j) -= P(u, interior[j]);
    for (Eigen::Index w = 0; w < n; ++w)
      if (is_boundary[w]) b(i) += P(u, w) * f_full(w);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd x = lu.solve(b);
  const double residual = (A * x - b).norm();
  if (!x.allFinite() || residual > 1e-6 * (1.0 + b.norm())) {
    throw NumericError("singular harmonic system (some interior vertex cannot reach the boundary), residual " +
                       std::to_string(residual));
  }
  return x;
}

}  // namespace

TransitionKernel build_kernel(const Graph& g, bool lazy) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw ParameterError("empty graph");
  if (!g.is_connected()) throw NumericError("graph is disconnected; kernel is reducible");
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 0) throw NumericError("vertex " + std::to_string(v) + " has degree 0");

  TransitionKernel k;
  k.P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      k.P(e.u, e.u) += 2.0 * e.weight / g.conductance(e.u);
    } else {
      k.P(e.u, e.v) += e.weight / g.conductance(e.u);
      k.P(e.v, e.u) += e.weight / g.conductance(e.v);
    }
  }
  k.vertex_weight.resize(n);
  for (Vertex v = 0; v < n; ++v) k.vertex_weight[v] = g.conductance(v);
  if (lazy) {
    k.P = 0.5 * k.P + 0.5 * Eigen::MatrixXd::Identity(k.P.rows(), k.P.cols());
    k.lazy = true;
  }
  k.scheme = "given";
  return k;
}

TransitionKernel build_kernel(const Graph& g, Scheme scheme, bool lazy) {
  TransitionKernel k = build_kernel(apply_scheme(g, scheme), lazy);
  k.scheme = to_string(scheme);
  return k;
}

TransitionKernel kernel_from_matrix(Eigen::MatrixXd P, bool lazy) {
  check_stochastic(P);
  TransitionKernel k;
  k.P = std::move(P);
  k.lazy = lazy;
  return k;
}

bool is_irreducible(const TransitionKernel& k) {
  const std::size_t n = k.size();
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        double p = transpose ? k.P(v, u) : k.P(u, v);
        if (p > 0.0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

std::vector<double> stationary(const TransitionKernel& k) {
  const std::size_t n = k.size();
  if (!is_irreducible(k)) throw NumericError("kernel is reducible; stationary distribution not unique");
  std::vector<double> pi(n);
  if (k.vertex_weight.size() == n) {
    const double total = std::accumulate(k.vertex_weight.begin(), k.vertex_weight.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) pi[v] = k.vertex_weight[v] / total;
  } else {
    check_solve_size(n);
    // pi (I - P) = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd A = (Eigen::MatrixXd::Identity(k.P.rows(), k.P.cols()) - k.P).transpose();
    A.row(A.rows() - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    b(b.size() - 1) = 1.0;
    Eigen::VectorXd x = A.partialPivLu().solve(b);
    for (std::size_t v = 0; v < n; ++v) pi[v] = x(static_cast<Eigen::Index>(v));
  }
  Eigen::Map<const Eigen::RowVectorXd> row(pi.data(), static_cast<Eigen::Index>(n));
  const double err = (row * k.P - row).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw NumericError("stationary check failed: |pi P - pi| = " + std::to_string(err));
  return pi;
}

Eigen::MatrixXd exact_hitting(const TransitionKernel& k) {
  const std::size_t n = k.size();
  check_solve_size(n);
  if (!is_irreducible(k)) throw NumericError("kernel is reducible; hitting times are not all finite");
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k.P.rows(), k.P.cols());
  for (std::size_t target = 0; target < n; ++target) {
    auto h = harmonic_extension(k, {{target, 0.0}}, 1.0);
    for (std::size_t u = 0; u < n; ++u) H(u, target) = h[u];
  }
  return H;
}

double first_return(const TransitionKernel& k, Vertex v) {
  check_vertex(k, v);
  const auto pi = stationary(k);
  const double ret = 1.0 / pi[v];
  const auto h = harmonic_extension(k, {{v, 0.0}}, 1.0);
  double via_hitting = 1.0;
  for (std::size_t w = 0; w < k.size(); ++w) via_hitting += k.P(v, w) * h[w];
  if (std::abs(via_hitting - ret) > 1e-8 * ret) {
    throw NumericError("return-time cross-check failed: 1/pi = " + std::to_string(ret) +
                       ", via hitting = " + std::to_string(via_hitting));
  }
  return ret;
}

std::vector<double> harmonic_extension(const TransitionKernel& k, const std::map<Vertex, double>& boundary,
                                       double source) {
  const std::size_t n = k.size();
  if (boundary.empty()) throw ParameterError("harmonic extension needs a non-empty boundary");
  check_solve_size(n);
  std::vector<bool> is_boundary(n, false);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (auto [v, value] : boundary) {
    check_vertex(k, v);
    is_boundary[v] = true;
    f(static_cast<Eigen::Index>(v)) = value;
  }
  std::vector<Eigen::Index> interior;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_boundary[v]) interior.push_back(static_cast<Eigen::Index>(v));
  if (!interior.empty()) {
    Eigen::VectorXd x = solve_interior(k.P, interior, is_boundary, f, source);
    for (std::size_t i = 0; i < interior.size(); ++i) f(interior[i]) = x(static_cast<Eigen::Index>(i));
  }
  return {f.data(), f.data() + f.size()};
}

SpectralDecomposition spectral_decomposition(const TransitionKernel& k) {
  const std::size_t n = k.size();
  check_solve_size(n);
  SpectralDecomposition out;
  out.pi = stationary(k);
  if (detailed_balance_violation(k) > 1e-9) {
    throw NumericError("kernel is not reversible; symmetrised spectrum undefined");
  }
  Eigen::VectorXd s(static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) s(static_cast<Eigen::Index>(v)) = std::sqrt(out.pi[v]);
  Eigen::MatrixXd N = s.asDiagonal() * k.P * s.cwiseInverse().asDiagonal();
  N = 0.5 * (N + N.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(N);
  if (solver.info() != Eigen::Success) {
    const double residual =
        (N * solver.eigenvectors() - solver.eigenvectors() * solver.eigenvalues().asDiagonal()).norm();
    throw NumericError("eigensolver did not converge, residual " + std::to_string(residual));
  }
  // Eigen returns ascending order.
  const auto m = static_cast<Eigen::Index>(n);
  out.values.resize(n);
  out.vectors.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(m - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(m - 1 - i);
  }
  return out;
}

std::vector<double> eigenvalues(const TransitionKernel& k) { return spectral_decomposition(k).values; }

namespace {

double deviation(const Eigen::MatrixXd& Pt, const Eigen::RowVectorXd& pi) {
  return (Pt.rowwise() - pi).cwiseAbs().maxCoeff();
}

}  // namespace

double max_deviation(const TransitionKernel& k, std::size_t t) {
  const auto pi_vec = stationary(k);
  Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(pi_vec.data(), static_cast<Eigen::Index>(pi_vec.size()));
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(k.P.rows(), k.P.cols());
  Eigen::MatrixXd base = k.P;
  for (std::size_t e = t; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return deviation(result, pi);
}

std::size_t mixing_time(const TransitionKernel& k, std::optional<double> threshold) {
  const std::size_t n = k.size();
  check_solve_size(n);
  const double eps = threshold.value_or(std::pow(static_cast<double>(n), -3.0));
  const auto pi_vec = stationary(k);
  Eigen::RowVectorXd pi =
      Eigen::Map<const Eigen::RowVectorXd>(pi_vec.data(), static_cast<Eigen::Index>(n));

  if (deviation(Eigen::MatrixXd::Identity(k.P.rows(), k.P.cols()), pi) <= eps) return 0;

  // powers[j] = P^(2^j). The deviation is non-increasing in t, so once
  // P^(2^j) is within eps the answer lies in (2^(j-1), 2^j].
  std::vector<Eigen::MatrixXd> powers{k.P};
  while (deviation(powers.back(), pi) > eps) {
    if ((std::size_t{1} << (powers.size() - 1)) > kMixingCap) {
      throw TimeoutError("mixing time exceeds 10^6 steps (chain periodic or nearly so)");
    }
    powers.push_back(powers.back() * powers.back());
  }
  const std::size_t top = powers.size() - 1;
  if (top == 0) return 1;
  // Binary search: build t from the high bits down, keeping P^t with deviation > eps.
  std::size_t t = std::size_t{1} << (top - 1);
  Eigen::MatrixXd Pt = powers[top - 1];
  for (std::size_t j = top - 1; j-- > 0;) {
    Eigen::MatrixXd candidate = Pt * powers[j];
    if (deviation(candidate, pi) > eps) {
      Pt = std::move(candidate);
      t += std::size_t{1} << j;
    }
  }
  const std::size_t answer = t + 1;
  if (answer > kMixingCap) throw TimeoutError("mixing time exceeds 10^6 steps");
  return answer;
}

double return_count(const TransitionKernel& k, Vertex v, std::size_t T) {
  check_vertex(k, v);
  if (T < 1) throw ParameterError("return_count needs T >= 1");
  Eigen::RowVectorXd p = Eigen::RowVectorXd::Zero(k.P.rows());
  p(static_cast<Eigen::Index>(v)) = 1.0;
  double total = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    total += p(static_cast<Eigen::Index>(v));
    if (t + 1 < T) p = p * k.P;
  }
  return total;
}

std::vector<double> exact_cover_times(const TransitionKernel& k) {
  const std::size_t n = k.size();
  if (n > kExactCoverCap) {
    throw SizeError("exact cover oracle capped at n = 13, got " + std::to_string(n));
  }
  if (!is_irreducible(k)) throw NumericError("kernel is reducible; cover time infinite");
  const std::size_t full = (std::size_t{1} << n) - 1;
  // E[mask * n + v] = expected remaining steps at v having visited `mask`.
  std::vector<double> E((full + 1) * n, 0.0);
  std::vector<Eigen::Index> members;
  members.reserve(n);
  // S grows monotonically, so every S u {w} is a larger integer than S and is
  // already solved when we descend through the masks.
  for (std::size_t mask = full; mask-- > 1;) {
    members.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (mask & (std::size_t{1} << v)) members.push_back(static_cast<Eigen::Index>(v));
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index v = members[i];
      for (Eigen::Index j = 0; j < m; ++j) A(i, j) -= k.P(v, members[j]);
      for (std::size_t w = 0; w < n; ++w) {
        if (mask & (std::size_t{1} << w)) continue;
        const double p = k.P(v, static_cast<Eigen::Index>(w));
        if (p > 0.0) b(i) += p * E[(mask | (std::size_t{1} << w)) * n + w];
      }
    }
    Eigen::VectorXd x = A.partialPivLu().solve(b);
    for (Eigen::Index i = 0; i < m; ++i) E[mask * n + static_cast<std::size_t>(members[i])] = x(i);
  }
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) out[s] = E[(std::size_t{1} << s) * n + s];
  return out;
}

double exact_cover_time(const TransitionKernel& k, Vertex start) {
  check_vertex(k, start);
  return exact_cover_times(k)[start];
}

double detailed_balance_violation(const TransitionKernel& k) {
  const auto pi = stationary(k);
  double worst = 0.0;
  for (std::size_t u = 0; u < k.size(); ++u)
    for (std::size_t v = u + 1; v < k.size(); ++v)
      worst = std::max(worst, std::abs(pi[u] * k.P(u, v) - pi[v] * k.P(v, u)));
  return worst;
}

Graph chain_to_graph(const TransitionKernel& k, const std::vector<double>& pi) {
  const std::size_t n = k.size();
  if (pi.size() != n) throw ParameterError("pi length mismatch");
  double worst = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      worst = std::max(worst, std::abs(pi[u] * k.P(u, v) - pi[v] * k.P(v, u)));
  if (worst > 1e-9) {
    throw UnsupportedInput("kernel violates detailed balance by " + std::to_string(worst));
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    if (k.P(u, u) > 0.0) edges.push_back({u, u, 0.5 * pi[u] * k.P(u, u)});
    for (std::size_t v = u + 1; v < n; ++v) {
      const double c = 0.5 * (pi[u] * k.P(u, v) + pi[v] * k.P(v, u));
      if (c > 0.0) edges.push_back({u, v, c});
    }
  }
  return Graph(n, std::move(edges));
}

void write_kernel_csv(std::ostream& out, const TransitionKernel& k) {
  out << "# kernel n=" << k.size() << " scheme=" << k.scheme << " lazy=" << (k.lazy ? 1 : 0) << '\n';
  out << std::setprecision(17);
  for (Eigen::Index u = 0; u < k.P.rows(); ++u) {
    for (Eigen::Index v = 0; v < k.P.cols(); ++v) out << (v ? "," : "") << k.P(u, v);
    out << '\n';
  }
}

TransitionKernel read_kernel_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# kernel", 0) != 0) {
    throw ParseError("kernel CSV must start with '# kernel n=<n> scheme=<id> lazy=<0|1>'");
  }
  std::size_t n = 0;
  std::string scheme = "matrix";
  bool lazy = false;
  std::istringstream hs(header.substr(8));
  std::string token;
  while (hs >> token) {
    if (token.rfind("n=", 0) == 0) n = std::stoul(token.substr(2));
    else if (token.rfind("scheme=", 0) == 0) scheme = token.substr(7);
    else if (token.rfind("lazy=", 0) == 0) lazy = token.substr(5) == "1";
  }
  if (n == 0) throw ParseError("kernel header missing n");
  Eigen::MatrixXd P(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::string line;
  for (std::size_t u = 0; u < n; ++u) {
    if (!std::getline(in, line)) throw ParseError("kernel CSV truncated at row " + std::to_string(u));
    std::istringstream row(line);
    std::string cell;
    for (std::size_t v = 0; v < n; ++v) {
      if (!std::getline(row, cell, ',')) throw ParseError("kernel row " + std::to_string(u) + " too short");
      P(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = std::stod(cell);
    }
  }
  TransitionKernel k = kernel_from_matrix(std::move(P), lazy);
  k.scheme = scheme;
  return k;
}

}  // namespace rwlab
