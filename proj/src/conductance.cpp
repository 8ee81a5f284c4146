#include "rwlab/conductance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numeric>

#include "rwlab/errors.hpp"

namespace rwlab {

namespace {

TransitionKernel kernel_for(const Graph& g, std::optional<Scheme> scheme, bool lazy) {
  return scheme ? build_kernel(g, *scheme, lazy) : build_kernel(g, lazy);
}

// Symmetrised ergodic flow; exact Q for reversible chains.
Eigen::MatrixXd ergodic_flow(const TransitionKernel& k, const std::vector<double>& pi) {
  Eigen::MatrixXd Q = Eigen::Map<const Eigen::VectorXd>(pi.data(), static_cast<Eigen::Index>(pi.size()))
                          .asDiagonal() * k.P;
  return 0.5 * (Q + Q.transpose());
}

std::vector<Vertex> lighter_side(const std::vector<bool>& in, const std::vector<double>& pi) {
  double mass = 0.0;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) mass += pi[v];
  const bool take_in = mass <= 0.5;
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v] == take_in) out.push_back(v);
  return out;
}

}  // namespace

std::string ConductanceResult::to_json() const {
  nlohmann::ordered_json j;
  j["phi"] = phi;
  j["method"] = method == ConductanceMethod::exact_enumeration ? "exact-enumeration" : "sweep-upper-bound";
  j["subset"] = subset;
  return j.dump();
}

double cut_ratio(const TransitionKernel& k, const std::vector<Vertex>& subset) {
  const auto pi = stationary(k);
  const std::size_t n = k.size();
  std::vector<bool> in(n, false);
  for (Vertex v : subset) in.at(v) = true;
  double mass = 0.0, cut = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x]) continue;
    mass += pi[x];
    for (std::size_t y = 0; y < n; ++y)
      if (!in[y]) cut += pi[x] * k.P(x, y);
  }
  const double denom = std::min(mass, 1.0 - mass);
  if (denom <= 0.0) throw ParameterError("cut ratio needs a proper nonempty subset");
  return cut / denom;
}

ConductanceResult conductance_exact(const TransitionKernel& k) {
  const std::size_t n = k.size();
  if (n > kConductanceCap) throw SizeError("exact conductance capped at n = 22, got " + std::to_string(n));
  if (n < 2) throw ParameterError("conductance needs at least two vertices");
  const auto pi = stationary(k);
  const Eigen::MatrixXd Q = ergodic_flow(k, pi);

  // T always contains vertex 0; bit i-1 of the Gray code toggles vertex i.
  std::vector<bool> in(n, false);
  in[0] = true;
  std::vector<double> flow_from_T(n, 0.0);  // sum_{x in T, x != v} Q(x, v)
  for (std::size_t y = 1; y < n; ++y) flow_from_T[y] = Q(0, y);
  double mass = pi[0];
  double cut = pi[0] - Q(0, 0);
  std::size_t size = 1;

  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> best_in;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 0;; ++i) {
    const double denom = std::min(mass, 1.0 - mass);
    if (size < n && denom > 1e-15) {
      const double ratio = cut / denom;
      if (ratio < best) {
        best = ratio;
        best_in = in;
      }
    }
    if (i + 1 >= count) break;
    const std::size_t v = static_cast<std::size_t>(std::countr_zero(i + 1)) + 1;
    const double outside = pi[v] - Q(v, v) - flow_from_T[v];
    if (!in[v]) {
      cut += outside - flow_from_T[v];
      mass += pi[v];
      in[v] = true;
      ++size;
      for (std::size_t y = 0; y < n; ++y)
        if (y != v) flow_from_T[y] += Q(v, y);
    } else {
      cut -= outside - flow_from_T[v];
      mass -= pi[v];
      in[v] = false;
      --size;
      for (std::size_t y = 0; y < n; ++y)
        if (y != v) flow_from_T[y] -= Q(v, y);
    }
  }
  ConductanceResult r;
  r.method = ConductanceMethod::exact_enumeration;
  r.subset = lighter_side(best_in, pi);
  // Rescore the winner from scratch so drift in the running sums never leaks out.
  r.phi = cut_ratio(k, r.subset);
  return r;
}

ConductanceResult conductance_exact(const Graph& g, std::optional<Scheme> scheme, bool lazy) {
  return conductance_exact(kernel_for(g, scheme, lazy));
}

ConductanceResult conductance_sweep(const TransitionKernel& k) {
  const std::size_t n = k.size();
  if (n < 2) throw ParameterError("conductance needs at least two vertices");
  const SpectralDecomposition sd = spectral_decomposition(k);
  const auto& pi = sd.pi;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = sd.vectors(static_cast<Eigen::Index>(i), 1) / std::sqrt(pi[i]);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });

  const Eigen::MatrixXd Q = ergodic_flow(k, pi);
  std::vector<bool> in(n, false);
  double mass = 0.0, cut = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> best_in;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const Vertex v = order[j];
    double into_prefix = 0.0;
    for (std::size_t x = 0; x < n; ++x)
      if (in[x]) into_prefix += Q(x, v);
    cut += (pi[v] - Q(v, v) - into_prefix) - into_prefix;
    mass += pi[v];
    in[v] = true;
    const double denom = std::min(mass, 1.0 - mass);
    if (denom > 1e-15 && cut / denom < best) {
      best = cut / denom;
      best_in = in;
    }
  }
  ConductanceResult r;
  r.method = ConductanceMethod::sweep_upper_bound;
  r.subset = lighter_side(best_in, pi);
  r.phi = cut_ratio(k, r.subset);
  return r;
}

ConductanceResult conductance_sweep(const Graph& g, std::optional<Scheme> scheme, bool lazy) {
  return conductance_sweep(kernel_for(g, scheme, lazy));
}

SandwichMargins jerrum_sinclair_check(const Graph& g, std::optional<Scheme> scheme) {
  const TransitionKernel lazy = kernel_for(g, scheme, true);
  SandwichMargins m;
  m.phi = conductance_exact(lazy).phi;
  const auto values = eigenvalues(lazy);
  m.gap = 1.0 - values.at(1);
  m.lower = m.gap - m.phi * m.phi / 2.0;
  m.upper = 2.0 * m.phi - m.gap;
  return m;
}

std::size_t mixing_from_conductance(const TransitionKernel& lazy_kernel, double phi) {
  if (!(phi > 0.0 && phi <= 1.0)) throw ParameterError("conductance must lie in (0, 1]");
  const auto pi = stationary(lazy_kernel);
  const auto [lo, hi] = std::minmax_element(pi.begin(), pi.end());
  const double n = static_cast<double>(pi.size());
  const double prefactor = std::sqrt(*hi / *lo);
  const double rate = 1.0 - phi * phi / 2.0;
  const double target = std::pow(n, -3.0);
  // Closed form, then nudge to the exact smallest integer.
  double t = std::ceil(std::log(target / prefactor) / std::log(rate));
  t = std::max(t, 0.0);
  auto ok = [&](double s) { return prefactor * std::pow(rate, s) <= target; };
  while (t > 0 && ok(t - 1)) t -= 1;
  while (!ok(t)) t += 1;
  return static_cast<std::size_t>(t);
}

}  // namespace rwlab
