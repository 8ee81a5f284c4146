#include "rwlab/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwlab/errors.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/random.hpp"

namespace rwlab {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::uniform: return "uniform";
    case Scheme::ikeda: return "ikeda";
    case Scheme::mindeg: return "mindeg";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "uniform") return Scheme::uniform;
  if (text == "ikeda") return Scheme::ikeda;
  if (text == "mindeg") return Scheme::mindeg;
  throw ParseError("unknown scheme '" + std::string(text) + "' (uniform|ikeda|mindeg)");
}

double scheme_weight(Scheme s, std::size_t du, std::size_t dv) {
  switch (s) {
    case Scheme::uniform: return 1.0;
    case Scheme::ikeda: return 1.0 / std::sqrt(static_cast<double>(du) * static_cast<double>(dv));
    case Scheme::mindeg: return 1.0 / static_cast<double>(std::min(du, dv));
  }
  return 1.0;
}

Graph apply_scheme(const Graph& g, Scheme s) {
  if (!g.is_simple() || !g.is_unit_weight()) {
    throw UnsupportedInput("weighting schemes are defined on simple unit-weight graphs only");
  }
  std::vector<double> w;
  w.reserve(g.num_edges());
  for (const Edge& e : g.edges()) w.push_back(scheme_weight(s, g.degree(e.u), g.degree(e.v)));
  return g.with_weights(w);
}

MindegReport mindeg_invariant_report(const Graph& g, std::uint64_t seed, std::size_t paths) {
  if (!g.is_connected()) throw NumericError("min-deg report needs a connected graph");
  const Graph w = apply_scheme(g, Scheme::mindeg);
  const std::size_t n = g.num_vertices();
  const double nd = static_cast<double>(n);
  MindegReport r;
  r.n = n;
  r.total_weight = w.total_conductance();  // sum of vertex weights
  r.total_weight_in_range = r.total_weight >= nd * (1 - 1e-12) && r.total_weight <= 2 * nd * (1 + 1e-12);

  r.vertex_weights_ok = true;
  r.min_vertex_weight = n ? w.conductance(0) : 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const double wv = w.conductance(v);
    r.min_vertex_weight = std::min(r.min_vertex_weight, wv);
    if (wv < 1.0 - 1e-12 || wv > static_cast<double>(g.degree(v)) + 1e-12) r.vertex_weights_ok = false;
  }

  r.edge_bounds_ok = true;
  for (const Edge& e : w.edges()) {
    const double s = 1.0 / static_cast<double>(g.degree(e.u)) + 1.0 / static_cast<double>(g.degree(e.v));
    if (e.weight > s * (1 + 1e-12) || s > 2 * e.weight * (1 + 1e-12)) r.edge_bounds_ok = false;
  }

  if (n <= kDenseSolveCap) {
    const Eigen::MatrixXd H = exact_hitting(build_kernel(w));
    r.max_hitting = H.maxCoeff();
    r.hitting_ok = *r.max_hitting <= 6.0 * nd * nd;
  }

  r.path_sums_ok = true;
  if (n >= 2) {
    for (std::size_t i = 0; i < paths; ++i) {
      Rng rng(seed, i);
      const Vertex a = rng.below(n);
      const Vertex b = rng.below(n);
      std::size_t sum = 0;
      for (Vertex x : shortest_path(g, a, b)) sum += g.degree(x);
      r.max_path_degree_sum = std::max(r.max_path_degree_sum, sum);
      ++r.paths_checked;
    }
    r.path_sums_ok = r.max_path_degree_sum <= 3 * n;
  }
  return r;
}

SpeedupReport speedup(const Graph& g, std::uint64_t trials, std::uint64_t seed, Vertex start,
                      unsigned workers) {
  SpeedupReport r;
  WalkConfig config;
  config.scheme = Scheme::uniform;
  r.uniform = estimate_cover(g, config, start, trials, seed, workers);
  config.scheme = Scheme::mindeg;
  r.mindeg = estimate_cover(g, config, start, trials, seed, workers);
  r.ratio = r.uniform.mean / r.mindeg.mean;
  const double se = std::hypot(r.uniform.standard_error(), r.mindeg.standard_error());
  r.z_score = se > 0 ? (r.uniform.mean - r.mindeg.mean) / se : 0.0;
  return r;
}

}  // namespace rwlab
