// weighting.hpp - edge-weighting schemes and the min-deg invariants.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rwlab/graph.hpp"
#include "rwlab/scheme.hpp"
#include "rwlab/walk.hpp"

namespace rwlab {

double scheme_weight(Scheme s, std::size_t du, std::size_t dv);

/// Reweights every edge from its endpoint degrees. The input must be simple
/// with unit weights; anything else throws UnsupportedInput.
Graph apply_scheme(const Graph& g, Scheme s);

struct MindegReport {
  std::size_t n = 0;
  double total_weight = 0.0;  // w(G)
  bool total_weight_in_range = false;  // n <= w(G) <= 2n
  double min_vertex_weight = 0.0;      // min_u w(u)
  bool vertex_weights_ok = false;      // 1 <= w(u) <= d(u)
  bool edge_bounds_ok = false;         // w(e) <= 1/d(u) + 1/d(v) <= 2 w(e)
  std::optional<double> max_hitting;   // exact, when n <= kDenseSolveCap
  bool hitting_ok = false;             // max_hitting <= 6 n^2
  std::size_t paths_checked = 0;
  std::size_t max_path_degree_sum = 0;
  bool path_sums_ok = false;           // every sampled shortest path has sum d <= 3n

  bool all_ok() const {
    return total_weight_in_range && vertex_weights_ok && edge_bounds_ok && hitting_ok && path_sums_ok;
  }
};

/// g connected, simple, unit weight. Shortest paths join `paths` random vertex
/// pairs drawn from Rng(seed, i).
MindegReport mindeg_invariant_report(const Graph& g, std::uint64_t seed = 0, std::size_t paths = 100);

struct SpeedupReport {
  EstimateRecord uniform;
  EstimateRecord mindeg;
  double ratio = 0.0;    // uniform mean / mindeg mean
  double z_score = 0.0;  // (uniform - mindeg) / sqrt(se_u^2 + se_m^2)
};

/// Cover-time estimates from `start` under both schemes with the same seed.
SpeedupReport speedup(const Graph& g, std::uint64_t trials, std::uint64_t seed, Vertex start = 0,
                      unsigned workers = 1);

}  // namespace rwlab
