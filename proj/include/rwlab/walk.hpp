// walk.hpp - seeded Monte Carlo random walks.
//
// Trial i of a run with master seed s draws from Rng(s, i) (see random.hpp),
// so a trial's outcome depends only on (graph, config, s, i). Trials are
// spread over a worker pool, stored by index and aggregated in index order;
// the resulting record is bit-identical for any worker count.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rwlab/graph.hpp"
#include "rwlab/scheme.hpp"

namespace rwlab {

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000;

enum class StopKind { cover, hit, blanket, blanket_cover, budget };

struct StopCriterion {
  StopKind kind = StopKind::cover;
  Vertex target = 0;            // hit
  double delta = 0.0;           // blanket: stop once N_v(t) > delta pi_v t for every v
  double reference_cover = 0.0; // blanket_cover: stop once N_v(t) >= pi_v * reference_cover

  static StopCriterion cover() { return {}; }
  static StopCriterion hit(Vertex v) { return {StopKind::hit, v, 0.0, 0.0}; }
  static StopCriterion blanket(double delta) { return {StopKind::blanket, 0, delta, 0.0}; }
  static StopCriterion blanket_cover(double reference) {
    return {StopKind::blanket_cover, 0, 0.0, reference};
  }
  static StopCriterion budget() { return {StopKind::budget, 0, 0.0, 0.0}; }

  /// "cover", "hit:<v>", "blanket:<delta>", "blanket-cover", "budget".
  std::string id() const;
};

struct WalkConfig {
  /// Reweight the graph first; empty means walk on the graph's own weights.
  std::optional<Scheme> scheme;
  bool lazy = false;
  StopCriterion stop;
  /// Steps allowed per trial. For StopKind::budget this is the walk length.
  std::uint64_t budget = kDefaultStepBudget;
};

struct TrialResult {
  std::uint64_t steps = 0;
  bool censored = false;            // budget ran out before the criterion held
  std::vector<std::uint64_t> visits;  // N_v over positions X_0..X_steps
};

/// Precomputed sampling tables for one (graph, config) pair. Vertices with
/// more than 8 incident edge-ends use Vose alias tables; the rest use a
/// linear scan. A loop contributes weight 2c(e) to its vertex.
class WalkEngine {
 public:
  WalkEngine(const Graph& g, WalkConfig config);

  TrialResult simulate(Vertex start, std::uint64_t seed, std::uint64_t trial_index) const;

  const WalkConfig& config() const { return config_; }
  std::size_t num_vertices() const { return n_; }
  const std::vector<double>& stationary() const { return pi_; }

 private:
  struct Table {
    std::vector<Vertex> target;
    std::vector<double> cumulative;  // linear scan
    std::vector<double> prob;        // alias
    std::vector<std::uint32_t> alias;
    double total = 0.0;
  };
  template <class R>
  Vertex step(Vertex u, R& rng) const;

  WalkConfig config_;
  std::size_t n_ = 0;
  std::vector<Table> tables_;
  std::vector<double> pi_;
};

struct EstimateRecord {
  std::string quantity;
  std::string graph_id;
  std::string scheme;
  std::string start;  // vertex id or "worst"
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n - 1 denominator)
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::uint64_t seed = 0;

  /// sqrt(variance / completed trials).
  double standard_error() const;
};

/// Run `trials` walks from `start`; trial i uses substream i of `seed`.
/// `workers` = 0 uses the hardware concurrency.
EstimateRecord estimate(const Graph& g, const WalkConfig& config, Vertex start, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers = 1);

EstimateRecord estimate_cover(const Graph& g, WalkConfig config, Vertex start, std::uint64_t trials,
                              std::uint64_t seed, unsigned workers = 1);
EstimateRecord estimate_hitting(const Graph& g, WalkConfig config, Vertex start, Vertex target,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);
EstimateRecord estimate_blanket(const Graph& g, WalkConfig config, Vertex start, double delta,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// Estimates from every start vertex (start v uses master seed derive_seed(seed, v))
/// and returns the record with the largest mean, start tagged "worst:<v>".
EstimateRecord worst_case_sweep(const Graph& g, const WalkConfig& config, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers = 1);

struct StConnectivityResult {
  bool connected = false;
  std::uint64_t steps = 0;
};

/// Walks from s for at most 8 n m steps and answers true only on reaching t.
/// A "false" verdict is wrong with probability at most 1/2 when a path exists.
StConnectivityResult st_connectivity(const Graph& g, Vertex s, Vertex t, std::uint64_t seed);

/// CSV: quantity,graph_id,scheme,start,trials,seed,mean,stderr,censored
void write_estimate_header(std::ostream& out);
void write_estimate_row(std::ostream& out, const EstimateRecord& r);

}  // namespace rwlab
