#include "rwlab/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "rwlab/errors.hpp"
#include "rwlab/random.hpp"
#include "rwlab/weighting.hpp"

namespace rwlab {

namespace {

constexpr std::size_t kAliasThreshold = 8;

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string StopCriterion::id() const {
  switch (kind) {
    case StopKind::cover: return "cover";
    case StopKind::hit: return "hit:" + std::to_string(target);
    case StopKind::blanket: return "blanket:" + format_double(delta);
    case StopKind::blanket_cover: return "blanket-cover";
    case StopKind::budget: return "budget";
  }
  return "?";
}

WalkEngine::WalkEngine(const Graph& g, WalkConfig config) : config_(config), n_(g.num_vertices()) {
  const Graph w = config_.scheme ? apply_scheme(g, *config_.scheme) : g;
  if (config_.stop.kind == StopKind::hit && config_.stop.target >= n_) {
    throw OutOfRange("hit target out of range");
  }
  if (config_.stop.kind == StopKind::blanket && !(config_.stop.delta >= 0.0 && config_.stop.delta < 1.0)) {
    throw ParameterError("blanket delta must lie in [0, 1)");
  }
  const bool needs_pi = config_.stop.kind == StopKind::blanket || config_.stop.kind == StopKind::blanket_cover;
  if (needs_pi && !w.is_connected()) throw NumericError("blanket criteria need a connected graph");
  tables_.resize(n_);
  pi_.assign(n_, 0.0);
  const double total = w.total_conductance();
  for (Vertex u = 0; u < n_; ++u) {
    Table& t = tables_[u];
    std::vector<double> weight;
    for (std::size_t id : w.incident(u)) {
      const Edge& e = w.edge(id);
      t.target.push_back(e.other(u));
      weight.push_back(e.is_loop() ? 2.0 * e.weight : e.weight);
    }
    for (double x : weight) t.total += x;
    if (total > 0) pi_[u] = t.total / total;
    const std::size_t k = weight.size();
    if (k <= kAliasThreshold) {
      double acc = 0.0;
      for (double x : weight) t.cumulative.push_back(acc += x);
      continue;
    }
    // Vose's alias method.
    t.prob.assign(k, 0.0);
    t.alias.assign(k, 0);
    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
      scaled[i] = weight[i] * static_cast<double>(k) / t.total;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back(), l = large.back();
      small.pop_back();
      large.pop_back();
      t.prob[s] = scaled[s];
      t.alias[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::uint32_t i : large) t.prob[i] = 1.0;
    for (std::uint32_t i : small) t.prob[i] = 1.0;
  }
}

template <class R>
Vertex WalkEngine::step(Vertex u, R& rng) const {
  const Table& t = tables_[u];
  if (t.target.empty()) return u;
  if (config_.lazy && rng.coin()) return u;
  if (!t.cumulative.empty()) {
    const double r = rng.uniform() * t.total;
    for (std::size_t i = 0; i < t.cumulative.size(); ++i)
      if (r < t.cumulative[i]) return t.target[i];
    return t.target.back();
  }
  const std::size_t i = rng.below(t.target.size());
  return rng.uniform() < t.prob[i] ? t.target[i] : t.target[t.alias[i]];
}

TrialResult WalkEngine::simulate(Vertex start, std::uint64_t seed, std::uint64_t trial_index) const {
  if (start >= n_) throw OutOfRange("start vertex out of range");
  Rng rng(seed, trial_index);
  TrialResult r;
  r.visits.assign(n_, 0);
  r.visits[start] = 1;
  const StopCriterion& stop = config_.stop;
  const std::uint64_t budget = config_.budget;
  std::uint64_t t = 0;
  Vertex x = start;

  switch (stop.kind) {
    case StopKind::cover:
    case StopKind::blanket: {
      std::size_t unvisited = n_ - 1;
      // Vertices ordered by N_v / pi_v; the blanket condition
      // N_v(t) > delta pi_v t holds for all v iff it holds for the first.
      std::set<std::pair<double, Vertex>> order;
      const bool blanket = stop.kind == StopKind::blanket;
      if (blanket)
        for (Vertex v = 0; v < n_; ++v) order.emplace(r.visits[v] / pi_[v], v);
      auto done = [&] {
        if (unvisited > 0) return false;
        if (!blanket) return true;
        const Vertex v = order.begin()->second;
        return stop.delta * pi_[v] * static_cast<double>(t) < static_cast<double>(r.visits[v]);
      };
      while (!done()) {
        if (t == budget) {
          r.censored = true;
          break;
        }
        x = step(x, rng);
        ++t;
        if (blanket) order.erase({r.visits[x] / pi_[x], x});
        if (r.visits[x]++ == 0) --unvisited;
        if (blanket) order.emplace(r.visits[x] / pi_[x], x);
      }
      break;
    }
    case StopKind::hit: {
      while (x != stop.target) {
        if (t == budget) {
          r.censored = true;
          break;
        }
        x = step(x, rng);
        ++t;
        ++r.visits[x];
      }
      break;
    }
    case StopKind::blanket_cover: {
      std::size_t remaining = 0;
      auto satisfied = [&](Vertex v) {
        return static_cast<double>(r.visits[v]) >= pi_[v] * stop.reference_cover;
      };
      for (Vertex v = 0; v < n_; ++v)
        if (!satisfied(v)) ++remaining;
      while (remaining > 0) {
        if (t == budget) {
          r.censored = true;
          break;
        }
        x = step(x, rng);
        ++t;
        const bool before = satisfied(x);
        ++r.visits[x];
        if (!before && satisfied(x)) --remaining;
      }
      break;
    }
    case StopKind::budget: {
      while (t < budget) {
        x = step(x, rng);
        ++t;
        ++r.visits[x];
      }
      break;
    }
  }
  r.steps = t;
  return r;
}

double EstimateRecord::standard_error() const {
  const std::uint64_t done = trials - censored;
  return done > 0 ? std::sqrt(variance / static_cast<double>(done)) : 0.0;
}

EstimateRecord estimate(const Graph& g, const WalkConfig& config, Vertex start, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (start >= g.num_vertices()) throw OutOfRange("start vertex out of range");
  const WalkEngine engine(g, config);

  std::vector<std::uint64_t> steps(trials);
  std::vector<char> censored(trials, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) {
      TrialResult r = engine.simulate(start, seed, i);
      steps[i] = r.steps;
      censored[i] = r.censored;
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  EstimateRecord rec;
  rec.quantity = config.stop.id();
  rec.scheme = config.scheme ? to_string(*config.scheme) : "given";
  rec.start = std::to_string(start);
  rec.trials = trials;
  rec.seed = seed;
  // Welford in trial order.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    if (censored[i]) {
      ++rec.censored;
      continue;
    }
    ++count;
    const double x = static_cast<double>(steps[i]);
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  rec.mean = count ? mean : std::nan("");
  rec.variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  return rec;
}

EstimateRecord estimate_cover(const Graph& g, WalkConfig config, Vertex start, std::uint64_t trials,
                              std::uint64_t seed, unsigned workers) {
  config.stop = StopCriterion::cover();
  return estimate(g, config, start, trials, seed, workers);
}

EstimateRecord estimate_hitting(const Graph& g, WalkConfig config, Vertex start, Vertex target,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  config.stop = StopCriterion::hit(target);
  return estimate(g, config, start, trials, seed, workers);
}

EstimateRecord estimate_blanket(const Graph& g, WalkConfig config, Vertex start, double delta,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  config.stop = StopCriterion::blanket(delta);
  return estimate(g, config, start, trials, seed, workers);
}

EstimateRecord worst_case_sweep(const Graph& g, const WalkConfig& config, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers) {
  if (g.num_vertices() == 0) throw ParameterError("empty graph");
  EstimateRecord best;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    EstimateRecord r = estimate(g, config, v, trials, derive_seed(seed, v), workers);
    if (v == 0 || r.mean > best.mean) {
      best = r;
      best.start = "worst:" + std::to_string(v);
    }
  }
  best.seed = seed;
  return best;
}

StConnectivityResult st_connectivity(const Graph& g, Vertex s, Vertex t, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (s >= n || t >= n) throw OutOfRange("vertex out of range");
  if (s == t) return {true, 0};
  WalkConfig config;
  config.stop = StopCriterion::hit(t);
  config.budget = 8ull * n * g.num_edges();
  const TrialResult r = WalkEngine(g, config).simulate(s, seed, 0);
  return {!r.censored, r.steps};
}

void write_estimate_header(std::ostream& out) {
  out << "quantity,graph_id,scheme,start,trials,seed,mean,stderr,censored\n";
}

void write_estimate_row(std::ostream& out, const EstimateRecord& r) {
  out << r.quantity << ',' << r.graph_id << ',' << r.scheme << ',' << r.start << ',' << r.trials << ','
      << r.seed << ',' << format_double(r.mean) << ',' << format_double(r.standard_error()) << ','
      << r.censored << '\n';
}

}  // namespace rwlab
