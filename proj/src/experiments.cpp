#include "rwlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "rwlab/conductance.hpp"
#include "rwlab/config_model.hpp"
#include "rwlab/electrical.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/graph_io.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/numeric.hpp"
#include "rwlab/product.hpp"
#include "rwlab/random.hpp"
#include "rwlab/walk.hpp"
#include "rwlab/weighting.hpp"

namespace rwlab {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string param(const ExperimentSpec& spec, const std::string& key, const std::string& fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

std::size_t size_param(const ExperimentSpec& spec, const std::string& key, std::size_t fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  auto values = parse_size_list(it->second);
  if (values.size() != 1) throw ParameterError("--" + key + " takes a single integer");
  return values.front();
}

double rel_error(double observed, double expected) {
  return std::abs(observed - expected) / std::max(std::abs(expected), 1e-300);
}

Check at_most(std::string name, double observed, double limit, double tolerance = 0.0) {
  return {std::move(name), observed <= limit + tolerance, observed, limit, tolerance};
}

Check at_least(std::string name, double observed, double limit, double tolerance = 0.0) {
  return {std::move(name), observed >= limit - tolerance, observed, limit, tolerance};
}

std::string csv_preamble(const ExperimentSpec& spec) {
  return "# experiment=" + spec.id + " seed=" + std::to_string(spec.seed) + " spec=" + spec.to_json().dump() + "\n";
}

std::uint64_t trials_or(const ExperimentSpec& spec, std::uint64_t fallback) {
  return spec.trials.value_or(fallback);
}

// ---------------------------------------------------------------------------
// closed-forms

double path_cover_formula(std::size_t n) {
  const double m = static_cast<double>(n - 1);
  return n % 2 == 1 ? 5.0 * m * m / 4.0 : 5.0 * m * m / 4.0 - 0.25;
}

ExperimentResult closed_forms(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "family,n,quantity,observed,expected,rel_error\n";
  const auto sizes = parse_size_list(param(spec, "n", "2..10"));
  auto emit = [&](const std::string& family, std::size_t n, const std::string& quantity, double observed,
                  double expected, double err) {
    csv << family << ',' << n << ',' << quantity << ',' << fmt(observed) << ',' << fmt(expected) << ','
        << fmt(err) << '\n';
    res.checks.push_back(at_most(family + ":" + std::to_string(n) + " " + quantity, err, 0.0, 1e-9));
  };
  for (std::size_t n : sizes) {
    if (n < 2) throw ParameterError("closed forms need n >= 2");
    const double nd = static_cast<double>(n);
    {
      const TransitionKernel k = build_kernel(complete_graph(n));
      const auto cover = exact_cover_times(k);
      const double expected = (nd - 1.0) * harmonic_number(n - 1);
      double worst = 0.0, observed = 0.0;
      for (double c : cover)
        if (rel_error(c, expected) >= worst) worst = rel_error(c, expected), observed = c;
      emit("complete", n, "cover", observed, expected, worst);
      const Eigen::MatrixXd H = exact_hitting(k);
      worst = 0.0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (u != v) worst = std::max(worst, rel_error(H(u, v), nd - 1.0));
      emit("complete", n, "hitting", H(0, 1), nd - 1.0, worst);
    }
    {
      const TransitionKernel k = build_kernel(path_graph(n));
      const auto cover = exact_cover_times(k);
      const double observed = *std::max_element(cover.begin(), cover.end());
      const double expected = path_cover_formula(n);
      emit("path", n, "cover", observed, expected, rel_error(observed, expected));
      const Eigen::MatrixXd H = exact_hitting(k);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          worst = std::max(worst, rel_error(H(i, j), static_cast<double>(j * j - i * i)));
      emit("path", n, "hitting", H(0, n - 1), (nd - 1.0) * (nd - 1.0), worst);
    }
    {
      // The 2-cycle is the single edge.
      const Graph z = n >= 3 ? cycle_graph(n) : path_graph(2);
      const TransitionKernel k = build_kernel(z);
      const auto cover = exact_cover_times(k);
      const double expected = nd * (nd - 1.0) / 2.0;
      double worst = 0.0;
      for (double c : cover) worst = std::max(worst, rel_error(c, expected));
      emit("cycle", n, "cover", cover[0], expected, worst);
      const Eigen::MatrixXd H = exact_hitting(k);
      worst = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (u == v) continue;
          const std::size_t d = u > v ? u - v : v - u;
          const double r = static_cast<double>(std::min(d, n - d));
          worst = std::max(worst, rel_error(H(u, v), r * (nd - r)));
        }
      }
      emit("cycle", n, "hitting", H(0, n / 2), std::floor(nd / 2) * (nd - std::floor(nd / 2)), worst);
    }
  }
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// commute-identity

ExperimentResult commute_identity(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "graph_id,n,m,max_rel_error\n";
  std::vector<std::pair<Graph, std::string>> graphs;
  if (auto g = resolve_graph(spec)) {
    graphs.push_back(*g);
  } else {
    const std::size_t count = size_param(spec, "count", 200);
    const std::size_t nmax = size_param(spec, "nmax", 40);
    if (nmax < 2) throw ParameterError("--nmax must be >= 2");
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng(spec.seed, i);
      const std::size_t n = 2 + rng.below(nmax - 1);
      RandomGraphOptions opt;
      opt.extra_edges = rng.below(2 * n + 1);
      opt.allow_loops = true;
      opt.allow_parallel = true;
      opt.min_weight = 0.25;
      opt.max_weight = 4.0;
      graphs.emplace_back(random_connected_graph(n, opt, rng), "random-" + std::to_string(i));
    }
  }
  double worst_all = 0.0;
  for (const auto& [g, id] : graphs) {
    const Eigen::MatrixXd H = exact_hitting(build_kernel(g));
    const ResistanceMatrix R = resistance_matrix(g);
    double worst = 0.0;
    for (std::size_t u = 0; u < g.num_vertices(); ++u) {
      for (std::size_t v = u + 1; v < g.num_vertices(); ++v) {
        const double com = H(u, v) + H(v, u);
        worst = std::max(worst, std::abs(com - g.total_conductance() * *R(u, v)) / com);
      }
    }
    if (g.num_vertices() >= 2) {
      const std::size_t v = g.num_vertices() - 1;
      const double com = H(0, v) + H(v, 0);
      worst = std::max(worst, std::abs(com - commute_time(g, 0, v)) / com);
    }
    worst_all = std::max(worst_all, worst);
    csv << id << ',' << g.num_vertices() << ',' << g.num_edges() << ',' << fmt(worst) << '\n';
  }
  res.checks.push_back(at_most("max |COM - c(G) R| / COM", worst_all, 1e-6));
  res.report["graphs"] = graphs.size();
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// bounds-sandwich

std::vector<std::pair<Graph, std::string>> small_graph_suite(std::uint64_t seed) {
  std::vector<std::pair<Graph, std::string>> out;
  auto add = [&](const std::string& f) { out.emplace_back(generate(parse_family(f)), f); };
  for (int n = 2; n <= 13; ++n) add("path:" + std::to_string(n));
  for (int n = 3; n <= 13; ++n) add("cycle:" + std::to_string(n));
  for (int n = 2; n <= 13; ++n) add("complete:" + std::to_string(n));
  for (int n = 2; n <= 12; ++n) add("star:" + std::to_string(n));
  for (int n = 4; n <= 13; ++n) add("lollipop:" + std::to_string(n));
  for (int n = 3; n <= 13; ++n) add("binary-tree:" + std::to_string(n));
  for (const char* f : {"grid2d:2x2", "grid2d:2x3", "grid2d:3x3", "grid2d:3x4", "grid2d:2x6", "torus2d:3x3",
                        "torus2d:3x4"})
    add(f);
  for (std::size_t i = 0; i < 40; ++i) {
    Rng rng(seed, i);
    const std::size_t n = 3 + rng.below(11);
    RandomGraphOptions opt;
    opt.extra_edges = rng.below(2 * n);
    out.emplace_back(random_connected_graph(n, opt, rng), "random-" + std::to_string(i));
  }
  return out;
}

ExperimentResult bounds_sandwich(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec);
  write_bound_header(csv);
  std::vector<std::pair<Graph, std::string>> graphs;
  if (auto g = resolve_graph(spec)) graphs.push_back(*g);
  else graphs = small_graph_suite(spec.seed);

  std::size_t violations = 0;
  json bad = json::array();
  for (const auto& [g, id] : graphs) {
    if (g.num_vertices() > kExactCoverCap) throw ParameterError("bounds-sandwich needs n <= 13");
    const BoundRow row = bound_row(g, id);
    write_bound_row(csv, row);
    const double cover = *row.exact_cover;
    const double sharp = spanning_tree_bound(g).sharp;
    const double upper = std::min({row.matthews_upper, row.merst, sharp});
    const double slack = 1e-9 * cover;
    if (row.matthews_lower > cover + slack || cover > upper + slack) {
      ++violations;
      bad.push_back(id);
    }
  }
  res.checks.push_back(at_most("sandwich violations", static_cast<double>(violations), 0.0));
  res.report["graphs"] = graphs.size();
  res.report["violating_graphs"] = bad;
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// grid-resistance

ExperimentResult grid_resistance(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "k,max_resistance,bound_8h_k,margin\n";
  for (std::size_t k : parse_size_list(param(spec, "k", "2..20"))) {
    const GridResistanceReport r = grid_resistance_monitor(k);
    csv << k << ',' << fmt(r.max_resistance) << ',' << fmt(r.bound) << ',' << fmt(r.bound - r.max_resistance)
        << '\n';
    res.checks.push_back({"k=" + std::to_string(k) + " max R < 8h(k)", r.holds, r.max_resistance, r.bound, 0.0});
  }
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// mc-calibration

std::vector<std::pair<Graph, std::string>> calibration_suite(std::uint64_t seed) {
  std::vector<std::pair<Graph, std::string>> out;
  for (const char* f : {"path:4", "path:7", "path:10", "cycle:4", "cycle:7", "cycle:10", "complete:3",
                        "complete:5", "complete:8", "star:4", "star:7", "grid2d:2x3", "grid2d:3x3", "lollipop:9",
                        "lollipop:10", "binary-tree:7", "binary-tree:10"})
    out.emplace_back(generate(parse_family(f)), f);
  for (std::size_t i = 0; i < 3; ++i) {
    Rng rng(seed, 1000 + i);
    const std::size_t n = 6 + 2 * i;
    RandomGraphOptions opt;
    opt.extra_edges = n;
    out.emplace_back(random_connected_graph(n, opt, rng), "random-" + std::to_string(i));
  }
  return out;
}

ExperimentResult mc_calibration(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::vector<std::pair<Graph, std::string>> graphs;
  if (auto g = resolve_graph(spec)) graphs.push_back(*g);
  else graphs = calibration_suite(spec.seed);
  const std::uint64_t trials = trials_or(spec, 10000);
  const std::size_t retries = size_param(spec, "retries", 2);
  WalkConfig config;
  config.scheme = spec.scheme;
  config.lazy = spec.lazy;

  struct Exact {
    double cover;
    double hitting;
  };
  std::vector<Exact> exact;
  for (const auto& [g, id] : graphs) {
    if (g.num_vertices() > kExactCoverCap) throw ParameterError("mc-calibration needs n <= 13");
    const TransitionKernel k = spec.scheme ? build_kernel(g, *spec.scheme, spec.lazy) : build_kernel(g, spec.lazy);
    exact.push_back({exact_cover_time(k, 0), exact_hitting(k)(0, g.num_vertices() - 1)});
  }

  std::string body;
  double fraction = 0.0;
  std::size_t attempt = 0;
  for (; attempt <= retries; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? spec.seed : derive_seed(spec.seed, 1'000'000 + attempt);
    std::ostringstream csv;
    csv << "graph_id,quantity,exact,mean,stderr,z,within_4sigma\n";
    std::size_t pass = 0, total = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto& [g, id] = graphs[i];
      const std::uint64_t s = derive_seed(seed, i);
      EstimateRecord recs[2] = {estimate_cover(g, config, 0, trials, s, spec.workers),
                                estimate_hitting(g, config, 0, g.num_vertices() - 1, trials, s, spec.workers)};
      const double targets[2] = {exact[i].cover, exact[i].hitting};
      for (int q = 0; q < 2; ++q) {
        const double se = recs[q].standard_error();
        const double z = se > 0 ? (recs[q].mean - targets[q]) / se : (recs[q].mean == targets[q] ? 0.0 : 1e300);
        const bool ok = std::abs(z) <= 4.0 && recs[q].censored == 0;
        pass += ok;
        ++total;
        csv << id << ',' << recs[q].quantity << ',' << fmt(targets[q]) << ',' << fmt(recs[q].mean) << ','
            << fmt(se) << ',' << fmt(z) << ',' << (ok ? 1 : 0) << '\n';
      }
    }
    fraction = static_cast<double>(pass) / static_cast<double>(total);
    body = csv.str();
    if (fraction >= 0.95) break;
  }
  res.checks.push_back(at_least("fraction of estimates within 4 sigma", fraction, 0.95));
  res.report["replications_used"] = std::min(attempt, retries) + 1;
  res.report["trials"] = trials;
  res.csv = csv_preamble(spec) + body;
  return res;
}

// ---------------------------------------------------------------------------
// p-simple

ExperimentResult p_simple(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "sequence,n,nu,predicted,empirical,abs_error\n";
  const std::uint64_t attempts = trials_or(spec, 10000);
  std::vector<std::pair<DegreeSequence, std::string>> seqs;
  if (spec.degseq && spec.degseq->rfind("regular:", 0) != 0) {
    seqs.emplace_back(read_degree_sequence_file(*spec.degseq), *spec.degseq);
  } else {
    std::vector<std::size_t> rs{3, 4};
    if (spec.degseq) rs = parse_size_list(spec.degseq->substr(8));
    if (spec.params.count("regular")) rs = parse_size_list(spec.params.at("regular"));
    for (std::size_t r : rs)
      for (std::size_t n : parse_size_list(param(spec, "n", "50,100")))
        seqs.emplace_back(regular_sequence(n, r), "regular:" + std::to_string(r));
  }
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& [d, id] = seqs[i];
    const double predicted = predicted_p_simple(d);
    const double empirical = empirical_p_simple(d, attempts, derive_seed(spec.seed, i));
    const double err = std::abs(empirical - predicted);
    csv << id << ',' << d.n() << ',' << fmt(nu(d)) << ',' << fmt(predicted) << ',' << fmt(empirical) << ','
        << fmt(err) << '\n';
    res.checks.push_back(at_most(id + " n=" + std::to_string(d.n()) + " |empirical - predicted|", err, 0.03));
  }
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// conductance-survey

DegreeSequence mixed_sequence(std::size_t n, std::size_t lo, std::size_t hi, Rng& rng) {
  std::vector<std::size_t> d(n);
  for (auto& x : d) x = lo + rng.below(hi - lo + 1);
  std::size_t sum = 0;
  for (auto x : d) sum += x;
  if (sum % 2 == 1) {
    for (auto& x : d) {
      if (x < hi) {
        ++x;
        break;
      }
    }
  }
  return DegreeSequence(std::move(d));
}

// Simple and connected: attempts j = 0, 1, ... of sample_simple until connected.
Graph sample_connected_simple(const DegreeSequence& d, std::uint64_t seed) {
  for (std::uint64_t j = 0;; ++j) {
    Graph g = sample_simple(d, derive_seed(seed, j)).graph;
    if (g.is_connected()) return g;
    if (j > 10000) throw NumericError("could not sample a connected simple graph");
  }
}

ExperimentResult conductance_survey(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "part,graph_id,n,phi,method,lambda2_gap,margin_lower,margin_upper\n";

  if (auto given = resolve_graph(spec)) {
    const auto& [g, id] = *given;
    if (g.num_vertices() <= kConductanceCap) {
      const auto exact = conductance_exact(g, spec.scheme, spec.lazy);
      const auto js = jerrum_sinclair_check(g, spec.scheme);
      csv << "given," << id << ',' << g.num_vertices() << ',' << fmt(exact.phi) << ",exact," << fmt(js.gap) << ','
          << fmt(js.lower) << ',' << fmt(js.upper) << '\n';
      res.checks.push_back(at_least("sandwich lower margin", js.lower, 0.0, 1e-9));
      res.checks.push_back(at_least("sandwich upper margin", js.upper, 0.0, 1e-9));
      res.report["argmin"] = exact.subset;
    } else {
      const auto sweep = conductance_sweep(g, spec.scheme, spec.lazy);
      csv << "given," << id << ',' << g.num_vertices() << ',' << fmt(sweep.phi) << ",sweep,,,\n";
    }
    res.csv = csv.str();
    return res;
  }

  // Random simple graphs from mixed degree sequences (degrees 3..6).
  const std::size_t samples = size_param(spec, "samples", 50);
  const std::size_t n = size_param(spec, "n", 20);
  double min_phi = 1.0;
  std::size_t redraws = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    // Redraw the sequence until it passes the niceness conditions.
    Rng rng(spec.seed, i);
    DegreeSequence d = mixed_sequence(n, 3, 6, rng);
    for (std::size_t tries = 0; !check_nice(d).nice(); ++tries, ++redraws) {
      if (tries == 1000) throw NumericError("no nice mixed sequence found");
      d = mixed_sequence(n, 3, 6, rng);
    }
    const Graph g = sample_connected_simple(d, derive_seed(spec.seed, 100000 + i));
    const double phi = conductance_exact(g).phi;
    min_phi = std::min(min_phi, phi);
    csv << "mixed-3-6,sample-" << i << ',' << n << ',' << fmt(phi) << ",exact,,,\n";
  }
  res.checks.push_back({"min exact Phi over mixed-degree samples > 1/100", min_phi > 0.01, min_phi, 0.01, 0.0});
  res.report["mixed_sequence_redraws"] = redraws;

  // Spectral sandwich on random small graphs and on named families.
  const std::size_t js_graphs = size_param(spec, "js-graphs", 500);
  double worst_lower = 1.0, worst_upper = 1.0;
  auto sandwich = [&](const Graph& g, const std::string& id, bool emit) {
    const auto js = jerrum_sinclair_check(g);
    worst_lower = std::min(worst_lower, js.lower);
    worst_upper = std::min(worst_upper, js.upper);
    if (emit)
      csv << "sandwich," << id << ',' << g.num_vertices() << ',' << fmt(js.phi) << ",exact-lazy," << fmt(js.gap)
          << ',' << fmt(js.lower) << ',' << fmt(js.upper) << '\n';
  };
  for (std::size_t i = 0; i < js_graphs; ++i) {
    Rng rng(spec.seed, 200000 + i);
    const std::size_t gn = 2 + rng.below(7);
    RandomGraphOptions opt;
    opt.extra_edges = rng.below(gn * (gn - 1) / 2 + 1);
    sandwich(random_connected_graph(gn, opt, rng), "random-" + std::to_string(i), false);
  }
  for (const char* f : {"path:22", "cycle:22", "complete:22", "star:21", "grid2d:4x5", "torus2d:3x7", "lollipop:22",
                        "binary-tree:22", "complete:4", "cycle:8", "path:2"})
    sandwich(generate(parse_family(f)), f, true);
  res.checks.push_back(at_least("min margin 1 - lambda2 - Phi^2/2", worst_lower, 0.0, 1e-9));
  res.checks.push_back(at_least("min margin 2 Phi - (1 - lambda2)", worst_upper, 0.0, 1e-9));

  // Mixing-time bound from conductance versus exact mixing time.
  std::size_t mixing_violations = 0;
  json mixing = json::array();
  for (const char* f : {"complete:8", "cycle:16", "path:10", "lollipop:12", "grid2d:4x4", "binary-tree:15"}) {
    const TransitionKernel lazy = build_kernel(generate(parse_family(f)), true);
    const double phi = conductance_exact(lazy).phi;
    const std::size_t predicted = mixing_from_conductance(lazy, phi);
    const std::size_t exact = mixing_time(lazy);
    if (predicted < exact) ++mixing_violations;
    mixing.push_back({{"graph", f}, {"phi_lazy", phi}, {"predicted", predicted}, {"exact", exact}});
  }
  res.checks.push_back(at_most("conductance mixing bound under exact mixing time (count)", static_cast<double>(mixing_violations), 0.0));
  res.report["mixing"] = mixing;

  // Sweep upper bounds at larger n: reported only.
  json sweeps = json::array();
  for (std::size_t big : parse_size_list(param(spec, "sweep-n", "100,200"))) {
    const Graph g = sample_connected_simple(regular_sequence(big, 3), derive_seed(spec.seed, 300000 + big));
    const double phi = conductance_sweep(g).phi;
    csv << "sweep,regular-3," << big << ',' << fmt(phi) << ",sweep,,,\n";
    sweeps.push_back({{"n", big}, {"sweep_phi", phi}});
  }
  res.report["sweep_regular3"] = sweeps;
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// degseq-cover

ExperimentResult degseq_cover(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec);
  write_estimate_header(csv);
  const std::uint64_t trials = trials_or(spec, 200);
  WalkConfig config;
  config.scheme = spec.scheme;
  config.lazy = spec.lazy;

  std::vector<std::pair<DegreeSequence, std::string>> seqs;
  if (spec.degseq && spec.degseq->rfind("regular:", 0) != 0) {
    seqs.emplace_back(read_degree_sequence_file(*spec.degseq), *spec.degseq);
  } else {
    std::size_t r = 3;
    if (spec.degseq) r = parse_size_list(spec.degseq->substr(8)).at(0);
    if (spec.params.count("regular")) r = size_param(spec, "regular", 3);
    for (std::size_t n : parse_size_list(param(spec, "n", "500,1000,2000")))
      seqs.emplace_back(regular_sequence(n, r), "regular-" + std::to_string(r) + "-n" + std::to_string(n));
  }
  json rows = json::array();
  std::vector<std::pair<double, double>> ratios;  // (ratio, stderr of ratio)
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& [d, id] = seqs[i];
    const Graph g = sample_connected_simple(d, derive_seed(spec.seed, i));
    EstimateRecord rec = estimate_cover(g, config, 0, trials, derive_seed(spec.seed, 1000 + i), spec.workers);
    rec.graph_id = id;
    write_estimate_row(csv, rec);
    const double predicted = predicted_cover(d);
    const double ratio = rec.mean / predicted;
    ratios.emplace_back(ratio, rec.standard_error() / predicted);
    rows.push_back({{"graph", id}, {"n", d.n()}, {"mean_cover", rec.mean}, {"predicted", predicted},
                    {"ratio", ratio}, {"censored", rec.censored}});
    res.checks.push_back({id + " cover / predicted in [0.8, 1.2]", ratio >= 0.8 && ratio <= 1.2 && rec.censored == 0,
                          ratio, 1.0, 0.2});
  }
  if (ratios.size() >= 2) {
    const auto [first, se_first] = ratios.front();
    const auto [last, se_last] = ratios.back();
    const double noise = 3.0 * std::hypot(se_first, se_last);
    res.checks.push_back({"ratio moves toward 1 from smallest to largest n (3 sigma)",
                          std::abs(last - 1.0) <= std::abs(first - 1.0) + noise, std::abs(last - 1.0),
                          std::abs(first - 1.0), noise});
  }
  res.report["ladder"] = rows;
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// scheme-speedup

ExperimentResult scheme_speedup(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec);
  write_estimate_header(csv);
  const std::uint64_t trials = trials_or(spec, 1000);

  std::optional<std::pair<Graph, std::string>> given = resolve_graph(spec);
  if (!given) {
    // Min-deg invariants on random graphs.
    const std::size_t count = size_param(spec, "count", 100);
    std::size_t hitting_bad = 0, weight_bad = 0, other_bad = 0;
    double worst_hitting_ratio = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng(spec.seed, i);
      const std::size_t n = 2 + rng.below(59);
      RandomGraphOptions opt;
      opt.extra_edges = rng.below(n * (n - 1) / 4 + 1);
      const Graph g = random_connected_graph(n, opt, rng);
      const MindegReport r = mindeg_invariant_report(g, derive_seed(spec.seed, 5000 + i));
      hitting_bad += !r.hitting_ok;
      weight_bad += !r.total_weight_in_range;
      other_bad += !(r.vertex_weights_ok && r.edge_bounds_ok && r.path_sums_ok);
      worst_hitting_ratio = std::max(worst_hitting_ratio, *r.max_hitting / (6.0 * n * n));
    }
    for (const char* f : {"lollipop:60", "lollipop:90", "star:30", "complete:20", "path:40", "grid2d:6x7"}) {
      const MindegReport r = mindeg_invariant_report(generate(parse_family(f)), spec.seed);
      hitting_bad += !r.hitting_ok;
      weight_bad += !r.total_weight_in_range;
      other_bad += !(r.vertex_weights_ok && r.edge_bounds_ok && r.path_sums_ok);
    }
    res.checks.push_back(at_most("min-deg max hitting > 6n^2 (count)", static_cast<double>(hitting_bad), 0.0));
    res.checks.push_back(at_most("w(G) outside [n, 2n] (count)", static_cast<double>(weight_bad), 0.0));
    res.checks.push_back(at_most("vertex/edge/path invariant failures (count)", static_cast<double>(other_bad), 0.0));
    res.report["worst_hitting_over_6n2"] = worst_hitting_ratio;

    const Graph lolli = lollipop_graph(90);
    const Eigen::MatrixXd Hu = exact_hitting(build_kernel(lolli, Scheme::uniform));
    const Eigen::MatrixXd Hm = exact_hitting(build_kernel(lolli, Scheme::mindeg));
    res.report["lollipop90_max_hitting_uniform"] = Hu.maxCoeff();
    res.report["lollipop90_max_hitting_mindeg"] = Hm.maxCoeff();
    given = std::make_pair(lolli, std::string("lollipop:90"));
  }
  const auto& [g, id] = *given;
  SpeedupReport s = speedup(g, trials, spec.seed, 0, spec.workers);
  s.uniform.graph_id = s.mindeg.graph_id = id;
  write_estimate_row(csv, s.uniform);
  write_estimate_row(csv, s.mindeg);
  res.checks.push_back({id + " speedup > 1 at 3 sigma", s.ratio > 1.0 && s.z_score >= 3.0, s.z_score, 3.0, 0.0});
  res.report["speedup_ratio"] = s.ratio;
  res.report["z_score"] = s.z_score;
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// st-connect-demo

ExperimentResult st_connect_demo(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "graph_id,s,t,run,connected,steps,budget\n";
  const std::size_t runs = size_param(spec, "runs", 200);
  Graph g;
  std::string id;
  Vertex s = 0, t = 0;
  if (auto given = resolve_graph(spec)) {
    std::tie(g, id) = *given;
    s = size_param(spec, "s", 0);
    t = size_param(spec, "t", g.num_vertices() - 1);
  } else {
    const std::size_t n = size_param(spec, "path", 32);
    g = path_graph(n);
    id = "path:" + std::to_string(n);
    t = n - 1;
  }
  const std::uint64_t budget = 8ull * g.num_vertices() * g.num_edges();
  std::size_t successes = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto r = st_connectivity(g, s, t, derive_seed(spec.seed, i));
    successes += r.connected;
    csv << id << ',' << s << ',' << t << ',' << i << ',' << (r.connected ? 1 : 0) << ',' << r.steps << ','
        << budget << '\n';
  }
  const double fraction = static_cast<double>(successes) / static_cast<double>(runs);
  const bool reachable = bfs_distances(g, s)[t] != kUnreachable;
  if (reachable) {
    res.checks.push_back(at_least("success fraction", fraction, 0.45));
  } else {
    res.checks.push_back(at_most("success fraction (no path exists)", fraction, 0.0));
  }

  // Two disjoint triangles: never connected, always the full budget.
  const Graph two({6}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const auto r = st_connectivity(two, 0, 3, spec.seed);
  res.checks.push_back({"disjoint triangles report false after 8nm steps", !r.connected && r.steps == 8 * 6 * 6,
                        static_cast<double>(r.steps), 288.0, 0.0});
  res.report["success_fraction"] = fraction;
  res.csv = csv.str();
  return res;
}

// ---------------------------------------------------------------------------
// product-theorem

ExperimentResult product_theorem(const ExperimentSpec& spec) {
  ExperimentResult res;
  std::ostringstream csv;
  csv << csv_preamble(spec) << "table,G,H,N,lower,mc_cover,mc_stderr,upper_over_K,normaliser,ratio\n";
  const std::uint64_t trials = trials_or(spec, 2000);

  auto exact_worst_cover = [](const Graph& g) {
    const auto c = exact_cover_times(build_kernel(g));
    return *std::max_element(c.begin(), c.end());
  };

  std::vector<std::pair<std::string, std::string>> pairs;
  if (spec.product) {
    const auto comma = spec.product->find(',');
    if (comma == std::string::npos) throw ParseError("--product expects A,B");
    pairs.emplace_back(spec.product->substr(0, comma), spec.product->substr(comma + 1));
  } else {
    pairs = {{"cycle:4", "cycle:16"}, {"path:4", "cycle:16"}};
  }

  // Lower bound versus Monte Carlo cover of the product (worst start estimated from vertex 0).
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Graph g = generate(parse_family(pairs[i].first));
    const Graph h = generate(parse_family(pairs[i].second));
    // Closed forms where known, the exact oracle for small graphs, else a
    // worst-start Monte Carlo sweep (biased upward, so reported in the CSV).
    const auto cover_of = [&](const std::string& text, const Graph& x) {
      const GraphFamily f = parse_family(text);
      const double n = static_cast<double>(x.num_vertices());
      if (f.tag == Family::cycle) return n * (n - 1.0) / 2.0;
      if (f.tag == Family::complete) return (n - 1.0) * harmonic_number(x.num_vertices() - 1);
      if (f.tag == Family::path) return path_cover_formula(x.num_vertices());
      if (x.num_vertices() <= kExactCoverCap) return exact_worst_cover(x);
      return worst_case_sweep(x, {}, trials, derive_seed(spec.seed, 50 + i), spec.workers).mean;
    };
    const double cov_h = cover_of(pairs[i].second, h);
    const double cov_g = cover_of(pairs[i].first, g);
    const TheoremMainBounds b = theorem_main_bounds(g, h, cov_h, cov_h, cov_g);
    const Graph f = cartesian_product(g, h);
    const EstimateRecord mc = estimate_cover(f, {}, 0, trials, derive_seed(spec.seed, i), spec.workers);
    const double noise = 3.0 * mc.standard_error();
    csv << "lower," << pairs[i].first << ',' << pairs[i].second << ',' << f.num_vertices() << ',' << fmt(b.lower)
        << ',' << fmt(mc.mean) << ',' << fmt(mc.standard_error()) << ",,," << fmt(b.lower / mc.mean) << '\n';
    res.checks.push_back({"lower bound <= MC cover on " + pairs[i].first + " x " + pairs[i].second,
                          b.lower <= mc.mean + noise && mc.censored == 0, b.lower, mc.mean, noise});
  }

  if (spec.product) {
    res.csv = csv.str();
    return res;
  }

  // Torus monitor: cov / ((1/pi) N ln^2 N).
  const std::uint64_t torus_trials = size_param(spec, "torus-trials", 100);
  json torus = json::array();
  for (std::size_t n : parse_size_list(param(spec, "torus-n", "20,35,50"))) {
    const Graph t = torus_graph(n, n);
    const double N = static_cast<double>(n * n);
    const EstimateRecord mc = estimate_cover(t, {}, 0, torus_trials, derive_seed(spec.seed, 100 + n), spec.workers);
    const double norm = N * std::log(N) * std::log(N) / std::numbers::pi;
    const double ratio = mc.mean / norm;
    csv << "torus-monitor,cycle:" << n << ",cycle:" << n << ',' << n * n << ",," << fmt(mc.mean) << ','
        << fmt(mc.standard_error()) << ",," << fmt(norm) << ',' << fmt(ratio) << '\n';
    torus.push_back({{"n", n}, {"ratio", ratio}});
    res.checks.push_back({"torus n=" + std::to_string(n) + " cover/((1/pi) N ln^2 N) in [0.5, 1.6]",
                          ratio >= 0.5 && ratio <= 1.6 && mc.censored == 0, ratio, 1.05, 0.55});
  }
  res.report["torus_monitor"] = torus;

  if (param(spec, "tables", "1") == "0") {
    res.csv = csv.str();
    return res;
  }

  // Upper-bound expression (divided by the unknown constant K), reported only.
  const std::uint64_t bcov_trials = size_param(spec, "bcov-trials", 5);
  auto upper_row = [&](const std::string& table, std::size_t p, std::size_t q, double normaliser, json& sink) {
    const Graph g = cycle_graph(p);
    const Graph h = cycle_graph(q);
    const double cov_h = static_cast<double>(q) * static_cast<double>(q - 1) / 2.0;
    WalkConfig bc;
    bc.stop = StopCriterion::blanket_cover(cov_h);
    const EstimateRecord bcov = estimate(h, bc, 0, bcov_trials, derive_seed(spec.seed, 7000 + q), spec.workers);
    const TheoremMainBounds b = theorem_main_bounds(g, h, cov_h, bcov.mean);
    const double upper = b.upper_over_K.value_or(std::nan(""));
    csv << table << ",cycle:" << p << ",cycle:" << q << ',' << p * q << ',' << fmt(b.lower) << ",,,"
        << fmt(upper) << ',' << fmt(normaliser) << ',' << fmt(upper / normaliser) << '\n';
    sink.push_back({{"p", p}, {"q", q}, {"upper_over_K", upper}, {"ratio", upper / normaliser},
                    {"bcov_over_cov_H", bcov.mean / cov_h}});
  };
  json torus_upper = json::array();
  for (std::size_t n : {8, 16, 32}) {
    const double N = static_cast<double>(n * n);
    upper_row("torus-upper", n, n, N * std::pow(std::log(N), 4), torus_upper);
  }
  json toroid = json::array();
  for (std::size_t q : parse_size_list(param(spec, "toroid-q", "64,256,1024"))) {
    upper_row("toroid-upper", 8, q, static_cast<double>(q) * static_cast<double>(q), toroid);
  }
  res.report["torus_upper_over_N_ln4N"] = torus_upper;
  res.report["toroid_upper_over_q2"] = toroid;

  // Product resistance monitor, reported only.
  json resistance = json::array();
  for (std::size_t n : {4, 6, 8}) {
    const auto r = product_resistance_monitor(cycle_graph(n), cycle_graph(n));
    resistance.push_back({{"n", n}, {"r_max", r.r_max}, {"ratio", r.ratio.value_or(std::nan(""))}});
  }
  res.report["product_resistance"] = resistance;
  res.csv = csv.str();
  return res;
}

struct Entry {
  const char* id;
  ExperimentResult (*run)(const ExperimentSpec&);
  const char* description;
};

const Entry kExperiments[] = {
    {"closed-forms", closed_forms,
     "Exact cover and hitting times of K_n, P_n and Z_n from the dense oracles versus the closed forms\n"
     "  K_n: cover (n-1)h(n-1), hitting n-1\n"
     "  P_n: worst cover 5(n-1)^2/4 (odd n) or 5(n-1)^2/4 - 1/4 (even n), H[i][j] = j^2 - i^2 for i < j\n"
     "  Z_n: cover n(n-1)/2, hitting r(n-r) at ring distance r (Z_2 is the single edge)\n"
     "Inputs: --n RANGE (default 2..10). Pass: every relative error <= 1e-9."},
    {"bounds-sandwich", bounds_sandwich,
     "Exact cover time against the Matthews lower bound (best set of size <= 12), the Matthews upper\n"
     "bound max H * h(n), the minimum effective-resistance spanning tree bound c(G) w(T*), and the\n"
     "spanning-tree bound 2m(2n-2).\n"
     "Inputs: a graph (--family/--graph-file/--product, n <= 13) or the built-in suite. Pass: zero violations."},
    {"commute-identity", commute_identity,
     "Commute time H[u][v] + H[v][u] against c(G) R(u,v) on random connected weighted multigraphs.\n"
     "Inputs: --count (200), --nmax (40), or a single graph. Pass: max relative error <= 1e-6."},
    {"grid-resistance", grid_resistance,
     "Largest effective resistance on the k x k grid against 8 h(k).\n"
     "Inputs: --k RANGE (default 2..20). Pass: max R < 8 h(k) for every k."},
    {"product-theorem", product_theorem,
     "Cartesian-product cover bounds. Lower bound (1 + delta_G/Delta_H) cov[H] (or the symmetric term)\n"
     "against Monte Carlo cover of G x H; torus cover against (1/pi) N ln^2 N; the upper-bound\n"
     "expression (without its constant K) on tori and thin toroids, reported against N ln^4 N and q^2.\n"
     "Inputs: --product A,B or defaults Z_4 x Z_16 and P_4 x Z_16; --trials, --torus-n, --torus-trials,\n"
     "--toroid-q, --bcov-trials, --tables 0|1. Pass: lower <= MC + 3 stderr; torus ratios in [0.5, 1.6]."},
    {"degseq-cover", degseq_cover,
     "Monte Carlo cover time of uniform random simple graphs with a given degree sequence against\n"
     "(d-1)/(d-2) (theta/d) n ln n (d = effective minimum degree, theta = average degree).\n"
     "Inputs: --degseq FILE|regular:r or --regular r, --n LIST (500,1000,2000), --trials (200).\n"
     "Pass: ratio in [0.8, 1.2] for every n and no farther from 1 at the largest n (3 sigma)."},
    {"conductance-survey", conductance_survey,
     "Exact conductance of random simple graphs with degrees 3..6 (n = 20, 50 samples) against 1/100;\n"
     "spectral sandwich Phi^2/2 <= 1 - lambda_2 <= 2 Phi on the lazy chain for 500 random graphs with\n"
     "n <= 8 and named families with n <= 22; mixing-time bound from conductance versus exact mixing;\n"
     "sweep-cut upper bounds for random 3-regular graphs (reported).\n"
     "Pass: every Phi > 1/100, both margins >= -1e-9, conductance bound >= exact mixing time."},
    {"p-simple", p_simple,
     "Fraction of configuration-model samples that are simple against exp(-nu/2 - nu^2/4),\n"
     "nu = sum d_i (d_i - 1) / 2m.\n"
     "Inputs: --degseq FILE|regular:r, --regular LIST (3,4), --n LIST (50,100), --trials (10000).\n"
     "Pass: absolute error <= 0.03."},
    {"scheme-speedup", scheme_speedup,
     "Min-degree weighting w(u,v) = 1/min(d(u), d(v)): exact max hitting time <= 6n^2 on 100 random\n"
     "connected graphs (n <= 60), n <= w(G) <= 2n, edge and shortest-path degree-sum invariants, and the\n"
     "cover-time speedup over the simple walk on lollipop(90).\n"
     "Inputs: --count (100), --trials (1000), or a graph. Pass: zero violations; speedup > 1 with z >= 3."},
    {"st-connect-demo", st_connect_demo,
     "Random-walk s-t connectivity with a budget of 8nm steps; a 'false' verdict is wrong with\n"
     "probability at most 1/2.\n"
     "Inputs: --path n (32) or a graph with --s/--t, --runs (200). Pass: success fraction >= 0.45 when\n"
     "a path exists; disjoint triangles report false after exactly 8nm steps."},
    {"mc-calibration", mc_calibration,
     "Monte Carlo cover and hitting estimates against the exact oracles on 20 graphs with n <= 10.\n"
     "Inputs: --trials (10000), --retries (2), --scheme, --lazy, or a graph.\n"
     "Pass: at least 95% of estimates within 4 standard errors (a failed replication is rerun with a\n"
     "derived seed, at most --retries times)."},
};

const Entry& find_entry(const std::string& id) {
  for (const Entry& e : kExperiments)
    if (id == e.id) return e;
  throw ParameterError("unknown experiment '" + id + "'");
}

}  // namespace

nlohmann::ordered_json ExperimentSpec::to_json() const {
  json j;
  j["id"] = id;
  j["graph_file"] = graph_file ? json(*graph_file) : json(nullptr);
  j["family"] = family ? json(*family) : json(nullptr);
  j["product"] = product ? json(*product) : json(nullptr);
  j["degseq"] = degseq ? json(*degseq) : json(nullptr);
  j["scheme"] = scheme ? json(to_string(*scheme)) : json(nullptr);
  j["lazy"] = lazy;
  j["trials"] = trials ? json(*trials) : json(nullptr);
  j["seed"] = seed;
  j["format"] = format;
  j["params"] = params;
  return j;
}

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const Entry& e : kExperiments) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

std::string describe(const std::string& id) {
  const Entry& e = find_entry(id);
  return std::string(e.id) + "\n" + e.description + "\n";
}

ExperimentResult run_experiment(const ExperimentSpec& spec) { return find_entry(spec.id).run(spec); }

std::optional<std::pair<Graph, std::string>> resolve_graph(const ExperimentSpec& spec) {
  const int sources = (spec.graph_file ? 1 : 0) + (spec.family ? 1 : 0) + (spec.product ? 1 : 0);
  if (sources > 1) throw ParameterError("give at most one of --graph-file, --family, --product");
  if (spec.graph_file) return std::make_pair(read_graph_file(*spec.graph_file), std::string("file"));
  if (spec.family) {
    const GraphFamily f = parse_family(*spec.family);
    return std::make_pair(generate(f), to_string(f));
  }
  if (spec.product) {
    const auto comma = spec.product->find(',');
    if (comma == std::string::npos) throw ParseError("--product expects A,B");
    const GraphFamily a = parse_family(spec.product->substr(0, comma));
    const GraphFamily b = parse_family(spec.product->substr(comma + 1));
    return std::make_pair(cartesian_product(generate(a), generate(b)), to_string(a) + "*" + to_string(b));
  }
  return std::nullopt;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw ParseError("expected an integer, got '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::size_t lo = number(text.substr(0, dots));
    const std::size_t hi = number(text.substr(dots + 2));
    if (lo > hi) throw ParseError("empty range '" + text + "'");
    for (std::size_t x = lo; x <= hi; ++x) out.push_back(x);
    return out;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(number(item));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

}  // namespace rwlab
