#include <doctest.h>

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "rwlab/conductance.hpp"
#include "rwlab/config_model.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/markov.hpp"

using namespace rwlab;

TEST_CASE("exact conductance of small families") {
  const ConductanceResult k4 = conductance_exact(complete_graph(4));
  CHECK(k4.phi == doctest::Approx(2.0 / 3.0));
  CHECK(k4.subset.size() == 2);
  for (std::size_t n = 4; n <= 12; n += 2) {
    const ConductanceResult z = conductance_exact(cycle_graph(n));
    CHECK(z.phi == doctest::Approx(2.0 / static_cast<double>(n)));
  }
  CHECK(conductance_exact(path_graph(2)).phi == doctest::Approx(1.0));
  CHECK_THROWS_AS(conductance_exact(path_graph(23)), SizeError);
  CHECK_THROWS(conductance_exact(path_graph(1)));
  const auto j = nlohmann::json::parse(k4.to_json());
  CHECK(j["method"] == "exact-enumeration");
}

TEST_CASE("Gray-code enumeration agrees with a plain subset loop") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Graph g = testing_support::random_graph(301, i, 2, 11, true, true);
    for (bool lazy : {false, true}) {
      const TransitionKernel k = build_kernel(g, lazy);
      const ConductanceResult r = conductance_exact(k);
      CHECK(r.phi == doctest::Approx(oracle::conductance(k.P)).epsilon(1e-10));
      CHECK(r.phi > 0.0);
      CHECK(r.phi <= 1.0 + 1e-12);
      const auto pi = stationary(k);
      double mass = 0.0;
      for (Vertex v : r.subset) mass += pi[v];
      CHECK(mass <= 0.5 + 1e-12);
      CHECK(cut_ratio(k, r.subset) == doctest::Approx(r.phi));
    }
  }
}

TEST_CASE("exact conductance is invariant under relabelling") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Graph g = testing_support::random_graph(311, i, 3, 12, false, true);
    std::vector<Vertex> perm(g.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(311, 100 + i);
    rng.shuffle(perm);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
    const Graph relabelled(g.num_vertices(), edges);
    CHECK(conductance_exact(relabelled).phi == doctest::Approx(conductance_exact(g).phi).epsilon(1e-12));
  }
}

TEST_CASE("sweep cuts bound the conductance from above") {
  CHECK(conductance_sweep(cycle_graph(12)).phi == doctest::Approx(2.0 / 12.0));
  for (std::size_t n = 3; n <= 10; ++n)
    CHECK(conductance_sweep(complete_graph(n)).phi >= conductance_exact(complete_graph(n)).phi - 1e-12);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Graph g = testing_support::random_graph(321, i, 2, 16, true, true);
    const ConductanceResult s = conductance_sweep(g);
    CHECK(s.method == ConductanceMethod::sweep_upper_bound);
    CHECK(s.phi >= conductance_exact(g).phi - 1e-12);
  }
  const Graph big = sample_simple(regular_sequence(100, 3), 7).graph;
  if (big.is_connected()) CHECK(conductance_sweep(big).phi > 0.01);
}

TEST_CASE("spectral sandwich on lazy chains") {
  const SandwichMargins k4 = jerrum_sinclair_check(complete_graph(4));
  CHECK(k4.phi == doctest::Approx(1.0 / 3.0));
  CHECK(k4.lower >= 0.0);
  CHECK(k4.upper >= 0.0);

  // Lazy single edge: eigenvalues 1 and 0, and the only cut has ratio 1/2.
  const SandwichMargins p2 = jerrum_sinclair_check(path_graph(2));
  CHECK(p2.phi == doctest::Approx(0.5));
  CHECK(p2.gap == doctest::Approx(1.0));
  CHECK(p2.lower == doctest::Approx(7.0 / 8.0));
  CHECK(p2.upper == doctest::Approx(0.0));

  CHECK(jerrum_sinclair_check(cycle_graph(8)).lower >= -1e-9);
  for (std::uint64_t i = 0; i < 60; ++i) {
    const Graph g = testing_support::random_graph(331, i, 2, 8, true, true);
    const SandwichMargins m = jerrum_sinclair_check(g);
    CHECK(m.lower >= -1e-9);
    CHECK(m.upper >= -1e-9);
  }
}

TEST_CASE("mixing bound from conductance") {
  for (const Graph& g : {complete_graph(8), cycle_graph(16), lollipop_graph(10)}) {
    const TransitionKernel lazy = build_kernel(g, true);
    const double phi = conductance_exact(lazy).phi;
    CHECK(mixing_from_conductance(lazy, phi) >= mixing_time(lazy));
  }
  // With conductance near one the bound is logarithmic in n.
  const TransitionKernel k = build_kernel(complete_graph(20), true);
  CHECK(mixing_from_conductance(k, 1.0) <= static_cast<std::size_t>(std::ceil(3.0 * std::log(20.0) / std::log(2.0))));
  CHECK_THROWS_AS(mixing_from_conductance(k, 0.0), ParameterError);
}
