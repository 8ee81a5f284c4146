#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/product.hpp"

using namespace rwlab;

namespace {

std::vector<Vertex> random_subset(std::size_t n, Rng& rng) {
  std::vector<Vertex> S;
  for (Vertex v = 0; v < n; ++v)
    if (rng.coin()) S.push_back(v);
  if (S.empty()) S.push_back(rng.below(n));
  return S;
}

}  // namespace

TEST_CASE("observing the whole graph changes nothing") {
  const Graph g = lollipop_graph(8);
  std::vector<Vertex> all(8);
  for (Vertex v = 0; v < 8; ++v) all[v] = v;
  const LocalObservation loc = local_observation(g, all);
  CHECK(loc.graph == g);
  CHECK(loc.boundary.empty());
  for (EdgeTag t : loc.tags) CHECK(t == EdgeTag::interior);
}

TEST_CASE("observing two vertices of a path") {
  const std::vector<Vertex> S{0, 1};
  const LocalObservation loc = local_observation(path_graph(3), S);
  REQUIRE(loc.graph.num_edges() == 2);
  CHECK(loc.tags[1] == EdgeTag::exterior);
  CHECK(loc.graph.edge(1).u == 1);
  CHECK(loc.graph.edge(1).v == 1);
  CHECK(loc.conductance[1] == doctest::Approx(1.0));
  CHECK(loc.graph.conductance(1) == doctest::Approx(2.0));
  CHECK(loc.boundary == std::vector<Vertex>{1});
}

TEST_CASE("observing three vertices of the 4-cycle") {
  const std::vector<Vertex> S{0, 1, 2};
  const LocalObservation loc = local_observation(cycle_graph(4), S);
  // The excursion through vertex 3 returns to its start half the time, so the
  // exterior conductance 1 at each boundary vertex splits into an edge (0,2)
  // of conductance 1/2 and a loop of conductance 1/2.
  std::size_t loops = 0, crossings = 0;
  for (std::size_t id = 0; id < loc.graph.num_edges(); ++id) {
    if (loc.tags[id] != EdgeTag::exterior) continue;
    const Edge& e = loc.graph.edge(id);
    CHECK(loc.conductance[id] == doctest::Approx(0.5));
    if (e.u == e.v) {
      ++loops;
      CHECK((e.u == 0 || e.u == 2));
    } else {
      ++crossings;
      CHECK(std::min(e.u, e.v) == 0);
      CHECK(std::max(e.u, e.v) == 2);
    }
  }
  CHECK(loops == 2);
  CHECK(crossings == 1);
  CHECK(loc.graph.conductance(0) == doctest::Approx(2.0));

  // Watch a simulated walk on Z_4 only while it sits on S.
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(3, 3);
  Rng rng(77);
  Vertex at = 0, last_seen = 0;
  std::size_t observed = 0;
  while (observed < 1'000'000) {
    at = rng.coin() ? (at + 1) % 4 : (at + 3) % 4;
    if (at == 3) continue;
    counts(last_seen, at) += 1.0;
    last_seen = at;
    ++observed;
  }
  const Eigen::MatrixXd P = build_kernel(loc.graph).P;
  for (int i = 0; i < 3; ++i) {
    counts.row(i) /= counts.row(i).sum();
    for (int j = 0; j < 3; ++j) CHECK(std::abs(counts(i, j) - P(i, j)) <= 0.01);
  }
}

TEST_CASE("observed kernels match the censored chain and conserve conductance") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    const Graph g = testing_support::random_graph(401, i, 2, 30);
    Rng rng(401, 1000 + i);
    const auto S = random_subset(g.num_vertices(), rng);
    const LocalObservation loc = local_observation(g, S);
    const Eigen::MatrixXd expected = oracle::censored_kernel(oracle::transition_matrix(g), S);
    const Eigen::MatrixXd actual = build_kernel(loc.graph).P;
    CHECK((actual - expected).cwiseAbs().maxCoeff() <= 1e-8);
    for (std::size_t h = 0; h < S.size(); ++h)
      CHECK(std::abs(loc.graph.conductance(h) - static_cast<double>(g.degree(S[h]))) <= 1e-9);
    for (std::size_t id = 0; id < loc.graph.num_edges(); ++id)
      if (loc.tags[id] == EdgeTag::interior) CHECK(loc.graph.edge(id).weight == 1.0);
  }
}

TEST_CASE("the excursion series gives the same observed kernel") {
  for (std::uint64_t i = 0; i < 15; ++i) {
    const Graph g = testing_support::random_graph(411, i, 3, 9);
    Rng rng(411, 1000 + i);
    const auto S = random_subset(g.num_vertices(), rng);
    const Eigen::MatrixXd series = oracle::censored_kernel_by_paths(oracle::transition_matrix(g), S);
    CHECK((build_kernel(local_observation(g, S).graph).P - series).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("local observation errors and output") {
  const std::vector<Vertex> none;
  CHECK_THROWS_AS(local_observation(path_graph(3), none), ParameterError);
  const std::vector<Vertex> far{7};
  CHECK_THROWS_AS(local_observation(path_graph(3), far), OutOfRange);
  const std::vector<Vertex> S{0, 1};
  std::ostringstream os;
  write_local_observation(os, local_observation(path_graph(3), S));
  CHECK(os.str() == "2 2\n0 1 1 interior\n1 1 0.5 exterior\n");
}

namespace {

void check_block_invariants(const Graph& h, const BlockDecomposition& bd) {
  std::vector<bool> covered(h.num_vertices(), false);
  for (const auto& block : bd.blocks) {
    CHECK(block.size() >= std::min(bd.k, h.num_vertices()));
    const Graph sub = induced_subgraph(h, block);
    CHECK(sub.is_connected());
    CHECK(diameter(sub) <= 4 * bd.k);
    for (Vertex v : block) covered[v] = true;
  }
  for (bool c : covered) CHECK(c);
}

}  // namespace

TEST_CASE("block decompositions") {
  const BlockDecomposition z = block_decomposition(cycle_graph(12), 3);
  check_block_invariants(cycle_graph(12), z);
  REQUIRE(z.blocks.size() == 3);
  CHECK(z.blocks[0] == std::vector<Vertex>{0, 1, 2, 3, 9, 10, 11});
  CHECK(z.blocks[1] == std::vector<Vertex>{3, 4, 5, 6});
  CHECK(z.blocks[2] == std::vector<Vertex>{6, 7, 8});

  const BlockDecomposition p = block_decomposition(path_graph(10), 4);
  CHECK(p.blocks[0] == std::vector<Vertex>{0, 1, 2, 3, 4});
  check_block_invariants(path_graph(10), p);

  const BlockDecomposition single = block_decomposition(path_graph(5), 9);
  REQUIRE(single.blocks.size() == 1);
  CHECK(single.blocks[0].size() == 5);

  for (std::uint64_t i = 0; i < 30; ++i) {
    const Graph h = testing_support::random_graph(421, i, 2, 60);
    for (std::size_t k : {1, 2, 3, 5}) check_block_invariants(h, block_decomposition(h, k));
  }
  CHECK_THROWS_AS(block_decomposition(path_graph(4), 0), ParameterError);
  CHECK_THROWS_AS(block_decomposition(Graph(4, {{0, 1}, {2, 3}}), 1), ParameterError);
}

TEST_CASE("product cover bounds") {
  for (std::size_t n : {4, 8, 16}) {
    const double cov = n * (n - 1) / 2.0;
    const TheoremMainBounds b = theorem_main_bounds(cycle_graph(n), cycle_graph(n), cov, cov);
    CHECK(b.lower == doctest::Approx(static_cast<double>(n * (n - 1))));
    CHECK(b.upper_condition);
    CHECK(b.upper_over_K.has_value());
    CHECK(b.product_edges == 2 * n * n);
    CHECK(b.diameter_g == n / 2);
  }
  // G much longer than H: n_H < D_G + 1 withholds the upper expression.
  const TheoremMainBounds w = theorem_main_bounds(path_graph(20), path_graph(3), 5.0, 5.0);
  CHECK_FALSE(w.upper_condition);
  CHECK_FALSE(w.upper_over_K.has_value());
  const TheoremMainBounds both = theorem_main_bounds(path_graph(4), cycle_graph(16), 120.0, 120.0, 9.0);
  CHECK(both.lower == doctest::Approx(180.0));
}

TEST_CASE("product exact cover dominates the lower bound") {
  const Graph g = path_graph(2), h = cycle_graph(5);
  const auto cover = exact_cover_times(build_kernel(cartesian_product(g, h)));
  const TheoremMainBounds b = theorem_main_bounds(g, h, 10.0, 10.0, 1.0);
  for (double c : cover) CHECK(b.lower <= c);
}

TEST_CASE("product resistance monitors") {
  const ProductResistanceReport sq = product_resistance_monitor(path_graph(2), path_graph(2));
  CHECK(sq.r_max == doctest::Approx(1.0));
  const ProductResistanceReport z8 = product_resistance_monitor(cycle_graph(8), cycle_graph(8));
  REQUIRE(z8.ratio.has_value());
  CHECK(*z8.ratio > 0.0);
  CHECK_THROWS_AS(product_resistance_monitor(cycle_graph(60), cycle_graph(60)), SizeError);

  for (const Graph& tree : {star_graph(5), binary_tree_graph(6), path_graph(6)}) {
    const TreeProductReport t = tree_product_monitor(cycle_graph(6), tree);
    CHECK(t.ratio < 4.0);
  }
  CHECK_THROWS_AS(tree_product_monitor(cycle_graph(4), cycle_graph(4)), UnsupportedInput);
}
