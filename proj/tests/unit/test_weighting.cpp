#include <doctest.h>

#include <cmath>

#include "../support/helpers.hpp"
#include "rwlab/conductance.hpp"
#include "rwlab/config_model.hpp"
#include "rwlab/electrical.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/numeric.hpp"
#include "rwlab/weighting.hpp"

using namespace rwlab;

TEST_CASE("scheme weights from endpoint degrees") {
  const Graph star = apply_scheme(star_graph(4), Scheme::mindeg);
  for (const Edge& e : star.edges()) CHECK(e.weight == 1.0);
  const Graph p3 = apply_scheme(path_graph(3), Scheme::ikeda);
  CHECK(p3.edge(0).weight == doctest::Approx(1.0 / std::sqrt(2.0)));
  for (const Edge& e : apply_scheme(lollipop_graph(8), Scheme::uniform).edges()) CHECK(e.weight == 1.0);
  CHECK(scheme_weight(Scheme::mindeg, 3, 7) == doctest::Approx(1.0 / 3.0));
  CHECK(parse_scheme("ikeda") == Scheme::ikeda);
  CHECK(to_string(Scheme::mindeg) == "mindeg");
  CHECK_THROWS(parse_scheme("heavy"));
  CHECK_THROWS_AS(apply_scheme(Graph(2, {{0, 1}, {0, 1}}), Scheme::mindeg), UnsupportedInput);
  CHECK_THROWS_AS(apply_scheme(Graph(2, {{0, 1, 2.0}}), Scheme::ikeda), UnsupportedInput);
}

TEST_CASE("all schemes coincide on regular graphs") {
  for (const Graph& g : {cycle_graph(7), complete_graph(5), torus_graph(3, 4)}) {
    const Eigen::MatrixXd u = build_kernel(g, Scheme::uniform).P;
    CHECK((build_kernel(g, Scheme::ikeda).P - u).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((build_kernel(g, Scheme::mindeg).P - u).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("weighted kernels follow the row formulas") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(201, i, 2, 30);
    const Eigen::MatrixXd ik = build_kernel(g, Scheme::ikeda).P;
    const Eigen::MatrixXd md = build_kernel(g, Scheme::mindeg).P;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      double zi = 0.0, zm = 0.0;
      for (Vertex w : g.neighbors(u)) {
        zi += 1.0 / std::sqrt(static_cast<double>(g.degree(w)));
        zm += 1.0 / static_cast<double>(std::min(g.degree(u), g.degree(w)));
      }
      for (Vertex v : g.neighbors(u)) {
        CHECK(std::abs(ik(u, v) - (1.0 / std::sqrt(static_cast<double>(g.degree(v)))) / zi) <= 1e-12);
        CHECK(std::abs(md(u, v) - (1.0 / static_cast<double>(std::min(g.degree(u), g.degree(v)))) / zm) <= 1e-12);
      }
    }
  }
}

TEST_CASE("min-deg invariants") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const MindegReport r = mindeg_invariant_report(complete_graph(n));
    CHECK(r.total_weight == doctest::Approx(static_cast<double>(n)));
    CHECK(r.all_ok());
  }
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Graph g = testing_support::random_graph(211, i, 2, 60);
    const MindegReport r = mindeg_invariant_report(g, i);
    CHECK(r.all_ok());
    CHECK(r.paths_checked == 100);
    CHECK(r.max_path_degree_sum <= 3 * g.num_vertices());
    CHECK(r.min_vertex_weight >= 1.0 - 1e-12);
  }
}

TEST_CASE("min-deg weighting removes the lollipop's cubic hitting time") {
  const Graph g = lollipop_graph(60);
  const double bound = 6.0 * 60 * 60;
  const Eigen::MatrixXd Hm = exact_hitting(build_kernel(g, Scheme::mindeg));
  const Eigen::MatrixXd Hu = exact_hitting(build_kernel(g, Scheme::uniform));
  CHECK(Hm.maxCoeff() <= bound);
  CHECK(Hu.maxCoeff() > bound);
}

TEST_CASE("Matthews consequence: min-deg cover is O(n^2 log n)") {
  for (std::uint64_t i = 0; i < 15; ++i) {
    const Graph g = testing_support::random_graph(221, i, 2, 11);
    const double n = static_cast<double>(g.num_vertices());
    const TransitionKernel k = build_kernel(g, Scheme::mindeg);
    const double limit = 6.0 * n * n * harmonic_number(g.num_vertices()) * (1 + 1e-9);
    CHECK(matthews_upper(exact_hitting(k)) <= limit);
    const auto cover = exact_cover_times(k);
    CHECK(*std::max_element(cover.begin(), cover.end()) <= limit);
  }
}

TEST_CASE("speedup is neutral on regular graphs and large on the lollipop") {
  const SpeedupReport reg = speedup(cycle_graph(12), 2000, 3);
  CHECK(std::abs(reg.z_score) < 4.0);
  CHECK(reg.ratio == doctest::Approx(1.0).epsilon(0.1));
  const SpeedupReport lolli = speedup(lollipop_graph(30), 300, 3);
  CHECK(lolli.ratio > 1.0);
  CHECK(lolli.z_score > 3.0);
  CHECK(lolli.uniform.scheme == "uniform");
  CHECK(lolli.mindeg.scheme == "mindeg");
}

TEST_CASE("min-deg weighting costs at most a factor of the maximum degree in conductance") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t n = 8 + 2 * (i % 8);
    const Graph g = sample_simple(regular_sequence(n, 3), derive_seed(231, i)).graph;
    if (!g.is_connected()) continue;
    const double uniform = conductance_exact(g).phi;
    const double weighted = conductance_exact(g, Scheme::mindeg).phi;
    CHECK(weighted >= uniform / static_cast<double>(g.max_degree()) - 1e-9);
  }
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Graph g = testing_support::random_graph(232, i, 4, 14);
    CHECK(conductance_exact(g, Scheme::mindeg).phi >=
          conductance_exact(g).phi / static_cast<double>(g.max_degree()) - 1e-9);
  }
}
