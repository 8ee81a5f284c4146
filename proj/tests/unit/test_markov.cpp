#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "rwlab/config_model.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/numeric.hpp"

using namespace rwlab;

TEST_CASE("kernel entries on small graphs") {
  const TransitionKernel z3 = build_kernel(cycle_graph(3));
  CHECK(z3.P(0, 1) == doctest::Approx(0.5));
  CHECK(z3.P(0, 2) == doctest::Approx(0.5));
  CHECK(z3.P(0, 0) == 0.0);

  const TransitionKernel k4 = build_kernel(complete_graph(4));
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = 0; v < 4; ++v) CHECK(k4.P(u, v) == doctest::Approx(u == v ? 0.0 : 1.0 / 3.0));

  const TransitionKernel p3 = build_kernel(path_graph(3), Scheme::mindeg);
  CHECK(p3.P(1, 0) == doctest::Approx(0.5));
  CHECK(p3.scheme == "mindeg");

  // A loop of weight c at u contributes 2c / c(u) to P[u][u].
  const TransitionKernel looped = build_kernel(Graph(2, {{0, 1, 1.0}, {0, 0, 1.0}}));
  CHECK(looped.P(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(looped.P(0, 1) == doctest::Approx(1.0 / 3.0));

  const TransitionKernel lazy = build_kernel(path_graph(2), true);
  CHECK(lazy.P(0, 0) == doctest::Approx(0.5));
  CHECK(lazy.lazy);
}

TEST_CASE("kernels are row stochastic and supported on edges") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Graph g = testing_support::random_graph(5, i, 2, 20, true, true);
    for (bool lazy : {false, true}) {
      const TransitionKernel k = build_kernel(g, lazy);
      for (Eigen::Index r = 0; r < k.P.rows(); ++r) {
        CHECK(std::abs(k.P.row(r).sum() - 1.0) <= 1e-12);
        CHECK(k.P.row(r).minCoeff() >= 0.0);
      }
      for (Vertex u = 0; u < g.num_vertices(); ++u) {
        const auto nb = g.neighbors(u);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
          const bool allowed = std::find(nb.begin(), nb.end(), v) != nb.end() || (lazy && u == v);
          if (!allowed) CHECK(k.P(u, v) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("kernel construction errors") {
  CHECK_THROWS_AS(build_kernel(Graph(3, {{0, 1}})), NumericError);
  const Graph multi(2, {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(build_kernel(multi, Scheme::ikeda), UnsupportedInput);
}

TEST_CASE("stationary distribution closed forms") {
  for (double p : stationary(build_kernel(cycle_graph(7)))) CHECK(p == doctest::Approx(1.0 / 7.0));
  for (double p : stationary(build_kernel(complete_graph(5)))) CHECK(p == doctest::Approx(0.2));
  const Graph star = star_graph(4);
  const auto pi = stationary(build_kernel(star));
  CHECK(pi[0] == doctest::Approx(0.5));
  CHECK(pi[1] == doctest::Approx(0.125));

  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(9, i, 2, 30);
    const auto pm = stationary(build_kernel(g, Scheme::mindeg));
    const double n = static_cast<double>(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      CHECK(pm[v] >= 1.0 / (2.0 * n) - 1e-12);
      CHECK(pm[v] <= static_cast<double>(g.degree(v)) / n + 1e-12);
    }
  }
}

TEST_CASE("stationary agrees with a null-space solve on a general chain") {
  Eigen::MatrixXd P(3, 3);
  P << 0.2, 0.5, 0.3, 0.1, 0.6, 0.3, 0.4, 0.4, 0.2;
  const auto pi = stationary(kernel_from_matrix(P));
  const Eigen::VectorXd ref = oracle::stationary(P);
  for (int i = 0; i < 3; ++i) CHECK(pi[i] == doctest::Approx(ref(i)).epsilon(1e-10));
}

TEST_CASE("hitting times match the closed forms") {
  const Eigen::MatrixXd Hp = exact_hitting(build_kernel(path_graph(6)));
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) CHECK(Hp(i, j) == doctest::Approx(j * j - i * i).epsilon(1e-12));
  const Eigen::MatrixXd Hz = exact_hitting(build_kernel(cycle_graph(9)));
  for (int r = 1; r < 9; ++r) {
    const int d = std::min(r, 9 - r);
    CHECK(Hz(0, r) == doctest::Approx(d * (9 - d)).epsilon(1e-12));
  }
  const Eigen::MatrixXd Hk = exact_hitting(build_kernel(complete_graph(6)));
  CHECK(Hk(2, 4) == doctest::Approx(5.0));
  for (int v = 0; v < 6; ++v) CHECK(Hk(v, v) == 0.0);
}

TEST_CASE("hitting times agree with forward probability mass") {
  for (std::uint64_t i = 0; i < 12; ++i) {
    const Graph g = testing_support::random_graph(21, i, 2, 8, true, true);
    const TransitionKernel k = build_kernel(g);
    const Eigen::MatrixXd H = exact_hitting(k);
    // At 10 max H the neglected tail alone is worth about 5e-4 of H.
    const auto horizon = static_cast<std::size_t>(std::ceil(40.0 * H.maxCoeff()));
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (u == v) continue;
        CHECK(H(u, v) >= 1.0);
        const double fwd = oracle::forward_hitting(k.P, u, v, horizon);
        CHECK(std::abs(fwd - H(u, v)) <= tol::cross_oracle * H(u, v));
      }
    }
  }
}

TEST_CASE("first return times") {
  CHECK(first_return(build_kernel(complete_graph(5)), 3) == doctest::Approx(5.0));
  CHECK(first_return(build_kernel(path_graph(7)), 0) == doctest::Approx(12.0));
  CHECK(first_return(build_kernel(path_graph(7)), 6) == doctest::Approx(12.0));
  CHECK(first_return(build_kernel(cycle_graph(8)), 5) == doctest::Approx(8.0));
}

TEST_CASE("harmonic extensions") {
  const auto z4 = harmonic_extension(build_kernel(cycle_graph(4)), {{0, 0.0}, {2, 1.0}});
  CHECK(z4[1] == doctest::Approx(0.5));
  CHECK(z4[3] == doctest::Approx(0.5));

  const std::size_t n = 8;
  const auto a = harmonic_extension(build_kernel(path_graph(n + 1)), {{0, 0.0}, {n, 0.0}}, 1.0);
  for (std::size_t r = 0; r <= n; ++r) CHECK(a[r] == doctest::Approx(static_cast<double>(r * (n - r))));

  const auto flat = harmonic_extension(build_kernel(lollipop_graph(9)), {{0, 2.5}, {8, 2.5}});
  for (double x : flat) CHECK(x == doctest::Approx(2.5));
  CHECK_THROWS(harmonic_extension(build_kernel(path_graph(3)), {}));
}

TEST_CASE("harmonic extension obeys the maximum principle") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(31, i, 3, 20, true, true);
    const Vertex last = g.num_vertices() - 1;
    const auto f = harmonic_extension(build_kernel(g), {{0, -1.0}, {last, 3.0}});
    for (double x : f) {
      CHECK(x >= -1.0 - 1e-9);
      CHECK(x <= 3.0 + 1e-9);
    }
  }
}

TEST_CASE("spectra") {
  const auto k = eigenvalues(build_kernel(complete_graph(5)));
  CHECK(k[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < 5; ++i) CHECK(k[i] == doctest::Approx(-0.25));

  const auto p2 = eigenvalues(build_kernel(path_graph(2)));
  CHECK(p2[0] == doctest::Approx(1.0));
  CHECK(p2[1] == doctest::Approx(-1.0));

  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(41, i, 2, 25, true, true);
    const auto lazy = eigenvalues(build_kernel(g, true));
    CHECK(std::abs(lazy.front() - 1.0) <= 1e-10);
    CHECK(lazy.back() >= -1e-12);
    CHECK(std::is_sorted(lazy.rbegin(), lazy.rend()));
  }
}

TEST_CASE("mixing time against plain matrix powers") {
  const std::size_t n = 40;
  const TransitionKernel k = build_kernel(complete_graph(n));
  const double threshold = std::pow(static_cast<double>(n), -3.0);
  CHECK(mixing_time(k) == oracle::mixing_by_powers(k.P, threshold));

  const TransitionKernel z8 = build_kernel(cycle_graph(8), true);
  CHECK(mixing_time(z8) == oracle::mixing_by_powers(z8.P, std::pow(8.0, -3.0)));
  for (std::uint64_t i = 0; i < 10; ++i) {
    const TransitionKernel lk = build_kernel(testing_support::random_graph(51, i, 2, 15, true, true), true);
    CHECK(mixing_time(lk, 1e-4) == oracle::mixing_by_powers(lk.P, 1e-4));
    const std::size_t t = mixing_time(lk);
    CHECK(max_deviation(lk, t) <= std::pow(static_cast<double>(lk.size()), -3.0));
    if (t > 1) CHECK(max_deviation(lk, t - 1) > std::pow(static_cast<double>(lk.size()), -3.0));
  }
  CHECK_THROWS_AS(mixing_time(build_kernel(path_graph(2))), TimeoutError);
}

TEST_CASE("return counts") {
  const TransitionKernel k = build_kernel(lollipop_graph(10));
  for (Vertex v = 0; v < 10; ++v) CHECK(return_count(k, v, 1) == doctest::Approx(1.0));
  CHECK(return_count(build_kernel(path_graph(2)), 0, 4) == doctest::Approx(2.0));

  // Near a locally tree-like vertex of a large 3-regular graph the expected
  // number of returns approaches (d - 1) / (d - 2) = 2.
  const Graph g = sample_simple(regular_sequence(2000, 3), 17).graph;
  Vertex tree_like = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto dist = bfs_distances(g, v);
    std::size_t inside = 0, edges = 0;
    for (Vertex x = 0; x < g.num_vertices(); ++x) inside += dist[x] <= 5;
    for (const Edge& e : g.edges()) edges += dist[e.u] <= 5 && dist[e.v] <= 5;
    if (edges + 1 == inside) {
      tree_like = v;
      break;
    }
  }
  const double r = return_count(build_kernel(g), tree_like, 40);
  CHECK(r == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("exact cover times") {
  for (double c : exact_cover_times(build_kernel(complete_graph(3)))) CHECK(c == doctest::Approx(3.0));
  for (double c : exact_cover_times(build_kernel(cycle_graph(4)))) CHECK(c == doctest::Approx(6.0));
  CHECK(exact_cover_time(build_kernel(path_graph(3)), 1) == doctest::Approx(5.0));
  CHECK_THROWS(build_kernel(path_graph(1)));
  CHECK_THROWS_AS(exact_cover_time(build_kernel(cycle_graph(14)), 0), SizeError);
}

TEST_CASE("exact cover agrees with value iteration") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Graph g = testing_support::random_graph(61, i, 2, 7, true, true);
    const TransitionKernel k = build_kernel(g);
    const auto cover = exact_cover_times(k);
    for (Vertex s = 0; s < g.num_vertices(); ++s)
      CHECK(cover[s] == doctest::Approx(oracle::cover_by_value_iteration(k.P, s)).epsilon(1e-8));
  }
}

TEST_CASE("detailed balance and the chain-to-graph round trip") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(71, i, 2, 20, true, true);
    const TransitionKernel k = build_kernel(g);
    CHECK(detailed_balance_violation(k) <= 1e-10);
    const TransitionKernel back = build_kernel(chain_to_graph(k, stationary(k)));
    CHECK((back.P - k.P).cwiseAbs().maxCoeff() <= 1e-9);
  }

  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const TransitionKernel directed = kernel_from_matrix(cyc);
  CHECK(detailed_balance_violation(directed) > 0.1);
  CHECK_THROWS_AS(chain_to_graph(directed, stationary(directed)), UnsupportedInput);

  Eigen::MatrixXd sym(3, 3);
  sym << 0.5, 0.25, 0.25, 0.25, 0.5, 0.25, 0.25, 0.25, 0.5;
  CHECK(detailed_balance_violation(kernel_from_matrix(sym)) <= 1e-15);

  const TransitionKernel z4 = build_kernel(cycle_graph(4));
  const Graph w = chain_to_graph(z4, stationary(z4));
  for (const Edge& e : w.edges()) CHECK(e.weight == doctest::Approx(0.125));

  const Graph star(4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}});
  const TransitionKernel ks = build_kernel(star);
  const Graph recovered = chain_to_graph(ks, stationary(ks));
  std::vector<double> ratios;
  for (const Edge& e : recovered.edges()) ratios.push_back(e.weight);
  std::sort(ratios.begin(), ratios.end());
  CHECK(ratios[1] / ratios[0] == doctest::Approx(2.0));
  CHECK(ratios[2] / ratios[0] == doctest::Approx(3.0));
}

TEST_CASE("kernel CSV round trip") {
  const TransitionKernel k = build_kernel(lollipop_graph(6), Scheme::ikeda, true);
  std::stringstream ss;
  write_kernel_csv(ss, k);
  const TransitionKernel back = read_kernel_csv(ss);
  CHECK(back.lazy);
  CHECK(back.scheme == "ikeda");
  CHECK((back.P - k.P).cwiseAbs().maxCoeff() == 0.0);
}
