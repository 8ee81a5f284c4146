// Shared fixtures for the unit tests.
#pragma once

#include <vector>

#include "rwlab/generators.hpp"
#include "rwlab/graph.hpp"
#include "rwlab/random.hpp"

namespace testing_support {

/// Connected random graph with n in [lo, hi]; substream `i` of `seed`.
inline rwlab::Graph random_graph(std::uint64_t seed, std::uint64_t i, std::size_t lo, std::size_t hi,
                                 bool multigraph = false, bool weighted = false) {
  rwlab::Rng rng(seed, i);
  const std::size_t n = lo + rng.below(hi - lo + 1);
  rwlab::RandomGraphOptions opt;
  opt.extra_edges = rng.below(2 * n + 1);
  opt.allow_loops = multigraph;
  opt.allow_parallel = multigraph;
  if (weighted) {
    opt.min_weight = 0.5;
    opt.max_weight = 2.0;
  }
  return rwlab::random_connected_graph(n, opt, rng);
}

inline std::vector<rwlab::Graph> named_small_graphs() {
  using namespace rwlab;
  return {path_graph(2),    path_graph(5),       cycle_graph(3),     cycle_graph(6),  complete_graph(4),
          star_graph(4),    grid_graph(2, 3),    lollipop_graph(7),  binary_tree_graph(7),
          torus_graph(3, 3)};
}

}  // namespace testing_support
