// generators.hpp - deterministic graph families and seeded random graphs.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rwlab/graph.hpp"
#include "rwlab/random.hpp"

namespace rwlab {

enum class Family { path, cycle, complete, grid2d, torus2d, lollipop, star, binary_tree };

/// A family tag plus up to two size parameters. grid2d/torus2d use (rows, cols);
/// star uses the number of leaves; every other family uses `a` as the vertex count.
struct GraphFamily {
  Family tag = Family::path;
  std::size_t a = 1;
  std::size_t b = 0;
};

std::string to_string(Family f);

/// Parses "path:10", "grid2d:4x6", "torus2d:8" (square), "star:4", "binary-tree:15".
GraphFamily parse_family(std::string_view text);
std::string to_string(const GraphFamily& f);

Graph generate(const GraphFamily& family);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph grid_graph(std::size_t rows, std::size_t cols);
Graph torus_graph(std::size_t rows, std::size_t cols);
/// Clique on n - floor(n/3) vertices (labels 0..k-1), path on the remaining
/// floor(n/3) vertices (labels k..n-1), bridge (k-1, k).
Graph lollipop_graph(std::size_t n);
/// Heap-ordered: children of i are 2i+1 and 2i+2.
Graph binary_tree_graph(std::size_t n);

struct RandomGraphOptions {
  std::size_t extra_edges = 0;
  bool allow_loops = false;
  bool allow_parallel = false;
  double min_weight = 1.0;
  double max_weight = 1.0;
};

/// Random spanning tree (random attachment order) plus `extra_edges` random
/// edges. Always connected. Unit weights unless a weight range is given.
Graph random_connected_graph(std::size_t n, const RandomGraphOptions& options, Rng& rng);

}  // namespace rwlab
