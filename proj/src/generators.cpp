#include "rwlab/generators.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>
#include <vector>

#include "rwlab/errors.hpp"

namespace rwlab {

namespace {

std::size_t parse_size(std::string_view s, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad size parameter in family '" + std::string(whole) + "'");
  }
  return value;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::grid2d: return "grid2d";
    case Family::torus2d: return "torus2d";
    case Family::lollipop: return "lollipop";
    case Family::star: return "star";
    case Family::binary_tree: return "binary-tree";
  }
  return "?";
}

GraphFamily parse_family(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("family must look like name:size");
  std::string_view name = text.substr(0, colon);
  std::string_view params = text.substr(colon + 1);
  GraphFamily f;
  static const std::pair<std::string_view, Family> names[] = {
      {"path", Family::path},       {"cycle", Family::cycle},       {"complete", Family::complete},
      {"grid2d", Family::grid2d},   {"torus2d", Family::torus2d},   {"lollipop", Family::lollipop},
      {"star", Family::star},       {"binary-tree", Family::binary_tree}};
  bool found = false;
  for (auto [n, tag] : names) {
    if (n == name) {
      f.tag = tag;
      found = true;
    }
  }
  if (!found) throw ParseError("unknown family '" + std::string(name) + "'");
  auto x = params.find_first_of("x,");
  if (f.tag == Family::grid2d || f.tag == Family::torus2d) {
    if (x == std::string_view::npos) {
      f.a = f.b = parse_size(params, text);
    } else {
      f.a = parse_size(params.substr(0, x), text);
      f.b = parse_size(params.substr(x + 1), text);
    }
  } else {
    f.a = parse_size(params, text);
  }
  return f;
}

std::string to_string(const GraphFamily& f) {
  std::string out = to_string(f.tag) + ":" + std::to_string(f.a);
  if (f.tag == Family::grid2d || f.tag == Family::torus2d) out += "x" + std::to_string(f.b);
  return out;
}

Graph path_graph(std::size_t n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph(leaves + 1, std::move(edges));
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
  return cartesian_product(path_graph(rows), path_graph(cols));
}

Graph torus_graph(std::size_t rows, std::size_t cols) {
  require(rows >= 3 && cols >= 3, "torus needs both dimensions >= 3");
  return cartesian_product(cycle_graph(rows), cycle_graph(cols));
}

Graph lollipop_graph(std::size_t n) {
  require(n >= 1, "lollipop needs n >= 1");
  const std::size_t tail = n / 3;
  const std::size_t clique = n - tail;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < clique; ++i)
    for (Vertex j = i + 1; j < clique; ++j) edges.push_back({i, j, 1.0});
  if (tail > 0) edges.push_back({clique - 1, clique, 1.0});
  for (Vertex i = clique; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph binary_tree_graph(std::size_t n) {
  require(n >= 1, "binary tree needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.push_back({(i - 1) / 2, i, 1.0});
  return Graph(n, std::move(edges));
}

Graph generate(const GraphFamily& f) {
  switch (f.tag) {
    case Family::path: return path_graph(f.a);
    case Family::cycle: return cycle_graph(f.a);
    case Family::complete: return complete_graph(f.a);
    case Family::grid2d: return grid_graph(f.a, f.b);
    case Family::torus2d: return torus_graph(f.a, f.b);
    case Family::lollipop: return lollipop_graph(f.a);
    case Family::star: return star_graph(f.a);
    case Family::binary_tree: return binary_tree_graph(f.a);
  }
  throw ParameterError("unknown family");
}

Graph random_connected_graph(std::size_t n, const RandomGraphOptions& options, Rng& rng) {
  require(n >= 1, "random graph needs n >= 1");
  require(options.min_weight > 0.0 && options.max_weight >= options.min_weight,
          "weight range must be positive");
  auto weight = [&] {
    return options.min_weight + (options.max_weight - options.min_weight) * rng.uniform();
  };
  std::vector<Vertex> order(n);
  for (Vertex i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> present;
  for (std::size_t i = 1; i < n; ++i) {
    Vertex a = order[i];
    Vertex b = order[rng.below(i)];
    edges.push_back({a, b, weight()});
    present.emplace(std::min(a, b), std::max(a, b));
  }

  const std::size_t max_simple_pairs = n * (n - 1) / 2;
  std::size_t added = 0;
  std::size_t attempts = 0;
  while (added < options.extra_edges && attempts < 100 * (options.extra_edges + 1)) {
    ++attempts;
    Vertex a = rng.below(n);
    Vertex b = rng.below(n);
    if (a == b && !options.allow_loops) continue;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (!options.allow_parallel && present.count(key)) {
      if (present.size() >= max_simple_pairs && !options.allow_loops) break;
      continue;
    }
    edges.push_back({a, b, weight()});
    present.insert(key);
    ++added;
  }
  return Graph(n, std::move(edges));
}

}  // namespace rwlab
