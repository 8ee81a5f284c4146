#include "rwlab/product.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <ostream>

#include <Eigen/Dense>

#include "rwlab/electrical.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/markov.hpp"

namespace rwlab {

LocalObservation local_observation(const Graph& g, std::span<const Vertex> S) {
  const std::size_t n = g.num_vertices();
  if (S.empty()) throw ParameterError("S must be nonempty");
  if (!g.is_connected()) throw ParameterError("local observation needs a connected graph");
  std::vector<bool> in_s(n, false);
  for (Vertex v : S) {
    if (v >= n) throw OutOfRange("vertex " + std::to_string(v) + " out of range");
    in_s[v] = true;
  }
  LocalObservation loc;
  std::vector<std::size_t> h_index(n, kUnreachable);
  std::vector<std::size_t> x_index(n, kUnreachable);
  std::vector<Vertex> exterior;
  for (Vertex v = 0; v < n; ++v) {
    if (in_s[v]) {
      h_index[v] = loc.vertices.size();
      loc.vertices.push_back(v);
    } else {
      x_index[v] = exterior.size();
      exterior.push_back(v);
    }
  }

  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (in_s[e.u] && in_s[e.v]) {
      edges.push_back({h_index[e.u], h_index[e.v], e.weight});
      loc.tags.push_back(EdgeTag::interior);
      loc.conductance.push_back(e.weight);
    }
  }

  if (!exterior.empty()) {
    if (exterior.size() > kDenseSolveCap) throw SizeError("exterior solve capped at 5000 vertices");
    std::vector<std::size_t> b_index(n, kUnreachable);
    for (Vertex v : loc.vertices) {
      for (std::size_t id : g.incident(v)) {
        if (!in_s[g.edge(id).other(v)]) {
          b_index[v] = loc.boundary.size();
          loc.boundary.push_back(v);
          break;
        }
      }
    }
    const auto nx = static_cast<Eigen::Index>(exterior.size());
    const auto nb = static_cast<Eigen::Index>(loc.boundary.size());

    // Components of G[X], and which boundary vertices each one touches.
    std::vector<std::size_t> xcomp(exterior.size(), kUnreachable);
    std::size_t num_comp = 0;
    for (std::size_t s = 0; s < exterior.size(); ++s) {
      if (xcomp[s] != kUnreachable) continue;
      std::vector<std::size_t> stack{s};
      xcomp[s] = num_comp;
      while (!stack.empty()) {
        const Vertex x = exterior[stack.back()];
        stack.pop_back();
        for (std::size_t id : g.incident(x)) {
          const Vertex y = g.edge(id).other(x);
          if (!in_s[y] && xcomp[x_index[y]] == kUnreachable) {
            xcomp[x_index[y]] = num_comp;
            stack.push_back(x_index[y]);
          }
        }
      }
      ++num_comp;
    }
    std::vector<std::vector<bool>> touches(num_comp, std::vector<bool>(loc.boundary.size(), false));

    // (I - P_XX) A = P_XB, rows scaled by c(x): (C_X - W_XX) A = W_XB.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nx, nx);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nx, nb);
    for (std::size_t i = 0; i < exterior.size(); ++i) M(i, i) = g.conductance(exterior[i]);
    for (const Edge& e : g.edges()) {
      const bool xu = !in_s[e.u], xv = !in_s[e.v];
      if (xu && xv) {
        const std::size_t a = x_index[e.u], b = x_index[e.v];
        if (a == b) {
          M(a, a) -= 2.0 * e.weight;
        } else {
          M(a, b) -= e.weight;
          M(b, a) -= e.weight;
        }
      } else if (xu || xv) {
        const Vertex x = xu ? e.u : e.v;
        const Vertex s = xu ? e.v : e.u;
        rhs(x_index[x], b_index[s]) += e.weight;
        touches[xcomp[x_index[x]]][b_index[s]] = true;
      }
    }
    Eigen::MatrixXd A = M.partialPivLu().solve(rhs);
    if (!A.allFinite()) throw NumericError("absorption solve failed");
    for (std::size_t i = 0; i < exterior.size(); ++i)
      for (std::size_t j = 0; j < loc.boundary.size(); ++j)
        if (!touches[xcomp[i]][j]) A(i, j) = 0.0;

    // C(u, v) = sum over edges (u, x), x in X, of c(u, x) a(x, v).
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nb, nb);
    std::vector<std::vector<bool>> linked(loc.boundary.size(), std::vector<bool>(loc.boundary.size(), false));
    for (std::size_t i = 0; i < loc.boundary.size(); ++i) {
      const Vertex u = loc.boundary[i];
      for (std::size_t id : g.incident(u)) {
        const Edge& e = g.edge(id);
        const Vertex x = e.other(u);
        if (in_s[x]) continue;
        const std::size_t xi = x_index[x];
        for (std::size_t j = 0; j < loc.boundary.size(); ++j) {
          if (!touches[xcomp[xi]][j]) continue;
          C(i, j) += e.weight * A(xi, j);
          linked[i][j] = true;
        }
      }
    }
    for (std::size_t i = 0; i < loc.boundary.size(); ++i) {
      for (std::size_t j = i; j < loc.boundary.size(); ++j) {
        if (!linked[i][j]) continue;
        const double cij = C(i, j), cji = C(j, i);
        if (std::abs(cij - cji) > 1e-9 * std::max(1.0, std::abs(cij))) {
          throw NumericError("exterior conductance asymmetric at (" + std::to_string(loc.boundary[i]) + ", " +
                             std::to_string(loc.boundary[j]) + ")");
        }
        const double c = 0.5 * (cij + cji);
        if (!(c > 0.0)) continue;
        const Vertex hu = h_index[loc.boundary[i]], hv = h_index[loc.boundary[j]];
        edges.push_back({hu, hv, i == j ? c / 2.0 : c});
        loc.tags.push_back(EdgeTag::exterior);
        loc.conductance.push_back(c);
      }
    }
  }
  loc.graph = Graph(loc.vertices.size(), std::move(edges));
  return loc;
}

void write_local_observation(std::ostream& out, const LocalObservation& loc) {
  const Graph& h = loc.graph;
  out << h.num_vertices() << ' ' << h.num_edges() << '\n' << std::setprecision(17);
  for (std::size_t id = 0; id < h.num_edges(); ++id) {
    const Edge& e = h.edge(id);
    out << e.u << ' ' << e.v << ' ' << e.weight << ' '
        << (loc.tags[id] == EdgeTag::interior ? "interior" : "exterior") << '\n';
  }
}

BlockDecomposition block_decomposition(const Graph& h, std::size_t k) {
  if (k < 1) throw ParameterError("block size k must be >= 1");
  const std::size_t n = h.num_vertices();
  BlockDecomposition out;
  out.k = k;
  if (n == 0) return out;
  if (k > n) {
    out.blocks.emplace_back();
    for (Vertex v = 0; v < n; ++v) out.blocks.back().push_back(v);
    return out;
  }
  std::vector<bool> claimed(n, false);

  // BFS of depth <= k from `root` over unclaimed vertices (root itself may be
  // claimed). Returns the tree's vertices in BFS order and its depth-k leaves.
  auto grow = [&](Vertex root, std::vector<Vertex>& tree, std::vector<Vertex>& leaves) {
    std::vector<std::size_t> depth(n, kUnreachable);
    std::deque<Vertex> queue{root};
    depth[root] = 0;
    tree.assign(1, root);
    leaves.clear();
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (depth[x] == k) {
        leaves.push_back(x);
        continue;
      }
      for (Vertex y : h.neighbors(x)) {
        if (claimed[y] || depth[y] != kUnreachable) continue;
        depth[y] = depth[x] + 1;
        tree.push_back(y);
        queue.push_back(y);
      }
    }
  };

  struct Frame {
    std::vector<Vertex> leaves;
    std::size_t parent;
    std::size_t next = 0;
  };
  std::vector<Vertex> tree, leaves;
  claimed[0] = true;
  grow(0, tree, leaves);
  for (Vertex v : tree) claimed[v] = true;
  out.blocks.push_back(tree);
  std::vector<Frame> stack;
  stack.push_back({leaves, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.leaves.size()) {
      stack.pop_back();
      continue;
    }
    const Vertex l = f.leaves[f.next++];
    const std::size_t parent = f.parent;
    grow(l, tree, leaves);
    if (tree.size() == 1) continue;
    for (Vertex v : tree) claimed[v] = true;
    if (tree.size() < k) {
      auto& block = out.blocks[parent];
      block.insert(block.end(), tree.begin() + 1, tree.end());
    } else {
      out.blocks.push_back(tree);
      stack.push_back({leaves, out.blocks.size() - 1});  // invalidates f
    }
  }
  if (std::find(claimed.begin(), claimed.end(), false) != claimed.end()) {
    throw ParameterError("block decomposition needs a connected graph");
  }
  for (auto& b : out.blocks) std::sort(b.begin(), b.end());
  return out;
}

TheoremMainBounds theorem_main_bounds(const Graph& g, const Graph& h, double cov_h, double bcov_h,
                                      std::optional<double> cov_g) {
  TheoremMainBounds r;
  const double nG = static_cast<double>(g.num_vertices());
  const double nH = static_cast<double>(h.num_vertices());
  const double mG = static_cast<double>(g.num_edges());
  const double mH = static_cast<double>(h.num_edges());
  const double dG = static_cast<double>(g.min_degree()), DG = static_cast<double>(g.max_degree());
  const double dH = static_cast<double>(h.min_degree()), DH = static_cast<double>(h.max_degree());
  r.diameter_g = diameter(g);
  r.product_edges = g.num_vertices() * h.num_edges() + h.num_vertices() * g.num_edges();

  r.lower = (1.0 + dG / DH) * cov_h;
  if (cov_g) r.lower = std::max(r.lower, (1.0 + dH / DG) * *cov_g);

  const double D = static_cast<double>(r.diameter_g);
  r.upper_condition = r.diameter_g >= 1 && nH >= D + 1.0;
  if (r.diameter_g >= 1) r.ell = std::log(D + 1.0) * std::log(nG * D);
  if (r.upper_condition) {
    const double M = static_cast<double>(r.product_edges);
    r.upper_over_K = (1.0 + DG / dH) * bcov_h + M * mG * mH * nH * r.ell * r.ell / (cov_h * D);
  }
  return r;
}

ProductResistanceReport product_resistance_monitor(const Graph& g, const Graph& h) {
  if (g.num_vertices() * h.num_vertices() > 2500) throw SizeError("product monitor capped at 2500 vertices");
  ProductResistanceReport r;
  r.r_max = resistance_matrix(cartesian_product(g, h)).max_finite();
  const std::size_t D = diameter(g);
  r.alpha = static_cast<double>(h.num_vertices()) / static_cast<double>(D + 1);
  if (D >= 1) r.ratio = r.r_max / (r.alpha * std::log(static_cast<double>(D + 1)));
  return r;
}

TreeProductReport tree_product_monitor(const Graph& g, const Graph& tree) {
  if (!tree.is_connected() || tree.num_edges() + 1 != tree.num_vertices()) {
    throw UnsupportedInput("second argument must be a tree");
  }
  if (g.num_vertices() * tree.num_vertices() > 2500) throw SizeError("tree monitor capped at 2500 vertices");
  TreeProductReport r;
  r.r_max_tree = resistance_matrix(cartesian_product(g, tree)).max_finite();
  r.r_max_path = resistance_matrix(cartesian_product(g, path_graph(tree.num_vertices()))).max_finite();
  r.ratio = r.r_max_path > 0 ? r.r_max_tree / r.r_max_path : 0.0;
  return r;
}

}  // namespace rwlab
