#include "rwlab/electrical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "rwlab/errors.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/numeric.hpp"
#include "rwlab/generators.hpp"

namespace rwlab {

namespace {

void check_pair(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) throw OutOfRange("vertex out of range");
}

// Voltages with W(u) = 1, W(v) = 0, harmonic on the rest of u's component.
// Vertices outside the component are left at 0.
std::vector<double> unit_voltages(const Graph& g, Vertex u, Vertex v) {
  const auto comp = g.components();
  if (comp[u] != comp[v]) {
    throw NoPathError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                      " are in different components");
  }
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> index(n, kUnreachable);
  std::vector<Vertex> interior;
  for (Vertex x = 0; x < n; ++x) {
    if (comp[x] == comp[u] && x != u && x != v) {
      index[x] = interior.size();
      interior.push_back(x);
    }
  }
  if (interior.size() > kDenseSolveCap) throw SizeError("resistance solve capped at n = 5000");
  std::vector<double> W(n, 0.0);
  W[u] = 1.0;
  if (interior.empty()) return W;
  const auto m = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const std::size_t a = index[e.u], c = index[e.v];
    if (a != kUnreachable) {
      L(a, a) += e.weight;
      if (c != kUnreachable) L(a, c) -= e.weight;
      else if (e.v == u) b(a) += e.weight;
    }
    if (c != kUnreachable) {
      L(c, c) += e.weight;
      if (a != kUnreachable) L(c, a) -= e.weight;
      else if (e.u == u) b(c) += e.weight;
    }
  }
  Eigen::VectorXd x = L.partialPivLu().solve(b);
  if (!x.allFinite()) throw NumericError("voltage solve failed");
  for (std::size_t i = 0; i < interior.size(); ++i) W[interior[i]] = x(static_cast<Eigen::Index>(i));
  return W;
}

double strength_at(const Graph& g, Vertex u, const std::vector<double>& W) {
  double s = 0.0;
  for (std::size_t id : g.incident(u)) {
    const Edge& e = g.edge(id);
    if (!e.is_loop()) s += e.weight * (W[u] - W[e.other(u)]);
  }
  return s;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

double effective_resistance(const Graph& g, Vertex u, Vertex v) {
  check_pair(g, u, v);
  if (u == v) return 0.0;
  const auto W = unit_voltages(g, u, v);
  return 1.0 / strength_at(g, u, W);
}

double ResistanceMatrix::max_finite() const {
  double best = 0.0;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v = u + 1; v < size(); ++v)
      if (component_[u] == component_[v]) best = std::max(best, values_(u, v));
  return best;
}

ResistanceMatrix resistance_matrix(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kDenseSolveCap) throw SizeError("resistance matrix capped at n = 5000");
  const auto comp = g.components();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const std::size_t num_comp = n ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;
  for (std::size_t c = 0; c < num_comp; ++c) {
    std::vector<Vertex> members;
    for (Vertex x = 0; x < n; ++x)
      if (comp[x] == c) members.push_back(x);
    if (members.size() < 2) continue;
    // Ground members[0]; index the rest 0..k-1.
    std::vector<std::size_t> index(n, kUnreachable);
    for (std::size_t i = 1; i < members.size(); ++i) index[members[i]] = i - 1;
    const auto k = static_cast<Eigen::Index>(members.size() - 1);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k, k);
    for (const Edge& e : g.edges()) {
      if (e.is_loop() || comp[e.u] != c) continue;
      const std::size_t a = index[e.u], b = index[e.v];
      if (a != kUnreachable) L(a, a) += e.weight;
      if (b != kUnreachable) L(b, b) += e.weight;
      if (a != kUnreachable && b != kUnreachable) {
        L(a, b) -= e.weight;
        L(b, a) -= e.weight;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> chol(L);
    if (chol.info() != Eigen::Success) throw NumericError("grounded Laplacian is not positive definite");
    const Eigen::MatrixXd G = chol.solve(Eigen::MatrixXd::Identity(k, k));
    auto green = [&](std::size_t i, std::size_t j) {
      return (i == 0 || j == 0) ? 0.0 : G(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
    };
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const double r = green(i, i) + green(j, j) - 2.0 * green(i, j);
        R(members[i], members[j]) = R(members[j], members[i]) = std::max(r, 0.0);
      }
    }
  }
  return ResistanceMatrix(std::move(R), comp);
}

double commute_time(const Graph& g, Vertex u, Vertex v) {
  return g.total_conductance() * effective_resistance(g, u, v);
}

double Flow::along(const Graph& g, std::size_t id, Vertex from) const {
  const Edge& e = g.edge(id);
  if (e.is_loop()) return 0.0;
  return from == e.u ? value.at(id) : -value.at(id);
}

Flow unit_current_flow(const Graph& g, Vertex u, Vertex v) {
  check_pair(g, u, v);
  if (u == v) throw ParameterError("unit flow needs distinct source and sink");
  const auto W = unit_voltages(g, u, v);
  const double strength = strength_at(g, u, W);
  Flow f{u, v, std::vector<double>(g.num_edges(), 0.0)};
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (!e.is_loop()) f.value[id] = e.weight * (W[e.u] - W[e.v]) / strength;
  }
  return f;
}

void validate_unit_flow(const Graph& g, const Flow& f) {
  if (f.value.size() != g.num_edges()) {
    throw FlowValidationError("flow has " + std::to_string(f.value.size()) + " values for " +
                              std::to_string(g.num_edges()) + " edges");
  }
  check_pair(g, f.source, f.sink);
  double scale = 1.0;
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    if (!std::isfinite(f.value[id])) throw FlowValidationError("flow value on edge " + std::to_string(id) + " is not finite");
    if (g.edge(id).is_loop() && f.value[id] != 0.0) {
      throw FlowValidationError("antisymmetry violated: loop edge " + std::to_string(id) + " carries flow");
    }
    scale = std::max(scale, std::abs(f.value[id]));
  }
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    double div = 0.0;
    for (std::size_t id : g.incident(x)) div += f.along(g, id, x);
    if (x == f.source) {
      if (std::abs(div - 1.0) > 1e-9) {
        throw FlowValidationError("strength is " + fmt(div) + ", expected 1");
      }
    } else if (x != f.sink && std::abs(div) > 1e-9 * scale) {
      throw FlowValidationError("Kirchhoff's node law violated at vertex " + std::to_string(x) +
                                " (divergence " + fmt(div) + ")");
    }
  }
}

double flow_energy(const Graph& g, const Flow& f) {
  validate_unit_flow(g, f);
  double energy = 0.0;
  for (std::size_t id = 0; id < g.num_edges(); ++id) energy += f.value[id] * f.value[id] / g.edge(id).weight;
  return energy;
}

double thomson_gap(const Graph& g, Vertex u, Vertex v, const Flow& f) {
  if (f.source != u || f.sink != v) throw FlowValidationError("flow endpoints do not match (u, v)");
  return flow_energy(g, f) - effective_resistance(g, u, v);
}

SpanningTreeBound spanning_tree_bound(const Graph& g) {
  if (!g.is_unit_weight()) throw UnsupportedInput("spanning-tree bound needs unit weights");
  if (!g.is_connected()) throw NoPathError("spanning-tree bound needs a connected graph");
  const double n = static_cast<double>(g.num_vertices());
  const double m = static_cast<double>(g.num_edges());
  return {2.0 * m * (2.0 * n - 2.0), 4.0 * m * n};
}

MerstResult merst_bound(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 2000) throw SizeError("MERST bound capped at n = 2000");
  if (!g.is_connected()) throw NoPathError("MERST bound needs a connected graph");
  const ResistanceMatrix R = resistance_matrix(g);
  std::vector<std::tuple<double, Vertex, Vertex>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(*R(u, v), u, v);
  std::sort(pairs.begin(), pairs.end());
  DisjointSets dsu(n);
  MerstResult out;
  for (auto [r, u, v] : pairs) {
    if (dsu.unite(u, v)) {
      out.tree.emplace_back(u, v);
      out.tree_weight += r;
      if (out.tree.size() + 1 == n) break;
    }
  }
  out.bound = g.total_conductance() * out.tree_weight;
  return out;
}

double matthews_upper(const Eigen::MatrixXd& H) {
  return H.maxCoeff() * harmonic_number(static_cast<std::size_t>(H.rows()));
}

double matthews_lower(const Eigen::MatrixXd& H, std::span<const Vertex> A) {
  if (A.size() < 2) throw ParameterError("Matthews lower bound needs |A| >= 2");
  double best = std::numeric_limits<double>::infinity();
  for (Vertex u : A)
    for (Vertex v : A)
      if (u != v) best = std::min(best, H(u, v));
  return best * harmonic_number(A.size() - 1);
}

double matthews_subset(const Eigen::MatrixXd& H, std::span<const Vertex> subset) {
  if (subset.empty()) throw ParameterError("empty subset");
  double best = 0.0;
  for (Vertex u : subset)
    for (Vertex v : subset) best = std::max(best, H(u, v));
  return best * harmonic_number(subset.size());
}

MatthewsLowerResult best_matthews_lower(const Eigen::MatrixXd& H, std::size_t max_size) {
  const auto n = static_cast<std::size_t>(H.rows());
  if (n < 2 || max_size < 2) throw ParameterError("Matthews lower bound needs |A| >= 2");
  max_size = std::min(max_size, n);
  auto pair_min = [&](Vertex u, Vertex v) { return std::min(H(u, v), H(v, u)); };
  MatthewsLowerResult out;

  if (n <= 16) {
    out.exhaustive = true;
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> min_pair(count, std::numeric_limits<double>::infinity());
    std::size_t best_mask = 0;
    for (std::size_t mask = 1; mask < count; ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
      const std::size_t rest = mask & (mask - 1);
      double m = min_pair[rest];
      for (std::size_t r = rest; r; r &= r - 1) m = std::min(m, pair_min(low, std::countr_zero(r)));
      min_pair[mask] = m;
      if (size < 2 || size > max_size) continue;
      const double value = m * harmonic_number(size - 1);
      if (value > out.value) {
        out.value = value;
        best_mask = mask;
      }
    }
    for (Vertex v = 0; v < n; ++v)
      if (best_mask >> v & 1) out.set.push_back(v);
    return out;
  }

  // Greedy: best pair, then repeatedly add the vertex keeping the pairwise minimum largest.
  Vertex a = 0, b = 1;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (pair_min(u, v) > pair_min(a, b)) a = u, b = v;
  std::vector<Vertex> set{a, b};
  std::vector<bool> in(n, false);
  in[a] = in[b] = true;
  double current = pair_min(a, b);
  out.value = current;
  out.set = set;
  while (set.size() < max_size) {
    Vertex pick = n;
    double pick_min = -1.0;
    for (Vertex x = 0; x < n; ++x) {
      if (in[x]) continue;
      double m = current;
      for (Vertex y : set) m = std::min(m, pair_min(x, y));
      if (m > pick_min) pick_min = m, pick = x;
    }
    if (pick == n) break;
    set.push_back(pick);
    in[pick] = true;
    current = pick_min;
    const double value = current * harmonic_number(set.size() - 1);
    if (value > out.value) {
      out.value = value;
      out.set = set;
    }
  }
  std::sort(out.set.begin(), out.set.end());
  return out;
}

GridResistanceReport grid_resistance_monitor(std::size_t k) {
  if (k < 1 || k > 40) throw ParameterError("grid resistance monitor needs 1 <= k <= 40");
  GridResistanceReport r;
  r.k = k;
  r.bound = 8.0 * harmonic_number(k);
  r.max_resistance = resistance_matrix(grid_graph(k, k)).max_finite();
  r.holds = r.max_resistance < r.bound;
  return r;
}

RayleighReport rayleigh_monitor(const Graph& g, std::span<const std::size_t> deleted_edges) {
  const ResistanceMatrix before = resistance_matrix(g);
  const ResistanceMatrix after = resistance_matrix(g.without_edges(deleted_edges));
  RayleighReport r;
  r.min_increase = std::numeric_limits<double>::infinity();
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v = u + 1; v < g.num_vertices(); ++v) {
      const auto r0 = before(u, v);
      const auto r1 = after(u, v);
      if (!r0) continue;
      if (!r1) {
        ++r.disconnected_pairs;
        continue;
      }
      r.min_increase = std::min(r.min_increase, *r1 - *r0);
    }
  }
  if (!std::isfinite(r.min_increase)) r.min_increase = 0.0;
  r.holds = r.min_increase >= -1e-9;
  return r;
}

BoundRow bound_row(const Graph& g, const std::string& graph_id) {
  BoundRow row;
  row.graph_id = graph_id;
  row.n = g.num_vertices();
  row.m = g.num_edges();
  const TransitionKernel k = build_kernel(g);
  const Eigen::MatrixXd H = exact_hitting(k);
  if (row.n <= kExactCoverCap) {
    const auto cover = exact_cover_times(k);
    row.exact_cover = *std::max_element(cover.begin(), cover.end());
  }
  row.matthews_lower = row.n >= 2 ? best_matthews_lower(H).value : 0.0;
  row.matthews_upper = matthews_upper(H);
  row.merst = merst_bound(g).bound;
  row.spanning_tree_4mn = spanning_tree_bound(g).headline;
  return row;
}

void write_bound_header(std::ostream& out) {
  out << "graph_id,n,m,exact_cover,matthews_lower,matthews_upper,merst,spanning_tree_4mn\n";
}

void write_bound_row(std::ostream& out, const BoundRow& row) {
  out << row.graph_id << ',' << row.n << ',' << row.m << ',' << (row.exact_cover ? fmt(*row.exact_cover) : "")
      << ',' << fmt(row.matthews_lower) << ',' << fmt(row.matthews_upper) << ',' << fmt(row.merst) << ','
      << fmt(row.spanning_tree_4mn) << '\n';
}

}  // namespace rwlab
