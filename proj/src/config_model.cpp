#include "rwlab/config_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <sstream>

#include "rwlab/errors.hpp"
#include "rwlab/random.hpp"

namespace rwlab {

DegreeSequence::DegreeSequence(std::vector<std::size_t> degrees) : d_(std::move(degrees)) {
  if (d_.empty()) throw ParameterError("degree sequence is empty");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] == 0) throw ParameterError("degree of vertex " + std::to_string(i) + " is 0");
    sum_ += d_[i];
  }
  if (sum_ % 2 != 0) throw ParameterError("degree sum " + std::to_string(sum_) + " is odd");
}

std::size_t DegreeSequence::min() const { return *std::min_element(d_.begin(), d_.end()); }
std::size_t DegreeSequence::max() const { return *std::max_element(d_.begin(), d_.end()); }

std::size_t DegreeSequence::count(std::size_t j) const {
  return static_cast<std::size_t>(std::count(d_.begin(), d_.end(), j));
}

DegreeSequence regular_sequence(std::size_t n, std::size_t r) {
  return DegreeSequence(std::vector<std::size_t>(n, r));
}

DegreeSequence read_degree_sequence(std::istream& in) {
  std::vector<std::size_t> d;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    long long value = 0;
    std::string rest;
    if (!(is >> value) || (is >> rest) || value < 0) {
      throw ParseError("line " + std::to_string(line_no) + ": expected one non-negative integer");
    }
    d.push_back(static_cast<std::size_t>(value));
  }
  return DegreeSequence(std::move(d));
}

DegreeSequence read_degree_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open degree sequence file '" + path + "'");
  return read_degree_sequence(in);
}

Graph sample_configuration(const DegreeSequence& d, std::uint64_t seed) {
  std::vector<Vertex> stubs;
  stubs.reserve(2 * d.m());
  for (Vertex v = 0; v < d.n(); ++v) stubs.insert(stubs.end(), d[v], v);
  Rng rng(seed);
  rng.shuffle(stubs);
  std::vector<Edge> edges;
  edges.reserve(d.m());
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1], 1.0});
  return Graph(d.n(), std::move(edges));
}

SimpleSample sample_simple(const DegreeSequence& d, std::uint64_t seed, std::optional<std::size_t> max_tries) {
  const std::size_t tries =
      max_tries.value_or(std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(20.0 / predicted_p_simple(d)))));
  for (std::size_t i = 0; i < tries; ++i) {
    Graph g = sample_configuration(d, derive_seed(seed, i));
    if (g.is_simple()) return {std::move(g), i + 1};
  }
  throw RejectionFailure("no simple graph in " + std::to_string(tries) +
                             " configurations (empirical acceptance rate 0)",
                         0.0);
}

double empirical_p_simple(const DegreeSequence& d, std::size_t attempts, std::uint64_t seed) {
  if (attempts == 0) throw ParameterError("attempts must be positive");
  std::size_t simple = 0;
  for (std::size_t i = 0; i < attempts; ++i)
    if (sample_configuration(d, derive_seed(seed, i)).is_simple()) ++simple;
  return static_cast<double>(simple) / static_cast<double>(attempts);
}

double nu(const DegreeSequence& d) {
  double s = 0.0;
  for (std::size_t x : d.degrees()) s += static_cast<double>(x) * static_cast<double>(x - 1);
  return s / (2.0 * static_cast<double>(d.m()));
}

double predicted_p_simple(const DegreeSequence& d) {
  const double v = nu(d);
  return std::exp(-v / 2.0 - v * v / 4.0);
}

std::size_t effective_min_degree(const DegreeSequence& d, double fraction) {
  std::vector<std::size_t> sorted = d.degrees();
  std::sort(sorted.begin(), sorted.end());
  const double need = fraction * static_cast<double>(d.n());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (static_cast<double>(j - i) >= need) return sorted[i];
    i = j;
  }
  return d.max();
}

bool NicenessReport::nice() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const NicenessCondition& c) { return c.holds; });
}

std::string NicenessReport::to_json() const {
  nlohmann::ordered_json j;
  j["nice"] = nice();
  j["n"] = n;
  j["theta"] = theta;
  j["min_degree"] = min_degree;
  j["max_degree"] = max_degree;
  j["effective_min_degree"] = effective_min_degree;
  j["params"] = {{"alpha", params.alpha},
                 {"kappa", params.kappa},
                 {"gamma", gamma},
                 {"theta_slack", params.theta_slack},
                 {"big_o_constant", params.big_o},
                 {"effective_min_fraction", params.fraction}};
  j["conditions"] = nlohmann::ordered_json::array();
  for (const auto& c : conditions) {
    j["conditions"].push_back({{"name", c.name}, {"holds", c.holds}, {"observed", c.observed}, {"limit", c.limit}});
  }
  return j.dump(2);
}

NicenessReport check_nice(const DegreeSequence& d, const NiceParams& params) {
  NicenessReport r;
  r.params = params;
  r.n = d.n();
  const double n = static_cast<double>(d.n());
  const double ln_n = std::log(std::max(n, 2.0));
  r.gamma = params.gamma.value_or(std::max(1.0, std::log(std::max(ln_n, 1.0))));
  r.theta = d.average();
  r.min_degree = d.min();
  r.max_degree = d.max();
  const std::size_t de = effective_min_degree(d, params.fraction);
  r.effective_min_degree = de;
  const double dd = static_cast<double>(de);

  r.conditions.push_back({"(i) average degree", r.theta <= params.theta_slack * std::sqrt(ln_n), r.theta,
                          params.theta_slack * std::sqrt(ln_n)});
  r.conditions.push_back({"(ii) minimum degree >= 3", r.min_degree >= 3, static_cast<double>(r.min_degree), 3.0});

  // (iii): worst ratio n_i / (C n^{kappa i / d}) over delta <= i < d.
  double worst = 0.0;
  double worst_limit = 0.0;
  bool ok = true;
  for (std::size_t i = r.min_degree; i < de; ++i) {
    const double limit = params.big_o * std::pow(n, params.kappa * static_cast<double>(i) / dd);
    const double ni = static_cast<double>(d.count(i));
    if (ni > limit) ok = false;
    if (limit > 0 && ni / limit >= worst) {
      worst = ni / limit;
      worst_limit = limit;
    }
  }
  r.conditions.push_back({"(iii) low-degree counts", ok, worst * worst_limit, worst_limit});

  const double nd = static_cast<double>(d.count(de));
  r.conditions.push_back({"(iv) n_d >= alpha n", nd >= params.alpha * n, nd, params.alpha * n});

  const double tail_limit = params.big_o * std::pow(n, params.kappa * (dd - 1.0) / dd);
  r.conditions.push_back({"(v) maximum degree", static_cast<double>(r.max_degree) <= tail_limit,
                          static_cast<double>(r.max_degree), tail_limit});

  const double threshold = r.gamma * r.theta;
  std::size_t tail = 0;
  for (std::size_t x : d.degrees())
    if (static_cast<double>(x) >= threshold) ++tail;
  r.conditions.push_back({"(vi) upper tail", static_cast<double>(tail) <= tail_limit, static_cast<double>(tail),
                          tail_limit});
  return r;
}

double predicted_cover(const DegreeSequence& d, double fraction) {
  const std::size_t de = effective_min_degree(d, fraction);
  if (de <= 2) throw ParameterError("predicted cover needs effective minimum degree >= 3, got " + std::to_string(de));
  const double dd = static_cast<double>(de);
  const double n = static_cast<double>(d.n());
  return (dd - 1.0) / (dd - 2.0) * d.average() / dd * n * std::log(n);
}

}  // namespace rwlab
