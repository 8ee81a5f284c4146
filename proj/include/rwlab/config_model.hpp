// config_model.hpp - configuration-model sampling and degree-sequence checks.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rwlab/graph.hpp"

namespace rwlab {

/// Positive degrees with an even sum (ParameterError otherwise).
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<std::size_t> degrees);

  std::size_t n() const { return d_.size(); }
  std::size_t m() const { return sum_ / 2; }
  const std::vector<std::size_t>& degrees() const { return d_; }
  std::size_t operator[](std::size_t i) const { return d_[i]; }
  /// theta = 2m / n.
  double average() const { return static_cast<double>(sum_) / static_cast<double>(n()); }
  std::size_t min() const;
  std::size_t max() const;
  /// n_j = #{i : d_i = j}.
  std::size_t count(std::size_t j) const;

 private:
  std::vector<std::size_t> d_;
  std::size_t sum_ = 0;
};

DegreeSequence regular_sequence(std::size_t n, std::size_t r);

/// One integer per line; blank lines and '#' comments skipped.
DegreeSequence read_degree_sequence(std::istream& in);
DegreeSequence read_degree_sequence_file(const std::string& path);

/// Uniform perfect matching of the 2m stubs: Fisher-Yates shuffle with
/// Rng(seed), then consecutive stubs are paired. May contain loops and
/// parallel edges.
Graph sample_configuration(const DegreeSequence& d, std::uint64_t seed);

struct SimpleSample {
  Graph graph;
  std::size_t attempts = 0;
};

/// Rejection sampling: attempt i (from 0) samples a configuration with seed
/// derive_seed(seed, i). max_tries defaults to max(1000, ceil(20 / p)) with p
/// the predicted probability of simplicity. Throws RejectionFailure.
SimpleSample sample_simple(const DegreeSequence& d, std::uint64_t seed,
                           std::optional<std::size_t> max_tries = {});

/// Fraction of `attempts` configurations (seeds derive_seed(seed, i)) that are simple.
double empirical_p_simple(const DegreeSequence& d, std::size_t attempts, std::uint64_t seed);

/// nu = sum d_i (d_i - 1) / (2m).
double nu(const DegreeSequence& d);
/// exp(-nu/2 - nu^2/4).
double predicted_p_simple(const DegreeSequence& d);

/// Smallest degree j with n_j >= fraction * n.
std::size_t effective_min_degree(const DegreeSequence& d, double fraction = 0.01);

/// Finite-n readings of the asymptotic niceness conditions.
struct NiceParams {
  double alpha = 0.01;               // (iv): n_d >= alpha n
  double kappa = 0.09;               // must be < 1/11
  std::optional<double> gamma;       // (vi) threshold factor; default max(1, ln ln n)
  double theta_slack = 4.0;          // (i): theta <= slack * sqrt(ln n)
  double big_o = 8.0;                // constant standing in for O(.) in (iii), (v), (vi)
  double fraction = 0.01;            // effective minimum degree threshold
};

struct NicenessCondition {
  std::string name;
  bool holds = false;
  double observed = 0.0;
  double limit = 0.0;
};

struct NicenessReport {
  NiceParams params;
  double gamma = 0.0;
  std::size_t n = 0;
  double theta = 0.0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  std::size_t effective_min_degree = 0;
  std::vector<NicenessCondition> conditions;  // (i)..(vi) in order

  bool nice() const;
  std::string to_json() const;
};

NicenessReport check_nice(const DegreeSequence& d, const NiceParams& params = {});

/// (d-1)/(d-2) * theta/d * n ln n with d the effective minimum degree.
/// Throws ParameterError when d <= 2.
double predicted_cover(const DegreeSequence& d, double fraction = 0.01);

}  // namespace rwlab
