// experiments.hpp - named, reproducible experiments with pass/fail checks.
//
// An experiment is a pure function of its ExperimentSpec: the CSV body it
// returns is byte-identical across reruns. Wall-clock time is measured by the
// caller and only ever appears in the JSON summary.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwlab/graph.hpp"
#include "rwlab/scheme.hpp"

namespace rwlab {

struct ExperimentSpec {
  std::string id;
  std::optional<std::string> graph_file;
  std::optional<std::string> family;   // "name:params"
  std::optional<std::string> product;  // "A,B" with A and B families
  std::optional<std::string> degseq;   // file path or "regular:r"
  std::optional<Scheme> scheme;
  bool lazy = false;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::string format = "csv";
  unsigned workers = 1;
  /// Experiment-specific options ("n", "k", "regular", "path", "runs", ...).
  std::map<std::string, std::string> params;

  nlohmann::ordered_json to_json() const;
};

struct Check {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct ExperimentResult {
  std::vector<Check> checks;
  std::string csv;
  /// Report-only quantities (monitored, never asserted).
  nlohmann::ordered_json report = nlohmann::ordered_json::object();

  bool passed() const;
};

const std::vector<std::string>& experiment_ids();

/// What the experiment computes, its inputs, and its acceptance rule.
/// Throws ParameterError for an unknown id.
std::string describe(const std::string& id);

/// Throws ParameterError/ParseError for invalid options and NumericError or
/// TimeoutError when a computation breaks down.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// The graph named by --graph-file, --family or --product, if any, with a
/// CSV-safe identifier.
std::optional<std::pair<Graph, std::string>> resolve_graph(const ExperimentSpec& spec);

/// "2..10" -> {2, ..., 10}; "500,1000" -> {500, 1000}; "7" -> {7}.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace rwlab
