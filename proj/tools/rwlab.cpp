// rwlab - command-line front end for the named experiments.
//
//   rwlab list
//   rwlab describe <experiment>
//   rwlab <experiment> --seed S [options]
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 bad invocation or
// input, 3 numeric breakdown or timeout.
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwlab/errors.hpp"
#include "rwlab/experiments.hpp"
#include "rwlab/scheme.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitSpec = 2;
constexpr int kExitNumeric = 3;

nlohmann::ordered_json summary(const rwlab::ExperimentSpec& spec, const rwlab::ExperimentResult& result,
                               double seconds) {
  nlohmann::ordered_json j;
  j["spec"] = spec.to_json();
  j["passed"] = result.passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance}});
  }
  j["checks"] = checks;
  j["report"] = result.report;
  j["runtime_seconds"] = seconds;
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rwlab::ParameterError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw rwlab::ParameterError("failed writing '" + path + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Random-walk cover-time lab"};
  app.set_help_flag("-h,--help", "Show help");

  std::string command;
  std::string target;
  app.add_option("command", command, "Experiment id, 'describe' or 'list'")->required();
  app.add_option("id", target, "Experiment id for 'describe'");

  rwlab::ExperimentSpec spec;
  std::string graph_file, family, product, degseq, scheme, out, format = "csv";
  std::uint64_t trials = 0, seed = 0;
  unsigned workers = 1;
  app.add_option("--graph-file", graph_file, "Graph in 'n m' + 'u v [w]' format");
  app.add_option("--family", family, "Named family, e.g. cycle:16 or grid2d:4x4");
  app.add_option("--product", product, "Cartesian product A,B of two families");
  app.add_option("--degseq", degseq, "Degree-sequence file or regular:r");
  app.add_option("--scheme", scheme, "Edge weighting: uniform, ikeda or mindeg");
  app.add_flag("--lazy", spec.lazy, "Use the lazy walk (P + I) / 2");
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials or sampling attempts");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (required to run an experiment)");
  app.add_option("--out", out, "CSV output path; the JSON summary goes to <out>.json");
  app.add_option("--format", format, "Stdout format when --out is absent")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "Monte Carlo worker threads (0 = all cores)");

  const std::vector<std::pair<std::string, std::string>> extras = {
      {"n", "Sizes: single value, list a,b,c or range a..b"},
      {"k", "Grid side lengths"},
      {"regular", "Regular degree(s) r"},
      {"path", "Path length for st-connect-demo"},
      {"runs", "Independent runs for st-connect-demo"},
      {"s", "Source vertex"},
      {"t", "Target vertex"},
      {"count", "Number of random graphs"},
      {"nmax", "Largest random graph size"},
      {"samples", "Number of sampled graphs"},
      {"js-graphs", "Random graphs for the spectral sandwich"},
      {"sweep-n", "Sizes for sweep-cut reports"},
      {"torus-n", "Torus side lengths for the cover monitor"},
      {"torus-trials", "Trials per torus"},
      {"toroid-q", "Long-side lengths for toroid tables"},
      {"bcov-trials", "Trials for blanket-cover estimates"},
      {"tables", "Emit upper-bound tables (0 or 1)"},
      {"retries", "Extra replications allowed on failure"},
  };
  std::map<std::string, std::string> extra_values;
  for (const auto& [name, help] : extras) app.add_option("--" + name, extra_values[name], help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitSpec;
  }

  if (command == "list") {
    for (const auto& id : rwlab::experiment_ids()) std::cout << id << '\n';
    return kExitPass;
  }
  if (command == "describe") {
    if (target.empty()) throw rwlab::ParameterError("describe needs an experiment id");
    std::cout << rwlab::describe(target);
    return kExitPass;
  }
  if (!target.empty()) throw rwlab::ParameterError("unexpected argument '" + target + "'");
  rwlab::describe(command);  // rejects unknown ids before any work
  if (seed_opt->count() == 0) throw rwlab::ParameterError("--seed is required");

  spec.id = command;
  spec.seed = seed;
  spec.workers = workers;
  spec.format = format;
  if (!graph_file.empty()) spec.graph_file = graph_file;
  if (!family.empty()) spec.family = family;
  if (!product.empty()) spec.product = product;
  if (!degseq.empty()) spec.degseq = degseq;
  if (!scheme.empty()) spec.scheme = rwlab::parse_scheme(scheme);
  if (trials_opt->count() > 0) {
    if (trials == 0) throw rwlab::ParameterError("--trials must be positive");
    spec.trials = trials;
  }
  if (!out.empty()) spec.out = out;
  for (const auto& [name, value] : extra_values)
    if (!value.empty()) spec.params[name] = value;

  const auto t0 = std::chrono::steady_clock::now();
  const rwlab::ExperimentResult result = rwlab::run_experiment(spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string json_text = summary(spec, result, seconds).dump(2) + "\n";

  if (spec.out) {
    write_file(*spec.out, result.csv);
    write_file(*spec.out + ".json", json_text);
  } else if (format == "json") {
    std::cout << json_text;
  } else {
    std::cout << result.csv;
  }
  for (const auto& c : result.checks)
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " (observed " << c.observed << ")\n";
  return result.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rwlab::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const rwlab::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const rwlab::RejectionFailure& e) {
    std::cerr << "rejection sampling failed: " << e.what() << " (acceptance rate " << e.acceptance_rate << ")\n";
    return kExitNumeric;
  } catch (const rwlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }
}
