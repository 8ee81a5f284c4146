#include <doctest.h>

#include "rwlab/errors.hpp"
#include "rwlab/experiments.hpp"

using namespace rwlab;

TEST_CASE("size lists") {
  CHECK(parse_size_list("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
  CHECK(parse_size_list("500,1000") == std::vector<std::size_t>{500, 1000});
  CHECK(parse_size_list("7") == std::vector<std::size_t>{7});
  CHECK_THROWS_AS(parse_size_list("5..2"), ParseError);
  CHECK_THROWS_AS(parse_size_list("a,b"), ParseError);
  CHECK_THROWS_AS(parse_size_list("-3"), ParseError);
}

TEST_CASE("every experiment is described") {
  CHECK(experiment_ids().size() == 11);
  for (const auto& id : experiment_ids()) {
    const std::string text = describe(id);
    CHECK(text.rfind(id, 0) == 0);
    CHECK(text.find("Pass") != std::string::npos);
  }
  CHECK_THROWS_AS(describe("no-such-experiment"), ParameterError);
}

TEST_CASE("experiments are reproducible byte for byte") {
  ExperimentSpec spec;
  spec.id = "mc-calibration";
  spec.family = "cycle:5";
  spec.trials = 2000;
  spec.seed = 42;
  const ExperimentResult a = run_experiment(spec);
  spec.workers = 3;
  const ExperimentResult b = run_experiment(spec);
  CHECK(a.csv == b.csv);
  CHECK(a.csv.rfind("# experiment=mc-calibration seed=42", 0) == 0);
  CHECK_FALSE(a.checks.empty());
}

TEST_CASE("closed forms pass and the run options are echoed") {
  ExperimentSpec spec;
  spec.id = "closed-forms";
  spec.seed = 7;
  spec.params["n"] = "2..6";
  const ExperimentResult r = run_experiment(spec);
  CHECK(r.passed());
  CHECK(r.checks.size() == 5 * 6);
  CHECK(spec.to_json()["params"]["n"] == "2..6");
}

TEST_CASE("graph sources are exclusive") {
  ExperimentSpec spec;
  spec.family = "path:4";
  spec.product = "path:2,path:2";
  CHECK_THROWS_AS(resolve_graph(spec), ParameterError);
  spec.family.reset();
  const auto g = resolve_graph(spec);
  REQUIRE(g.has_value());
  CHECK(g->first.num_vertices() == 4);
  spec.product = "path:2";
  CHECK_THROWS_AS(resolve_graph(spec), ParseError);
}
