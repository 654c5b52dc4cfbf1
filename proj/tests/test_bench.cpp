#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "hsp/bench.hpp"
#include "hsp/errors.hpp"
#include "test_support.hpp"

using namespace hsp;

namespace {

bench::BenchConfig small_config() {
  bench::BenchConfig cfg;
  gen::GenSpec spec;
  spec.family = gen::Family::bbv;
  spec.n = 60;
  spec.seed = 4;
  cfg.instances.push_back({"bbv60", std::nullopt, io::Format::automatic, spec});
  cfg.algorithms.push_back({.name = "ovns", .solver = bench::Solver::ovns});
  cfg.k_values = {6};
  cfg.runs_per_cell = 2;
  cfg.budget = Budget::iterations(50);
  return cfg;
}

}  // namespace

TEST_CASE("relative_deviation") {
  CHECK(bench::relative_deviation(100.0, 95.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(bench::relative_deviation(100.0, 100.0) == 0.0);
  CHECK_THROWS_AS(bench::relative_deviation(0.0, 0.0), ParamError);
  CHECK_THROWS_AS(bench::relative_deviation(-1.0, -2.0), ParamError);
  CHECK_THROWS_AS(bench::relative_deviation(10.0, 11.0), LogicError);
}

TEST_CASE("rank_pool: order and ties") {
  CHECK(bench::rank_pool({10, 5, 7}) == std::vector<double>{1, 3, 2});
  CHECK(bench::rank_pool({4, 4}) == std::vector<double>{1.5, 1.5});
  CHECK(bench::rank_pool({3, 9, 3, 3}) == std::vector<double>{3, 1, 3, 3});
  for (std::size_t n = 1; n < 40; ++n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>((i * 7) % 5);
    const auto r = bench::rank_pool(xs);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(n * (n + 1) / 2.0));
  }
}

TEST_CASE("run_bench: two replicates of one algorithm") {
  const auto report = bench::run_bench(small_config());
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].seed != report.rows[1].seed);
  const double best = std::max(report.rows[0].objective, report.rows[1].objective);
  CHECK(report.cell_best.at({"bbv60", 6}) == best);
  int zero = 0;
  for (const auto& r : report.rows) {
    CHECK(r.ok);
    CHECK(r.iterations == 50);
    zero += r.deviation_pct == 0.0;
    CHECK(r.result.best_set.size() == 6);
  }
  CHECK(zero >= 1);
  REQUIRE(report.summaries.size() == 1);
  CHECK(report.summaries[0].runs == 2);
}

TEST_CASE("run_bench: results do not depend on thread count") {
  auto cfg = small_config();
  cfg.algorithms.push_back({.name = "bvns", .solver = bench::Solver::bvns});
  cfg.k_values = {3, 6, 12};
  cfg.runs_per_cell = 3;
  cfg.threads = 1;
  const auto serial = bench::run_bench(cfg);
  cfg.threads = 4;
  const auto parallel = bench::run_bench(cfg);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].seed == parallel.rows[i].seed);
    CHECK(serial.rows[i].objective == parallel.rows[i].objective);
    CHECK(serial.rows[i].result.best_set == parallel.rows[i].result.best_set);
    CHECK(serial.rows[i].rank == parallel.rows[i].rank);
  }
}

TEST_CASE("run_seed depends on every coordinate") {
  const auto s = bench::run_seed(1, "a", "ovns", 5, 0);
  CHECK(s == bench::run_seed(1, "a", "ovns", 5, 0));
  CHECK(s != bench::run_seed(2, "a", "ovns", 5, 0));
  CHECK(s != bench::run_seed(1, "b", "ovns", 5, 0));
  CHECK(s != bench::run_seed(1, "a", "bvns", 5, 0));
  CHECK(s != bench::run_seed(1, "a", "ovns", 6, 0));
  CHECK(s != bench::run_seed(1, "a", "ovns", 5, 1));
}

TEST_CASE("run_bench: a failing run becomes a failed row") {
  auto cfg = small_config();
  cfg.k_values = {6, 61};  // k > n fails parameter validation
  const auto report = bench::run_bench(cfg);
  REQUIRE(report.rows.size() == 4);
  std::size_t failed = 0;
  for (const auto& r : report.rows) {
    if (r.k == 61) {
      CHECK_FALSE(r.ok);
      CHECK_FALSE(r.error.empty());
      ++failed;
    } else {
      CHECK(r.ok);
    }
  }
  CHECK(failed == 2);
  CHECK(report.summaries[0].runs == 2);
}

TEST_CASE("run_bench: an unreadable instance aborts") {
  auto cfg = small_config();
  cfg.instances.push_back({"ghost", std::filesystem::path("/nonexistent/ghost.txt")});
  CHECK_THROWS_WITH_AS(bench::run_bench(cfg), doctest::Contains("ghost"), std::runtime_error);
}

TEST_CASE("parse_config") {
  const auto j = nlohmann::json::parse(R"({
    "instances": [
      {"id": "file", "path": "graph.txt", "format": "edgelist"},
      {"id": "gen", "generate": {"family": "gnp", "n": 50, "p_edge": 0.2, "weights": "pareto", "alpha": 1.5}}
    ],
    "algorithms": [
      {"name": "fast", "solver": "ovns", "params": {"q": 0.5, "search": "best", "init": "random"}},
      {"solver": "bvns"}
    ],
    "k_values": [5, 10],
    "runs_per_cell": 4,
    "base_seed": 7,
    "threads": 2,
    "budget": {"seconds": 1.5}
  })");
  const auto cfg = bench::parse_config(j, "/data");
  REQUIRE(cfg.instances.size() == 2);
  CHECK(*cfg.instances[0].path == std::filesystem::path("/data/graph.txt"));
  CHECK(cfg.instances[0].format == io::Format::edgelist);
  REQUIRE(cfg.instances[1].generate.has_value());
  CHECK(cfg.instances[1].generate->family == gen::Family::gnp_weighted);
  CHECK(std::get<gen::ParetoWeights>(cfg.instances[1].generate->weights).alpha == 1.5);
  REQUIRE(cfg.algorithms.size() == 2);
  CHECK(cfg.algorithms[0].name == "fast");
  CHECK(cfg.algorithms[0].q == 0.5);
  CHECK(cfg.algorithms[0].search_mode == SearchMode::best);
  CHECK(cfg.algorithms[1].name == "bvns");
  CHECK(cfg.algorithms[1].solver == bench::Solver::bvns);
  const auto p = cfg.algorithms[0].resolve(10, 3);
  CHECK(p.init_mode == InitMode::random_best_of);
  CHECK(p.p_step == default_ovns_p_step(10));
  CHECK(p.seed == 3);
  CHECK(cfg.k_values == std::vector<std::size_t>{5, 10});
  CHECK(cfg.runs_per_cell == 4);
  CHECK(cfg.base_seed == 7);
  CHECK(cfg.threads == 2);
  CHECK(cfg.budget.max_wall_time->count() == 1.5);
  CHECK_FALSE(cfg.budget.max_iterations.has_value());

  CHECK_THROWS_AS(bench::parse_config(nlohmann::json::parse(R"({"instances": []})")), ParseError);
  CHECK_THROWS_AS(bench::parse_config(nlohmann::json::parse(
                      R"({"instances": [], "algorithms": [{"solver": "tabu"}]})")),
                  ParseError);
  CHECK_THROWS_AS(bench::parse_config(nlohmann::json::parse(
                      R"({"instances": [], "algorithms": [{"solver": "ovns"}, {"solver": "ovns"}]})")),
                  ParseError);
}
