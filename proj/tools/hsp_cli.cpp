// hsp: command-line front end for the heaviest-k-subgraph toolkit.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hsp/bench.hpp"
#include "hsp/errors.hpp"
#include "hsp/gen.hpp"
#include "hsp/heuristics.hpp"
#include "hsp/io.hpp"
#include "hsp/oracle.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultIterBudget = 10000;

struct SolveOptions {
  std::string instance;
  std::string format = "auto";
  std::string algo = "ovns";
  std::size_t k = 0;
  std::optional<double> q;
  std::optional<std::size_t> p_min;
  std::optional<std::size_t> p_max;
  std::optional<std::size_t> p_step;
  std::optional<std::string> init;
  std::optional<std::size_t> init_draws;
  std::optional<std::string> shake;
  std::optional<std::string> search;
  std::uint64_t seed = 0;
  std::optional<double> time_budget;
  std::optional<std::uint64_t> iter_budget;
  bool trace = false;
  bool json = false;
};

struct ExactOptions {
  std::string instance;
  std::string format = "auto";
  std::size_t k = 0;
  std::uint64_t limit = hsp::kDefaultEnumerationLimit;
  bool json = false;
};

struct GenOptions {
  std::string family = "bbv";
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::size_t m = 2;
  double w0 = 1.0;
  double delta = 1.0;
  double mu = 50.0;
  double sigma = 10.0;
  double p_edge = 0.1;
  std::string weights = "uniform";
  double a = 1.0;
  double b = 1.0;
  double alpha = 2.0;
  double x_min = 1.0;
  std::string out;
  std::string format = "edgelist";
  std::optional<std::size_t> k;
  bool json = false;
};

struct BenchOptions {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::size_t> threads;
  bool json = false;
};

std::string join_labels(const std::vector<hsp::NodeId>& nodes, const std::vector<std::string>& labels) {
  std::string s;
  for (auto x : nodes) {
    if (!s.empty()) s += ' ';
    s += labels.empty() ? std::to_string(x) : labels[x];
  }
  return s;
}

nlohmann::json label_list(const std::vector<hsp::NodeId>& nodes, const std::vector<std::string>& labels) {
  auto out = nlohmann::json::array();
  for (auto x : nodes) out.push_back(labels.empty() ? std::to_string(x) : labels[x]);
  return out;
}

int run_solve(const SolveOptions& o) {
  const auto inst = hsp::io::load_instance(o.instance, hsp::io::parse_format(o.format));
  const bool is_ovns = o.algo == "ovns";
  auto params = is_ovns ? hsp::ovns_defaults(o.k) : hsp::bvns_defaults(o.k);
  if (o.q) params.q = *o.q;
  if (o.p_min) params.p_min = *o.p_min;
  if (o.p_max) params.p_max = *o.p_max;
  if (o.p_step) params.p_step = *o.p_step;
  if (o.init) params.init_mode = hsp::parse_init_mode(*o.init);
  if (o.init_draws) params.init_draws = *o.init_draws;
  if (o.shake) params.shake_mode = hsp::parse_shake_mode(*o.shake);
  if (o.search) params.search_mode = hsp::parse_search_mode(*o.search);
  params.seed = o.seed;

  hsp::Budget budget;
  if (o.time_budget) budget.max_wall_time = std::chrono::duration<double>(*o.time_budget);
  if (o.iter_budget) budget.max_iterations = *o.iter_budget;
  if (!o.time_budget && !o.iter_budget) budget.max_iterations = kDefaultIterBudget;

  const auto result = is_ovns ? hsp::ovns(inst.graph, params, budget)
                              : hsp::bvns(inst.graph, params, budget);

  if (o.json) {
    auto rec = hsp::io::run_record(result, {o.instance, o.algo, params});
    rec["best_labels"] = label_list(result.best_set, inst.labels);
    if (!o.trace) rec.erase("trace");
    std::cout << rec.dump(2) << '\n';
    return 0;
  }
  std::cout << "objective: " << hsp::io::format_number(result.best_objective) << '\n'
            << "members: " << join_labels(result.best_set, inst.labels) << '\n'
            << "iterations: " << result.iterations << '\n'
            << "wall_time_s: " << hsp::io::format_number(result.wall_time_s) << '\n';
  if (o.trace) {
    for (const auto& ev : result.trace)
      std::cout << "trace: " << ev.iteration << ' ' << hsp::io::format_number(ev.objective) << '\n';
  }
  return 0;
}

int run_exact(const ExactOptions& o) {
  const auto inst = hsp::io::load_instance(o.instance, hsp::io::parse_format(o.format));
  const auto result = hsp::exact_hsp(inst.graph, o.k, o.limit);
  if (o.json) {
    nlohmann::json j = {{"instance", o.instance},
                        {"k", o.k},
                        {"best_objective", result.best_objective},
                        {"best_set", result.best_set},
                        {"best_labels", label_list(result.best_set, inst.labels)},
                        {"subsets_examined", result.subsets_examined}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "objective: " << hsp::io::format_number(result.best_objective) << '\n'
            << "members: " << join_labels(result.best_set, inst.labels) << '\n'
            << "subsets_examined: " << result.subsets_examined << '\n';
  return 0;
}

int run_gen(const GenOptions& o) {
  hsp::gen::GenSpec spec;
  spec.family = hsp::gen::parse_family(o.family);
  spec.n = o.n;
  spec.seed = o.seed;
  spec.m = o.m;
  spec.w0 = o.w0;
  spec.delta = o.delta;
  spec.mu = o.mu;
  spec.sigma = o.sigma;
  spec.p_edge = o.p_edge;
  if (o.weights == "pareto")
    spec.weights = hsp::gen::ParetoWeights{o.alpha, o.x_min};
  else
    spec.weights = hsp::gen::UniformWeights{o.a, o.b};

  const auto g = hsp::gen::generate(spec);
  if (o.format == "matrix")
    hsp::io::write_matrix(o.out, g, o.k.value_or(std::max<std::size_t>(1, o.n / 10)));
  else
    hsp::io::write_edgelist(o.out, g);

  if (o.json) {
    std::cout << nlohmann::json{{"out", o.out},
                                {"family", hsp::gen::to_string(spec.family)},
                                {"n", g.node_count()},
                                {"edges", g.edge_count()},
                                {"total_weight", g.total_weight()}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "wrote " << o.out << ": n=" << g.node_count() << " edges=" << g.edge_count()
              << '\n';
  }
  return 0;
}

int run_bench(const BenchOptions& o) {
  auto config = hsp::bench::load_config(o.config);
  if (o.threads) config.threads = *o.threads;
  const auto report = hsp::bench::run_bench(config);

  const std::filesystem::path dir = o.out_dir;
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / "bench.csv";
  const auto jsonl_path = dir / "runs.jsonl";
  {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    hsp::io::write_bench_csv(csv, report);
    if (!csv) throw std::runtime_error("write failed for " + csv_path.string());
  }
  {
    std::ofstream jsonl(jsonl_path);
    if (!jsonl) throw std::runtime_error("cannot write " + jsonl_path.string());
    hsp::io::write_bench_jsonl(jsonl, report);
    if (!jsonl) throw std::runtime_error("write failed for " + jsonl_path.string());
  }

  std::size_t failed = 0;
  for (const auto& r : report.rows) failed += r.ok ? 0 : 1;
  if (o.json) {
    auto summaries = nlohmann::json::array();
    for (const auto& s : report.summaries)
      summaries.push_back({{"algorithm", s.algorithm},
                           {"runs", s.runs},
                           {"mean_deviation", s.mean_deviation},
                           {"median_deviation", s.median_deviation},
                           {"mean_rank", s.mean_rank},
                           {"median_rank", s.median_rank}});
    std::cout << nlohmann::json{{"csv", csv_path.string()},
                                {"jsonl", jsonl_path.string()},
                                {"runs", report.rows.size()},
                                {"failed", failed},
                                {"summaries", summaries}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "runs: " << report.rows.size() << " (failed: " << failed << ")\n";
    for (const auto& s : report.summaries)
      std::cout << s.algorithm << ": mean_dev=" << hsp::io::format_number(s.mean_deviation)
                << "% median_dev=" << hsp::io::format_number(s.median_deviation)
                << "% mean_rank=" << hsp::io::format_number(s.mean_rank)
                << " median_rank=" << hsp::io::format_number(s.median_rank) << '\n';
    std::cout << "wrote " << csv_path.string() << " and " << jsonl_path.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heaviest k-subgraph solvers (OVNS, BVNS), exact oracle, generators and benchmark harness"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* cmd_solve = app.add_subcommand("solve", "Run OVNS or BVNS on an instance");
  cmd_solve->add_option("instance", solve.instance, "Instance file (edge list or matrix)")->required();
  cmd_solve->add_option("--format", solve.format, "Instance format")
      ->check(CLI::IsMember({"auto", "edgelist", "matrix"}))
      ->capture_default_str();
  cmd_solve->add_option("--algo", solve.algo, "Solver")
      ->check(CLI::IsMember({"ovns", "bvns"}))
      ->capture_default_str();
  cmd_solve->add_option("--k", solve.k, "Subgraph size")->required()->check(CLI::PositiveNumber);
  cmd_solve->add_option("--q", solve.q, "Edge-weight quantile kept for the search [default: 1]")
      ->check(CLI::Validator(
          [](std::string& v) {
            double q = 0.0;
            if (!CLI::detail::lexical_cast(v, q) || !(q > 0.0 && q <= 1.0))
              return std::string("q must lie in (0, 1]");
            return std::string{};
          },
          "(0,1]"));
  cmd_solve->add_option("--p-min", solve.p_min, "Smallest perturbation [default: 1]");
  cmd_solve->add_option("--p-max", solve.p_max, "Largest perturbation [default: min(k, n-k)]");
  cmd_solve->add_option("--p-step", solve.p_step,
                        "Perturbation increment [default: max(1, floor(k/10)) for ovns, 1 for bvns]");
  cmd_solve->add_option("--init", solve.init, "Initialization [default: drop for ovns, random for bvns]")
      ->check(CLI::IsMember({"drop", "random"}));
  cmd_solve->add_option("--init-draws", solve.init_draws, "Draws for random init [default: 1000]")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--shake", solve.shake,
                        "Neighborhood change [default: preferential for ovns, uniform for bvns]")
      ->check(CLI::IsMember({"uniform", "preferential"}));
  cmd_solve->add_option("--search", solve.search, "Neighborhood search strategy [default: first]")
      ->check(CLI::IsMember({"first", "best"}));
  cmd_solve->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
  cmd_solve->add_option("--time-budget", solve.time_budget, "Wall-time limit in seconds [default: none]")
      ->check(CLI::NonNegativeNumber);
  cmd_solve->add_option("--iter-budget", solve.iter_budget,
                        "Optimization-cycle limit [default: 10000 when no budget is given]");
  cmd_solve->add_flag("--trace", solve.trace, "Print improvement events");
  cmd_solve->add_flag("--json", solve.json, "Emit a JSON run record");

  ExactOptions exact;
  auto* cmd_exact = app.add_subcommand("exact", "Solve exactly by enumerating all k-subsets");
  cmd_exact->add_option("instance", exact.instance, "Instance file")->required();
  cmd_exact->add_option("--format", exact.format, "Instance format")
      ->check(CLI::IsMember({"auto", "edgelist", "matrix"}))
      ->capture_default_str();
  cmd_exact->add_option("--k", exact.k, "Subgraph size")->required()->check(CLI::PositiveNumber);
  cmd_exact->add_option("--limit", exact.limit, "Maximum number of subsets")->capture_default_str();
  cmd_exact->add_flag("--json", exact.json, "Emit JSON");

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic instance");
  cmd_gen->add_option("--family", gen.family, "Generator family")
      ->check(CLI::IsMember({"bbv", "mdp_gaussian", "gnp_weighted"}))
      ->capture_default_str();
  cmd_gen->add_option("--n", gen.n, "Node count")->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  cmd_gen->add_option("--m", gen.m, "bbv: edges per new node")->capture_default_str();
  cmd_gen->add_option("--w0", gen.w0, "bbv: initial edge weight")->capture_default_str();
  cmd_gen->add_option("--delta", gen.delta, "bbv: weight reinforcement")->capture_default_str();
  cmd_gen->add_option("--mu", gen.mu, "mdp_gaussian: weight mean")->capture_default_str();
  cmd_gen->add_option("--sigma", gen.sigma, "mdp_gaussian: weight std-dev")->capture_default_str();
  cmd_gen->add_option("--p-edge", gen.p_edge, "gnp_weighted: edge probability")->capture_default_str();
  cmd_gen->add_option("--weights", gen.weights, "gnp_weighted: weight distribution")
      ->check(CLI::IsMember({"uniform", "pareto"}))
      ->capture_default_str();
  cmd_gen->add_option("--a", gen.a, "uniform weights: lower bound")->capture_default_str();
  cmd_gen->add_option("--b", gen.b, "uniform weights: upper bound")->capture_default_str();
  cmd_gen->add_option("--alpha", gen.alpha, "pareto weights: tail index")->capture_default_str();
  cmd_gen->add_option("--x-min", gen.x_min, "pareto weights: scale")->capture_default_str();
  cmd_gen->add_option("--out", gen.out, "Output path")->required();
  cmd_gen->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"edgelist", "matrix"}))
      ->capture_default_str();
  cmd_gen->add_option("--k", gen.k, "k written to a matrix header [default: max(1, n/10)]");
  cmd_gen->add_flag("--json", gen.json, "Emit JSON summary");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run a benchmark matrix from a JSON config");
  cmd_bench->add_option("--config", bench.config, "Benchmark config (JSON)")->required();
  cmd_bench->add_option("--out-dir", bench.out_dir, "Directory for bench.csv and runs.jsonl")
      ->capture_default_str();
  cmd_bench->add_option("--threads", bench.threads, "Worker threads [default: from config]");
  cmd_bench->add_flag("--json", bench.json, "Emit JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_solve) return run_solve(solve);
    if (*cmd_exact) return run_exact(exact);
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_bench) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
