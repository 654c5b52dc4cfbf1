#include "hsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hsp/errors.hpp"

namespace hsp::bench {

double relative_deviation(double f_star, double f) {
  if (!(f_star > 0.0)) throw ParamError("relative deviation needs f* > 0");
  if (f > f_star) throw LogicError("objective exceeds the pool best f*");
  return 100.0 * (f_star - f) / f_star;
}

std::vector<double> rank_pool(const std::vector<double>& objectives) {
  std::vector<std::size_t> order(objectives.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return objectives[a] > objectives[b]; });
  std::vector<double> ranks(objectives.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && objectives[order[j + 1]] == objectives[order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1 .. j+1)
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

SolverParams AlgorithmSpec::resolve(std::size_t k, std::uint64_t seed) const {
  SolverParams p = solver == Solver::ovns ? ovns_defaults(k) : bvns_defaults(k);
  if (p_min) p.p_min = *p_min;
  if (p_max) p.p_max = *p_max;
  if (p_step) p.p_step = *p_step;
  if (q) p.q = *q;
  if (init_mode) p.init_mode = *init_mode;
  if (init_draws) p.init_draws = *init_draws;
  if (shake_mode) p.shake_mode = *shake_mode;
  if (search_mode) p.search_mode = *search_mode;
  p.seed = seed;
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
}

struct LoadedInstance {
  std::string id;
  io::Instance data;
};

LoadedInstance load(const InstanceSource& src) {
  LoadedInstance li{src.id, {}};
  try {
    if (src.path) {
      li.data = io::load_instance(*src.path, src.format);
    } else if (src.generate) {
      li.data.graph = gen::generate(*src.generate);
      for (std::size_t i = 0; i < li.data.graph.node_count(); ++i)
        li.data.labels.push_back(std::to_string(i));
    } else {
      throw std::runtime_error("no path or generator given");
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("failed to load instance '" + src.id + "': " + e.what());
  }
  return li;
}

Solver parse_solver(const std::string& s) {
  if (s == "ovns") return Solver::ovns;
  if (s == "bvns") return Solver::bvns;
  throw ParseError("unknown solver '" + s + "' (expected ovns|bvns)");
}

gen::GenSpec parse_gen_spec(const nlohmann::json& j) {
  gen::GenSpec g;
  g.family = gen::parse_family(j.at("family").get<std::string>());
  g.n = j.at("n").get<std::size_t>();
  g.seed = j.value("seed", std::uint64_t{0});
  g.m = j.value("m", g.m);
  g.w0 = j.value("w0", g.w0);
  g.delta = j.value("delta", g.delta);
  g.mu = j.value("mu", g.mu);
  g.sigma = j.value("sigma", g.sigma);
  g.p_edge = j.value("p_edge", g.p_edge);
  const std::string weights = j.value("weights", std::string("uniform"));
  if (weights == "uniform") {
    g.weights = gen::UniformWeights{j.value("a", 1.0), j.value("b", 1.0)};
  } else if (weights == "pareto") {
    g.weights = gen::ParetoWeights{j.value("alpha", 2.0), j.value("x_min", 1.0)};
  } else {
    throw ParseError("unknown weight distribution '" + weights + "'");
  }
  return g;
}

}  // namespace

std::uint64_t run_seed(std::uint64_t base_seed, const std::string& instance,
                       const std::string& algorithm, std::size_t k, std::size_t replicate) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ fnv1a(instance));
  h = splitmix64(h ^ fnv1a(algorithm));
  h = splitmix64(h ^ static_cast<std::uint64_t>(k));
  h = splitmix64(h ^ static_cast<std::uint64_t>(replicate));
  return h;
}

BenchConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  BenchConfig cfg;
  try {
    for (const auto& inst : j.at("instances")) {
      InstanceSource src;
      src.id = inst.at("id").get<std::string>();
      if (inst.contains("path")) {
        std::filesystem::path p = inst.at("path").get<std::string>();
        src.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        src.format = io::parse_format(inst.value("format", std::string("auto")));
      } else if (inst.contains("generate")) {
        src.generate = parse_gen_spec(inst.at("generate"));
      } else {
        throw ParseError("instance '" + src.id + "' needs 'path' or 'generate'");
      }
      cfg.instances.push_back(std::move(src));
    }
    for (const auto& alg : j.at("algorithms")) {
      AlgorithmSpec a;
      a.solver = parse_solver(alg.at("solver").get<std::string>());
      a.name = alg.value("name", alg.at("solver").get<std::string>());
      const auto params = alg.value("params", nlohmann::json::object());
      if (params.contains("p_min")) a.p_min = params["p_min"].get<std::size_t>();
      if (params.contains("p_max")) a.p_max = params["p_max"].get<std::size_t>();
      if (params.contains("p_step")) a.p_step = params["p_step"].get<std::size_t>();
      if (params.contains("q")) a.q = params["q"].get<double>();
      if (params.contains("init")) a.init_mode = parse_init_mode(params["init"].get<std::string>());
      if (params.contains("init_draws")) a.init_draws = params["init_draws"].get<std::size_t>();
      if (params.contains("shake"))
        a.shake_mode = parse_shake_mode(params["shake"].get<std::string>());
      if (params.contains("search"))
        a.search_mode = parse_search_mode(params["search"].get<std::string>());
      cfg.algorithms.push_back(std::move(a));
    }
    cfg.k_values = j.value("k_values", std::vector<std::size_t>{});
    cfg.runs_per_cell = j.value("runs_per_cell", std::size_t{1});
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    cfg.threads = j.value("threads", std::size_t{1});
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      Budget budget;
      if (b.contains("iterations")) budget.max_iterations = b.at("iterations").get<std::uint64_t>();
      if (b.contains("seconds"))
        budget.max_wall_time = std::chrono::duration<double>(b.at("seconds").get<double>());
      if (!budget.max_iterations && !budget.max_wall_time)
        throw ParseError("budget needs 'iterations' or 'seconds'");
      cfg.budget = budget;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  // Names key the seeds and the summaries, so they must be unique.
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.algorithms.size(); ++b)
      if (cfg.algorithms[a].name == cfg.algorithms[b].name)
        throw ParseError("duplicate algorithm name '" + cfg.algorithms[a].name + "'");
  if (cfg.runs_per_cell < 1) throw ParseError("runs_per_cell must be >= 1");
  return cfg;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0, path.string());
  }
  try {
    return parse_config(j, path.parent_path());
  } catch (const ParseError& e) {
    throw e.in_source(path.string());
  }
}

std::vector<AlgorithmSummary> summarize(const std::vector<BenchRow>& rows,
                                        const std::vector<std::string>& algorithm_order) {
  std::vector<AlgorithmSummary> out;
  for (const auto& name : algorithm_order) {
    std::vector<double> devs;
    std::vector<double> ranks;
    for (const auto& r : rows) {
      if (!r.ok || r.algorithm != name) continue;
      devs.push_back(r.deviation_pct);
      ranks.push_back(r.rank);
    }
    AlgorithmSummary s;
    s.algorithm = name;
    s.runs = devs.size();
    s.mean_deviation = mean(devs);
    s.median_deviation = median(devs);
    s.mean_rank = mean(ranks);
    s.median_rank = median(ranks);
    out.push_back(s);
  }
  return out;
}

BenchReport run_bench(const BenchConfig& config) {
  std::vector<LoadedInstance> instances;
  instances.reserve(config.instances.size());
  for (const auto& src : config.instances) instances.push_back(load(src));

  struct Task {
    std::size_t instance;
    std::size_t algorithm;
    std::size_t k;
    std::size_t replicate;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::vector<std::size_t> ks = config.k_values;
    if (ks.empty()) {
      if (!instances[i].data.declared_k)
        throw std::runtime_error("instance '" + instances[i].id +
                                 "' declares no k and the config lists no k_values");
      ks.push_back(*instances[i].data.declared_k);
    }
    for (auto k : ks)
      for (std::size_t a = 0; a < config.algorithms.size(); ++a)
        for (std::size_t r = 0; r < config.runs_per_cell; ++r) tasks.push_back({i, a, k, r});
  }

  BenchReport report;
  report.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto& task = tasks[t];
      const auto& inst = instances[task.instance];
      const auto& alg = config.algorithms[task.algorithm];
      BenchRow& row = report.rows[t];
      row.instance = inst.id;
      row.algorithm = alg.name;
      row.k = task.k;
      row.replicate = task.replicate;
      row.seed = run_seed(config.base_seed, inst.id, alg.name, task.k, task.replicate);
      try {
        row.params = alg.resolve(task.k, row.seed);
        row.result = alg.solver == Solver::ovns ? ovns(inst.data.graph, row.params, config.budget)
                                                : bvns(inst.data.graph, row.params, config.budget);
        row.objective = row.result.best_objective;
        row.iterations = row.result.iterations;
        row.wall_ms = row.result.wall_time_s * 1000.0;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Score each (instance, k) pool.
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> pools;
  for (std::size_t t = 0; t < report.rows.size(); ++t) {
    const auto& r = report.rows[t];
    if (r.ok) pools[{r.instance, r.k}].push_back(t);
  }
  for (const auto& [key, members] : pools) {
    std::vector<double> objectives;
    for (auto t : members) objectives.push_back(report.rows[t].objective);
    const double f_star = *std::max_element(objectives.begin(), objectives.end());
    report.cell_best[key] = f_star;
    const auto ranks = rank_pool(objectives);
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto& r = report.rows[members[i]];
      r.rank = ranks[i];
      // An all-zero pool has no meaningful scale; every run ties with f*.
      r.deviation_pct = f_star > 0.0 ? relative_deviation(f_star, r.objective) : 0.0;
    }
  }

  std::vector<std::string> names;
  for (const auto& a : config.algorithms) names.push_back(a.name);
  report.summaries = summarize(report.rows, names);
  return report;
}

}  // namespace hsp::bench
