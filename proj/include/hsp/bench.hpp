#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsp/gen.hpp"
#include "hsp/heuristics.hpp"
#include "hsp/io.hpp"
#include "hsp/report.hpp"

namespace hsp::bench {

/// 100 * (f_star - f) / f_star. Throws ParamError for f_star <= 0 and
/// LogicError when f exceeds f_star.
double relative_deviation(double f_star, double f);

/// Ranks by descending objective, 1 = best; tied entries share the mean of
/// the positions they occupy.
std::vector<double> rank_pool(const std::vector<double>& objectives);

/// Where an instance comes from: a file, or a generator spec.
struct InstanceSource {
  std::string id;
  std::optional<std::filesystem::path> path;
  io::Format format = io::Format::automatic;
  std::optional<gen::GenSpec> generate;
};

enum class Solver { ovns, bvns };

/// A named solver configuration. Unset overrides fall back to the solver's
/// reference defaults for each k.
struct AlgorithmSpec {
  std::string name;
  Solver solver = Solver::ovns;
  std::optional<std::size_t> p_min;
  std::optional<std::size_t> p_max;
  std::optional<std::size_t> p_step;
  std::optional<double> q;
  std::optional<InitMode> init_mode;
  std::optional<std::size_t> init_draws;
  std::optional<ShakeMode> shake_mode;
  std::optional<SearchMode> search_mode;

  SolverParams resolve(std::size_t k, std::uint64_t seed) const;
};

struct BenchConfig {
  std::vector<InstanceSource> instances;
  std::vector<AlgorithmSpec> algorithms;
  /// Empty means "use each instance's declared k".
  std::vector<std::size_t> k_values;
  std::size_t runs_per_cell = 1;
  Budget budget = Budget::iterations(1000);
  std::uint64_t base_seed = 0;
  std::size_t threads = 1;
};

/// Seed of one run, derived from the cell coordinates only.
std::uint64_t run_seed(std::uint64_t base_seed, const std::string& instance,
                       const std::string& algorithm, std::size_t k, std::size_t replicate);

/// Parses a JSON config. Relative instance paths resolve against `base_dir`.
BenchConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
BenchConfig load_config(const std::filesystem::path& path);

/// Runs every (instance, k, algorithm, replicate) cell, then scores each run
/// against its (instance, k) pool. A run that throws becomes a failed row; a
/// failure to load an instance aborts the whole benchmark.
BenchReport run_bench(const BenchConfig& config);

/// Per-algorithm mean/median deviation and rank over the successful rows.
std::vector<AlgorithmSummary> summarize(const std::vector<BenchRow>& rows,
                                        const std::vector<std::string>& algorithm_order);

}  // namespace hsp::bench
