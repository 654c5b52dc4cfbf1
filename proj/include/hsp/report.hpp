#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsp/heuristics.hpp"

namespace hsp {

/// One solver run inside a benchmark.
struct BenchRow {
  std::string instance;
  std::string algorithm;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t replicate = 0;
  bool ok = true;
  std::string error;       // set when !ok
  double objective = 0.0;
  double deviation_pct = 0.0;
  double rank = 0.0;
  std::uint64_t iterations = 0;
  double wall_ms = 0.0;
  SolverParams params;
  RunResult result;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t runs = 0;
  double mean_deviation = 0.0;
  double median_deviation = 0.0;
  double mean_rank = 0.0;
  double median_rank = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  /// Pool maximum f* per (instance, k).
  std::map<std::pair<std::string, std::size_t>, double> cell_best;
  std::vector<AlgorithmSummary> summaries;  // in configuration order
};

}  // namespace hsp
