#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsp/graph.hpp"
#include "hsp/heuristics.hpp"
#include "hsp/report.hpp"

namespace hsp::io {

enum class Format { automatic, edgelist, matrix };

Format parse_format(const std::string& s);

/// A loaded problem instance. `labels[i]` is the original token of node i
/// (edge lists) or its decimal index (matrix files).
struct Instance {
  WeightedGraph graph;
  std::vector<std::string> labels;
  std::optional<std::size_t> declared_k;
  Format format = Format::edgelist;
};

// Edge list: one `u v w` per line, `#` starts a comment, node tokens are
// relabeled 0..n-1 in order of first appearance, repeated pairs are summed
// and zero-weight edges are dropped.
Instance parse_edgelist(std::istream& in);
Instance read_edgelist(const std::filesystem::path& path);

// Matrix: header `n k`, then `i j w` lines with 0 <= i < j < n. Unlisted pairs
// are absent edges; a repeated pair is a ParseError.
Instance parse_matrix(std::istream& in);
Instance read_matrix(const std::filesystem::path& path);

/// Reads either format; `automatic` sniffs the first data line (two tokens
/// means a matrix header).
Instance load_instance(const std::filesystem::path& path, Format format = Format::automatic);

/// Writes `u v w` lines using `labels` when given, node ids otherwise.
void write_edgelist(std::ostream& out, const WeightedGraph& g,
                    std::span<const std::string> labels = {});
void write_edgelist(const std::filesystem::path& path, const WeightedGraph& g,
                    std::span<const std::string> labels = {});
void write_matrix(std::ostream& out, const WeightedGraph& g, std::size_t k);
void write_matrix(const std::filesystem::path& path, const WeightedGraph& g, std::size_t k);

/// Shortest decimal text that parses back to the same double; never
/// locale-dependent.
std::string format_number(double x);

struct RunMeta {
  std::string instance;
  std::string algorithm;
  SolverParams params;
};

nlohmann::json params_to_json(const SolverParams& p);
SolverParams params_from_json(const nlohmann::json& j);

/// Run record with instance id, algorithm, params, seed, k, objective, best
/// set, iterations, wall time and trace.
nlohmann::json run_record(const RunResult& result, const RunMeta& meta);
std::pair<RunMeta, RunResult> parse_run_record(const nlohmann::json& j);

inline constexpr const char* kBenchCsvHeader =
    "instance,algorithm,k,seed,objective,deviation_pct,rank,iterations,wall_ms";

/// Label used in the instance column of aggregate rows.
inline constexpr const char* kMeanRowLabel = "ALL(mean)";
inline constexpr const char* kMedianRowLabel = "ALL(median)";

/// One line per run, then for each algorithm a mean row and a median row
/// carrying the aggregated deviation and rank. Failed runs leave objective,
/// deviation and rank empty.
void write_bench_csv(std::ostream& out, const BenchReport& report);
/// One run record per line.
void write_bench_jsonl(std::ostream& out, const BenchReport& report);

}  // namespace hsp::io
