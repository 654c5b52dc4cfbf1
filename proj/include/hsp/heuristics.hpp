#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hsp/graph.hpp"
#include "hsp/solution.hpp"

namespace hsp {

using Rng = std::mt19937_64;

enum class InitMode { drop, random_best_of };
enum class ShakeMode { uniform, preferential };
enum class SearchMode { first, best };

std::string to_string(InitMode m);
std::string to_string(ShakeMode m);
std::string to_string(SearchMode m);
InitMode parse_init_mode(const std::string& s);
ShakeMode parse_shake_mode(const std::string& s);
SearchMode parse_search_mode(const std::string& s);

/// Tuning knobs shared by both VNS drivers.
///
/// `p_max == 0` means "as large as allowed", i.e. min(k, n - k).
struct SolverParams {
  std::size_t k = 1;
  std::size_t p_min = 1;
  std::size_t p_max = 0;
  std::size_t p_step = 1;
  double q = 1.0;
  InitMode init_mode = InitMode::drop;
  std::size_t init_draws = 1000;
  ShakeMode shake_mode = ShakeMode::preferential;
  SearchMode search_mode = SearchMode::first;
  std::uint64_t seed = 0;
};

/// Reference parameterization for the opportunistic variant:
/// drop init, preferential shake, first improvement, q = 1, p_step = max(1, floor(k/10)).
SolverParams ovns_defaults(std::size_t k);
/// Reference parameterization for the basic variant:
/// best of 1000 random draws, uniform shake, first improvement, p_step = 1.
SolverParams bvns_defaults(std::size_t k);

/// max(1, floor(k / 10)).
std::size_t default_ovns_p_step(std::size_t k);

/// Stopping rule. Checked once per optimization cycle; at least one limit
/// must be set.
struct Budget {
  std::optional<std::chrono::duration<double>> max_wall_time;
  std::optional<std::uint64_t> max_iterations;

  static Budget iterations(std::uint64_t n) { return Budget{std::nullopt, n}; }
  static Budget seconds(double s) {
    return Budget{std::chrono::duration<double>(s), std::nullopt};
  }
};

struct TraceEvent {
  std::uint64_t iteration;
  double objective;
};

struct RunResult {
  std::vector<NodeId> best_set;  // ascending
  double best_objective = 0.0;
  std::uint64_t iterations = 0;
  double wall_time_s = 0.0;
  std::vector<TraceEvent> trace;  // starts with the initial solution at iteration 0
  std::uint64_t seed = 0;
};

/// Greedy peeling: start from V and repeatedly drop the member with the
/// smallest within-set weighted degree (lowest id on ties) until k remain.
/// Returns the survivors in ascending order.
std::vector<NodeId> drop_heuristic(const WeightedGraph& g, std::size_t k);

/// Uniform k-subset of 0..n-1 (Floyd's algorithm), ascending.
std::vector<NodeId> sample_uniform_subset(std::size_t n, std::size_t k, Rng& rng);

/// Best of `draws` uniform k-subsets; the first one wins on ties.
std::vector<NodeId> random_init(const WeightedGraph& g, std::size_t k, std::size_t draws, Rng& rng);

/// Draws nodes outside an excluded set with probability proportional to their
/// strength, renormalized over the remaining candidates after each pick.
/// Falls back to uniform choice once every remaining candidate has zero
/// strength. Holds per-call scratch space, so one instance per thread.
class PreferentialSampler {
 public:
  explicit PreferentialSampler(const WeightedGraph& g);

  /// `excluded[x]` marks nodes that may not be drawn. Throws ParamError when
  /// fewer than p candidates remain.
  std::vector<NodeId> sample(std::span<const char> excluded, std::size_t p, Rng& rng) const;

 private:
  void finish_exact(std::span<const char> excluded, std::vector<NodeId>& picked, std::size_t p,
                    Rng& rng) const;

  mutable std::vector<char> taken_;
  std::vector<double> strengths_;
  std::vector<double> prefix_;  // prefix_[i] = s_0 + ... + s_i
  double total_ = 0.0;
};

/// One-shot convenience over PreferentialSampler.
std::vector<NodeId> sample_preferential(const WeightedGraph& g, std::span<const NodeId> exclude,
                                        std::size_t p, Rng& rng);

/// Shake: swap a uniformly chosen p-subset of H for p nodes of the complement,
/// drawn uniformly or preferentially. `sampler` is required for the
/// preferential mode.
void neighborhood_change(SolutionState& state, std::size_t p, ShakeMode mode, Rng& rng,
                         const PreferentialSampler* sampler = nullptr);

struct SearchStats {
  std::size_t swaps = 0;
  std::size_t scans = 0;  // passes over the candidate list, including the final unsuccessful one
};

/// 1-swap descent over member-adjacent candidates.
///
/// For each member u (slot order) the candidates are the non-members listed
/// in `candidates.row(u)`. First improvement applies the first positive move
/// and restarts from the first slot; best improvement applies the best move of
/// a full pass. Deltas always come from the state's full graph.
SearchStats neighborhood_search(SolutionState& state, const RankedAdjacency& candidates,
                                SearchMode mode);

/// Relative tolerance below which a delta counts as no change.
inline constexpr double kImprovementTolerance = 1e-12;

inline bool improves(double delta, double reference) noexcept {
  return delta > kImprovementTolerance * std::max(1.0, reference < 0 ? -reference : reference);
}

/// Throws ParamError when `params` is inconsistent with `g` (k range,
/// perturbation schedule, q, draw count).
void validate_params(const WeightedGraph& g, const SolverParams& params);

/// Basic VNS: random-best-of init by default, uniform shake, id-ordered
/// candidate lists.
RunResult bvns(const WeightedGraph& g, const SolverParams& params, const Budget& budget);

/// Opportunistic VNS: drop init by default, preferential shake,
/// weight-ranked candidates over the q-thresholded graph.
RunResult ovns(const WeightedGraph& g, const SolverParams& params, const Budget& budget);

/// Variant of ovns/bvns starting from a caller-supplied solution.
RunResult run_vns(const WeightedGraph& g, const RankedAdjacency& candidates,
                  std::span<const NodeId> initial, const SolverParams& params,
                  const Budget& budget, Rng& rng);

}  // namespace hsp
