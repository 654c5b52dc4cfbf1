#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsp/graph.hpp"

namespace hsp {

struct ExactResult {
  std::vector<NodeId> best_set;  // ascending
  double best_objective = 0.0;
  std::uint64_t subsets_examined = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exact HSP by enumerating every k-subset in revolving-door order, one
/// incremental swap per step. Ties go to the lexicographically smallest set.
/// Throws TooLargeError when C(n, k) > limit and ParamError for k outside [1, n].
ExactResult exact_hsp(const WeightedGraph& g, std::size_t k,
                      std::uint64_t limit = kDefaultEnumerationLimit);

struct SwapWitness {
  NodeId out;
  NodeId in;
  double delta;
};

struct LocalOptResult {
  bool is_local_optimum = true;
  std::optional<SwapWitness> witness;  // first improving swap found
};

/// Checks every swap (u in H, v adjacent to u in the full graph, v not in H).
/// Deltas are recomputed by direct weight lookups, independent of any gain
/// table. A swap counts as improving when its delta exceeds
/// `rel_tol * max(1, f(H))`.
LocalOptResult local_opt_check(const WeightedGraph& g, std::span<const NodeId> nodes,
                               double rel_tol = 1e-9);

}  // namespace hsp
