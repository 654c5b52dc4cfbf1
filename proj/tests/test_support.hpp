#pragma once

// Test-only oracles. Everything here works from raw edge triples or dense
// matrices and never touches the incremental machinery under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hsp/graph.hpp"

namespace hsp::testing {

struct RawInstance {
  std::size_t n = 0;
  std::vector<Edge> edges;  // u < v, no repeats
};

/// Erdos-Renyi triples with integer weights in [1, max_w] (or reals when
/// max_w == 0: uniform (0, 10]).
inline RawInstance random_instance(std::size_t n, double p, int max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> iw(1, std::max(1, max_w));
  std::uniform_real_distribution<double> rw(0.0, 10.0);
  RawInstance r;
  r.n = n;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) r.edges.push_back({u, v, max_w > 0 ? double(iw(rng)) : 10.0 - rw(rng)});
  return r;
}

inline std::vector<std::vector<double>> dense(const RawInstance& r) {
  std::vector<std::vector<double>> m(r.n, std::vector<double>(r.n, 0.0));
  for (const auto& e : r.edges) {
    m[e.u][e.v] += e.w;
    m[e.v][e.u] += e.w;
  }
  return m;
}

/// Sum over unordered pairs, double loop.
inline double pairwise_objective(const std::vector<std::vector<double>>& m,
                                 const std::vector<NodeId>& nodes) {
  double total = 0.0;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b) total += m[nodes[a]][nodes[b]];
  return total;
}

/// Exhaustive optimum, enumerating k-subsets in reverse lexicographic order
/// with a from-scratch objective per subset.
inline double brute_force_optimum(const std::vector<std::vector<double>>& m, std::size_t k) {
  const std::size_t n = m.size();
  std::vector<NodeId> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<NodeId>(n - k + i);
  double best = -1.0;
  for (;;) {
    best = std::max(best, pairwise_objective(m, idx));
    // previous combination in lexicographic order
    std::size_t i = k;
    while (i > 0) {
      --i;
      const std::size_t floor_i = i == 0 ? 0 : idx[i - 1] + 1;
      if (idx[i] > floor_i) {
        --idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = static_cast<NodeId>(n - k + j);
        goto next;
      }
    }
    return best;
  next:;
  }
}

inline bool rel_close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace hsp::testing
