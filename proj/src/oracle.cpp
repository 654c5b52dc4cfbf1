#include "hsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsp/errors.hpp"
#include "hsp/solution.hpp"

namespace hsp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

class Incumbent {
 public:
  void offer(double value, std::span<const NodeId> sorted_set) {
    const double tol = 1e-12 * std::max(1.0, std::abs(value_));
    if (!set_ || value > value_ + tol) {
      take(value, sorted_set);
    } else if (value >= value_ - tol &&
               std::lexicographical_compare(sorted_set.begin(), sorted_set.end(), best_.begin(),
                                            best_.end())) {
      take(std::max(value, value_), sorted_set);
    }
  }
  std::vector<NodeId>& set() { return best_; }

 private:
  void take(double value, std::span<const NodeId> s) {
    value_ = value;
    best_.assign(s.begin(), s.end());
    set_ = true;
  }
  std::vector<NodeId> best_;
  double value_ = 0.0;
  bool set_ = false;
};

}  // namespace

ExactResult exact_hsp(const WeightedGraph& g, std::size_t k, std::uint64_t limit) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n)
    throw ParamError("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  const auto total = binomial(n, k);
  if (total > limit)
    throw TooLargeError("C(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                        (total == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                            : std::to_string(total)) +
                        " subsets exceeds limit " + std::to_string(limit));

  ExactResult result;
  Incumbent incumbent;

  // c[1..t] ascending members, c[t+1] = n sentinel (Knuth's Algorithm R layout).
  const std::size_t t = k;
  std::vector<std::size_t> c(t + 2);
  for (std::size_t j = 1; j <= t; ++j) c[j] = j - 1;
  c[t + 1] = n;

  std::vector<NodeId> current(t);
  for (std::size_t j = 0; j < t; ++j) current[j] = static_cast<NodeId>(j);
  SolutionState state(g, current);

  const auto visit = [&] {
    for (std::size_t j = 0; j < t; ++j) current[j] = static_cast<NodeId>(c[j + 1]);
    incumbent.offer(state.objective(), current);
    ++result.subsets_examined;
  };
  const auto move = [&](std::size_t out, std::size_t in) {
    state.apply_swap(static_cast<NodeId>(out), static_cast<NodeId>(in));
  };

  visit();
  if (t == n) {
    // single subset
  } else if (t == 1) {
    for (std::size_t x = 1; x < n; ++x) {
      move(x - 1, x);
      c[1] = x;
      visit();
    }
  } else {
    for (;;) {
      std::size_t j = 2;
      bool try_increase;
      if (t % 2 == 1) {
        if (c[1] + 1 < c[2]) {
          move(c[1], c[1] + 1);
          ++c[1];
          visit();
          continue;
        }
        try_increase = false;
      } else {
        if (c[1] > 0) {
          move(c[1], c[1] - 1);
          --c[1];
          visit();
          continue;
        }
        try_increase = true;
      }

      bool done = false;
      for (;;) {
        if (!try_increase) {
          // Try to decrease c[j]; here c[j] == c[j-1] + 1.
          if (c[j] >= j) {
            move(c[j], j - 2);
            c[j] = c[j - 1];
            c[j - 1] = j - 2;
            break;
          }
          ++j;
          if (j > t) {
            done = true;
            break;
          }
        }
        // Try to increase c[j]; here c[j-1] == j - 2.
        if (c[j] + 1 < c[j + 1]) {
          move(c[j - 1], c[j] + 1);
          c[j - 1] = c[j];
          c[j] = c[j] + 1;
          break;
        }
        ++j;
        if (j > t) {
          done = true;
          break;
        }
        try_increase = false;
      }
      if (done) break;
      visit();
    }
  }

  result.best_set = std::move(incumbent.set());
  result.best_objective = objective_of(g, result.best_set);
  return result;
}

LocalOptResult local_opt_check(const WeightedGraph& g, std::span<const NodeId> nodes,
                               double rel_tol) {
  const std::size_t n = g.node_count();
  std::vector<char> in_set(n, 0);
  for (auto x : nodes) {
    if (x >= n) throw ValidationError("node " + std::to_string(x) + " is not in the graph");
    in_set[x] = 1;
  }
  const double f = objective_of(g, nodes);
  const double threshold = rel_tol * std::max(1.0, std::abs(f));

  LocalOptResult result;
  for (auto u : nodes) {
    for (const auto& nb : g.neighbors(u)) {
      const NodeId v = nb.node;
      if (in_set[v]) continue;
      double gained = 0.0;
      double lost = 0.0;
      for (auto j : nodes) {
        if (j == u) continue;
        gained += g.weight(v, j);
        lost += g.weight(u, j);
      }
      const double delta = gained - lost;
      if (delta > threshold) {
        result.is_local_optimum = false;
        result.witness = SwapWitness{u, v, delta};
        return result;
      }
    }
  }
  return result;
}

}  // namespace hsp
