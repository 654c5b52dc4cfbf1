#include "hsp/heuristics.hpp"

#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

// Consecutive rejections tolerated before a sampler switches to an explicit
// scan of the remaining candidates.
constexpr int kMaxRejections = 64;

void check_k(const WeightedGraph& g, std::size_t k) {
  if (k < 1 || k > g.node_count())
    throw ParamError("k must lie in [1, " + std::to_string(g.node_count()) + "], got " +
                     std::to_string(k));
}

std::size_t perturbation_cap(std::size_t n, std::size_t k) { return std::min(k, n - k); }

}  // namespace

std::string to_string(InitMode m) { return m == InitMode::drop ? "drop" : "random"; }
std::string to_string(ShakeMode m) {
  return m == ShakeMode::uniform ? "uniform" : "preferential";
}
std::string to_string(SearchMode m) { return m == SearchMode::first ? "first" : "best"; }

InitMode parse_init_mode(const std::string& s) {
  if (s == "drop") return InitMode::drop;
  if (s == "random") return InitMode::random_best_of;
  throw ParamError("unknown init mode '" + s + "' (expected drop|random)");
}
ShakeMode parse_shake_mode(const std::string& s) {
  if (s == "uniform") return ShakeMode::uniform;
  if (s == "preferential") return ShakeMode::preferential;
  throw ParamError("unknown shake mode '" + s + "' (expected uniform|preferential)");
}
SearchMode parse_search_mode(const std::string& s) {
  if (s == "first") return SearchMode::first;
  if (s == "best") return SearchMode::best;
  throw ParamError("unknown search mode '" + s + "' (expected first|best)");
}

std::size_t default_ovns_p_step(std::size_t k) { return std::max<std::size_t>(1, k / 10); }

SolverParams ovns_defaults(std::size_t k) {
  SolverParams p;
  p.k = k;
  p.p_step = default_ovns_p_step(k);
  p.q = 1.0;
  p.init_mode = InitMode::drop;
  p.shake_mode = ShakeMode::preferential;
  p.search_mode = SearchMode::first;
  return p;
}

SolverParams bvns_defaults(std::size_t k) {
  SolverParams p;
  p.k = k;
  p.p_step = 1;
  p.q = 1.0;
  p.init_mode = InitMode::random_best_of;
  p.init_draws = 1000;
  p.shake_mode = ShakeMode::uniform;
  p.search_mode = SearchMode::first;
  return p;
}

std::vector<NodeId> drop_heuristic(const WeightedGraph& g, std::size_t k) {
  check_k(g, k);
  const std::size_t n = g.node_count();
  std::vector<double> gain(g.strengths().begin(), g.strengths().end());
  std::vector<char> alive(n, 1);

  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (NodeId i = 0; i < n; ++i) heap.emplace(gain[i], i);

  for (std::size_t removed = 0; removed < n - k;) {
    const auto [value, x] = heap.top();
    heap.pop();
    if (!alive[x] || value != gain[x]) continue;  // stale entry
    alive[x] = 0;
    ++removed;
    for (const auto& nb : g.neighbors(x)) {
      if (!alive[nb.node]) continue;
      gain[nb.node] -= nb.weight;
      heap.emplace(gain[nb.node], nb.node);
    }
  }

  std::vector<NodeId> out;
  out.reserve(k);
  for (NodeId i = 0; i < n; ++i)
    if (alive[i]) out.push_back(i);
  return out;
}

std::vector<NodeId> sample_uniform_subset(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw ParamError("cannot draw " + std::to_string(k) + " of " + std::to_string(n));
  std::vector<char> chosen(n, 0);
  std::vector<NodeId> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t t = pick(rng);
    const std::size_t x = chosen[t] ? j : t;
    chosen[x] = 1;
    out.push_back(static_cast<NodeId>(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> random_init(const WeightedGraph& g, std::size_t k, std::size_t draws,
                                Rng& rng) {
  check_k(g, k);
  if (draws < 1) throw ParamError("random init needs at least one draw");
  std::vector<char> mark(g.node_count(), 0);
  std::vector<NodeId> best;
  double best_value = -1.0;
  for (std::size_t d = 0; d < draws; ++d) {
    auto subset = sample_uniform_subset(g.node_count(), k, rng);
    for (auto x : subset) mark[x] = 1;
    double value = 0.0;
    for (auto u : subset) {
      for (const auto& nb : g.neighbors(u))
        if (u < nb.node && mark[nb.node]) value += nb.weight;
    }
    for (auto x : subset) mark[x] = 0;
    if (value > best_value) {
      best_value = value;
      best = std::move(subset);
    }
  }
  return best;
}

PreferentialSampler::PreferentialSampler(const WeightedGraph& g)
    : taken_(g.node_count(), 0),
      strengths_(g.strengths().begin(), g.strengths().end()),
      prefix_(g.node_count(), 0.0) {
  double acc = 0.0;
  for (std::size_t i = 0; i < strengths_.size(); ++i) {
    acc += strengths_[i];
    prefix_[i] = acc;
  }
  total_ = acc;
}

std::vector<NodeId> PreferentialSampler::sample(std::span<const char> excluded, std::size_t p,
                                                Rng& rng) const {
  std::vector<NodeId> picked;
  picked.reserve(p);
  if (total_ > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, total_);
    int rejections = 0;
    while (picked.size() < p && rejections < kMaxRejections) {
      const double u = unit(rng);
      const auto idx = static_cast<std::size_t>(
          std::upper_bound(prefix_.begin(), prefix_.end(), u) - prefix_.begin());
      if (idx >= strengths_.size() || strengths_[idx] <= 0.0 || excluded[idx] || taken_[idx]) {
        ++rejections;
        continue;
      }
      rejections = 0;
      taken_[idx] = 1;
      picked.push_back(static_cast<NodeId>(idx));
    }
  }
  if (picked.size() < p) {
    try {
      finish_exact(excluded, picked, p, rng);
    } catch (...) {
      for (auto x : picked) taken_[x] = 0;
      throw;
    }
  }
  for (auto x : picked) taken_[x] = 0;
  return picked;
}

void PreferentialSampler::finish_exact(std::span<const char> excluded, std::vector<NodeId>& picked,
                                       std::size_t p, Rng& rng) const {
  const std::size_t n = strengths_.size();
  while (picked.size() < p) {
    double mass = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (excluded[i] || taken_[i]) continue;
      mass += strengths_[i];
      ++count;
    }
    if (count == 0)
      throw ParamError("cannot draw " + std::to_string(p) + " nodes: only " +
                       std::to_string(picked.size()) + " candidates outside the excluded set");

    std::size_t chosen = n;
    if (mass > 0.0) {
      const double u = std::uniform_real_distribution<double>(0.0, mass)(rng);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i] || taken_[i] || strengths_[i] <= 0.0) continue;
        acc += strengths_[i];
        chosen = i;
        if (u < acc) break;
      }
    } else {
      std::size_t target = std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i] || taken_[i]) continue;
        if (target-- == 0) {
          chosen = i;
          break;
        }
      }
    }
    taken_[chosen] = 1;
    picked.push_back(static_cast<NodeId>(chosen));
  }
}

std::vector<NodeId> sample_preferential(const WeightedGraph& g, std::span<const NodeId> exclude,
                                        std::size_t p, Rng& rng) {
  std::vector<char> excluded(g.node_count(), 0);
  for (auto x : exclude) {
    if (x >= g.node_count())
      throw ValidationError("node " + std::to_string(x) + " is not in the graph");
    excluded[x] = 1;
  }
  const auto available = static_cast<std::size_t>(
      std::count(excluded.begin(), excluded.end(), char{0}));
  if (p > available)
    throw ParamError("cannot draw " + std::to_string(p) + " nodes from " +
                     std::to_string(available) + " candidates");
  PreferentialSampler sampler(g);
  return sampler.sample(excluded, p, rng);
}

namespace {

// p distinct non-members, uniformly.
std::vector<NodeId> sample_uniform_outside(std::span<const char> excluded, std::size_t available,
                                           std::size_t p, Rng& rng) {
  const std::size_t n = excluded.size();
  std::vector<NodeId> picked;
  picked.reserve(p);
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  int rejections = 0;
  while (picked.size() < p && rejections < kMaxRejections) {
    const auto x = static_cast<NodeId>(any(rng));
    if (excluded[x] || std::find(picked.begin(), picked.end(), x) != picked.end()) {
      ++rejections;
      continue;
    }
    rejections = 0;
    picked.push_back(x);
  }
  if (picked.size() < p) {
    std::vector<NodeId> rest;
    rest.reserve(available);
    for (NodeId i = 0; i < n; ++i)
      if (!excluded[i] && std::find(picked.begin(), picked.end(), i) == picked.end())
        rest.push_back(i);
    for (auto idx : sample_uniform_subset(rest.size(), p - picked.size(), rng))
      picked.push_back(rest[idx]);
  }
  return picked;
}

}  // namespace

void neighborhood_change(SolutionState& state, std::size_t p, ShakeMode mode, Rng& rng,
                         const PreferentialSampler* sampler) {
  const std::size_t n = state.graph().node_count();
  const std::size_t k = state.size();
  const std::size_t cap = perturbation_cap(n, k);
  if (p < 1 || p > cap)
    throw ParamError("perturbation size " + std::to_string(p) + " outside [1, " +
                     std::to_string(cap) + "]");

  std::vector<NodeId> outgoing;
  outgoing.reserve(p);
  for (auto slot : sample_uniform_subset(k, p, rng)) outgoing.push_back(state.members()[slot]);

  std::vector<NodeId> incoming;
  if (mode == ShakeMode::preferential) {
    if (sampler == nullptr) throw LogicError("preferential shake requires a sampler");
    incoming = sampler->sample(state.membership(), p, rng);
  } else {
    incoming = sample_uniform_outside(state.membership(), n - k, p, rng);
  }

  // Incoming nodes come from the complement of the pre-shake H, so every pair
  // is a valid swap regardless of order.
  for (std::size_t i = 0; i < p; ++i) {
    SwapAccess::apply(state, outgoing[i], incoming[i],
                      SwapAccess::delta(state, outgoing[i], incoming[i]));
  }
}

SearchStats neighborhood_search(SolutionState& state, const RankedAdjacency& candidates,
                                SearchMode mode) {
  SearchStats stats;
  const auto members = state.members();
  const std::size_t k = members.size();

  if (mode == SearchMode::first) {
    for (;;) {
      ++stats.scans;
      bool moved = false;
      for (std::size_t slot = 0; slot < k && !moved; ++slot) {
        const NodeId u = members[slot];
        const auto row = candidates.row(u);
        const auto weights = candidates.row_weights(u);
        for (std::size_t c = 0; c < row.size(); ++c) {
          const NodeId v = row[c];
          if (state.contains(v)) continue;
          const double delta = SwapAccess::delta(state, u, v, weights[c]);
          if (improves(delta, state.objective())) {
            SwapAccess::apply(state, u, v, delta);
            ++stats.swaps;
            moved = true;
            break;
          }
        }
      }
      if (!moved) return stats;
    }
  }

  for (;;) {
    ++stats.scans;
    double best_delta = 0.0;
    NodeId best_out = 0;
    NodeId best_in = 0;
    bool found = false;
    for (std::size_t slot = 0; slot < k; ++slot) {
      const NodeId u = members[slot];
      const auto row = candidates.row(u);
      const auto weights = candidates.row_weights(u);
      for (std::size_t c = 0; c < row.size(); ++c) {
        const NodeId v = row[c];
        if (state.contains(v)) continue;
        const double delta = SwapAccess::delta(state, u, v, weights[c]);
        if (improves(delta, state.objective()) && (!found || delta > best_delta)) {
          best_delta = delta;
          best_out = u;
          best_in = v;
          found = true;
        }
      }
    }
    if (!found) return stats;
    SwapAccess::apply(state, best_out, best_in, best_delta);
    ++stats.swaps;
  }
}

void validate_params(const WeightedGraph& g, const SolverParams& params) {
  check_k(g, params.k);
  if (!(params.q > 0.0 && params.q <= 1.0))
    throw ParamError("q must lie in (0, 1], got " + std::to_string(params.q));
  if (params.init_mode == InitMode::random_best_of && params.init_draws < 1)
    throw ParamError("random init needs at least one draw");

  const std::size_t k = params.k;
  const std::size_t cap = perturbation_cap(g.node_count(), k);
  if (cap == 0) return;  // k == n: nothing to perturb, the schedule is never used
  const std::size_t p_max = params.p_max == 0 ? cap : params.p_max;
  if (params.p_min < 1 || params.p_min > p_max || p_max > cap)
    throw ParamError("perturbation schedule needs 1 <= p_min <= p_max <= min(k, n-k) = " +
                     std::to_string(cap) + ", got p_min=" + std::to_string(params.p_min) +
                     " p_max=" + std::to_string(p_max));
  if (params.p_step < 1 || (k > 1 && params.p_step > k - 1))
    throw ParamError("p_step must lie in [1, k-1], got " + std::to_string(params.p_step));
}

RunResult run_vns(const WeightedGraph& g, const RankedAdjacency& candidates,
                  std::span<const NodeId> initial, const SolverParams& params,
                  const Budget& budget, Rng& rng) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  validate_params(g, params);
  if (!budget.max_wall_time && !budget.max_iterations)
    throw ParamError("budget needs a wall-time or iteration limit");
  if (initial.size() != params.k)
    throw ValidationError("initial solution has " + std::to_string(initial.size()) +
                          " nodes, expected k=" + std::to_string(params.k));
  if (candidates.node_count() != g.node_count())
    throw ValidationError("candidate lists do not match the graph");

  std::optional<PreferentialSampler> sampler;
  if (params.shake_mode == ShakeMode::preferential) sampler.emplace(g);

  SolutionState best(g, initial);
  SolutionState working = best;

  RunResult result;
  result.seed = params.seed;
  result.trace.push_back({0, best.objective()});

  std::uint64_t iteration = 0;
  const auto exhausted = [&] {
    if (budget.max_iterations && iteration >= *budget.max_iterations) return true;
    if (budget.max_wall_time && Clock::now() - start >= *budget.max_wall_time) return true;
    return false;
  };

  const std::size_t cap = perturbation_cap(g.node_count(), params.k);
  const std::size_t p_max = params.p_max == 0 ? cap : params.p_max;
  const PreferentialSampler* sampler_ptr = sampler ? &*sampler : nullptr;

  bool stop = cap == 0;
  while (!stop && !exhausted()) {
    for (std::size_t p = params.p_min; p <= p_max; p += params.p_step) {
      if (exhausted()) {
        stop = true;
        break;
      }
      working = best;
      neighborhood_change(working, p, params.shake_mode, rng, sampler_ptr);
      neighborhood_search(working, candidates, params.search_mode);
      ++iteration;
      if (improves(working.objective() - best.objective(), best.objective())) {
        std::swap(best, working);
        result.trace.push_back({iteration, best.objective()});
        break;
      }
    }
  }

  result.best_set = best.sorted_members();
  result.best_objective = objective_of(g, result.best_set);
  result.iterations = iteration;
  result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

namespace {

std::vector<NodeId> initial_solution(const WeightedGraph& g, const SolverParams& params, Rng& rng) {
  if (params.init_mode == InitMode::drop) return drop_heuristic(g, params.k);
  return random_init(g, params.k, params.init_draws, rng);
}

}  // namespace

RunResult bvns(const WeightedGraph& g, const SolverParams& params, const Budget& budget) {
  validate_params(g, params);
  Rng rng(params.seed);
  const auto candidates =
      params.q == 1.0 ? natural_order(g) : natural_order(threshold_edges(g, params.q));
  const auto init = initial_solution(g, params, rng);
  return run_vns(g, candidates, init, params, budget, rng);
}

RunResult ovns(const WeightedGraph& g, const SolverParams& params, const Budget& budget) {
  validate_params(g, params);
  Rng rng(params.seed);
  const auto init = initial_solution(g, params, rng);
  const auto candidates = ranked_candidates(g, params.q);
  return run_vns(g, candidates, init, params, budget, rng);
}

}  // namespace hsp
