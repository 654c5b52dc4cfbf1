#include "hsp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hsp/errors.hpp"

namespace hsp::gen {

namespace {

using Rng = std::mt19937_64;

// Fenwick tree over nonnegative masses with inverse-CDF search.
class MassTree {
 public:
  explicit MassTree(std::size_t n) : tree_(n + 1, 0.0) {
    while (top_ * 2 <= n) top_ *= 2;
  }

  void add(std::size_t i, double v) {
    total_ += v;
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += v;
  }
  double total() const { return total_; }

  // Smallest index whose prefix sum exceeds u.
  std::size_t find(double u) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= u) {
        pos += step;
        u -= tree_[pos];
      }
    }
    return std::min(pos, tree_.size() - 2);
  }

 private:
  std::vector<double> tree_;
  std::size_t top_ = 1;
  double total_ = 0.0;
};

}  // namespace

WeightedGraph bbv(std::size_t n, std::size_t m, double w0, double delta, std::uint64_t seed) {
  if (m < 1 || n <= m) throw ParamError("bbv needs n > m >= 1");
  if (!(w0 > 0.0) || !std::isfinite(w0)) throw ParamError("bbv needs w0 > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ParamError("bbv needs delta >= 0");

  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> incident(n);
  std::vector<double> strength(n, 0.0);
  MassTree mass(n);

  const auto link = [&](std::size_t a, std::size_t b, double w) {
    incident[a].push_back(edges.size());
    incident[b].push_back(edges.size());
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
    strength[a] += w;
    strength[b] += w;
    mass.add(a, w);
    mass.add(b, w);
  };

  for (std::size_t a = 0; a <= m; ++a)
    for (std::size_t b = a + 1; b <= m; ++b) link(a, b, w0);

  std::vector<std::size_t> targets;
  for (std::size_t fresh = m + 1; fresh < n; ++fresh) {
    targets.clear();
    int misses = 0;
    while (targets.size() < m && misses < 1000) {
      const double u = std::uniform_real_distribution<double>(0.0, mass.total())(rng);
      const std::size_t i = mass.find(u);
      if (i >= fresh || strength[i] <= 0.0 ||
          std::find(targets.begin(), targets.end(), i) != targets.end()) {
        ++misses;
        continue;
      }
      targets.push_back(i);
    }
    while (targets.size() < m) {
      // Exact draw over the nodes not yet chosen.
      double remaining = 0.0;
      for (std::size_t i = 0; i < fresh; ++i)
        if (std::find(targets.begin(), targets.end(), i) == targets.end()) remaining += strength[i];
      const double u = std::uniform_real_distribution<double>(0.0, remaining)(rng);
      double acc = 0.0;
      std::size_t pick = fresh;
      for (std::size_t i = 0; i < fresh; ++i) {
        if (std::find(targets.begin(), targets.end(), i) != targets.end()) continue;
        acc += strength[i];
        pick = i;
        if (u < acc) break;
      }
      targets.push_back(pick);
    }

    for (auto i : targets) {
      if (delta > 0.0) {
        const double s_i = strength[i];
        for (auto e : incident[i]) {
          const double inc = delta * edges[e].w / s_i;
          edges[e].w += inc;
          const std::size_t other = edges[e].u == i ? edges[e].v : edges[e].u;
          strength[other] += inc;
          mass.add(other, inc);
        }
        strength[i] += delta;
        mass.add(i, delta);
      }
      link(fresh, i, w0);
    }
  }
  return build_graph(edges, false, n);
}

WeightedGraph mdp_gaussian(std::size_t n, double mu, double sigma, std::uint64_t seed) {
  if (n < 2) throw ParamError("mdp_gaussian needs n >= 2");
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0)
    throw ParamError("mdp_gaussian needs finite mu and sigma >= 0");
  if (mu < 0.0 && (sigma == 0.0 || mu < -4.0 * sigma))
    throw ParamError("mdp_gaussian: mu too far below zero for truncated sampling");

  Rng rng(seed);
  std::normal_distribution<double> normal(mu, sigma);
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = mu;
      if (sigma > 0.0) {
        do {
          w = normal(rng);
        } while (w < 0.0);
      }
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
    }
  }
  return build_graph(edges, false, n);
}

WeightedGraph gnp_weighted(std::size_t n, double p_edge, const WeightDist& weights,
                           std::uint64_t seed) {
  if (n < 1) throw ParamError("gnp_weighted needs n >= 1");
  if (!(p_edge > 0.0 && p_edge <= 1.0)) throw ParamError("gnp_weighted needs 0 < p_edge <= 1");
  if (const auto* uni = std::get_if<UniformWeights>(&weights)) {
    if (!(uni->a >= 0.0) || !(uni->b >= uni->a) || !std::isfinite(uni->b))
      throw ParamError("uniform weights need 0 <= a <= b");
  } else {
    const auto& par = std::get<ParetoWeights>(weights);
    if (!(par.alpha > 0.0) || !(par.x_min > 0.0))
      throw ParamError("pareto weights need alpha > 0 and x_min > 0");
  }

  Rng rng(seed);
  std::bernoulli_distribution present(p_edge);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw_weight = [&]() -> double {
    if (const auto* uni = std::get_if<UniformWeights>(&weights)) {
      if (uni->a == uni->b) return uni->a;
      return uni->a + (uni->b - uni->a) * unit(rng);
    }
    const auto& par = std::get<ParetoWeights>(weights);
    return par.x_min * std::pow(1.0 - unit(rng), -1.0 / par.alpha);
  };

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!present(rng)) continue;
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), draw_weight()});
    }
  }
  return build_graph(edges, false, n);
}

Family parse_family(const std::string& s) {
  if (s == "bbv") return Family::bbv;
  if (s == "mdp_gaussian" || s == "mdp") return Family::mdp_gaussian;
  if (s == "gnp_weighted" || s == "gnp") return Family::gnp_weighted;
  throw ParamError("unknown generator family '" + s + "' (expected bbv|mdp_gaussian|gnp_weighted)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::bbv: return "bbv";
    case Family::mdp_gaussian: return "mdp_gaussian";
    case Family::gnp_weighted: return "gnp_weighted";
  }
  return "?";
}

WeightedGraph generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::bbv: return bbv(spec.n, spec.m, spec.w0, spec.delta, spec.seed);
    case Family::mdp_gaussian: return mdp_gaussian(spec.n, spec.mu, spec.sigma, spec.seed);
    case Family::gnp_weighted: return gnp_weighted(spec.n, spec.p_edge, spec.weights, spec.seed);
  }
  throw ParamError("unknown generator family");
}

}  // namespace hsp::gen
