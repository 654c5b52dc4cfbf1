#include "hsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "hsp/errors.hpp"

namespace hsp {

double WeightedGraph::weight(NodeId u, NodeId v) const noexcept {
  const auto row = neighbors(u);
  const auto it = std::lower_bound(row.begin(), row.end(), v,
                                   [](const Neighbor& a, NodeId id) { return a.node < id; });
  return (it != row.end() && it->node == v) ? it->weight : 0.0;
}

bool WeightedGraph::has_edge(NodeId u, NodeId v) const noexcept {
  const auto row = neighbors(u);
  const auto it = std::lower_bound(row.begin(), row.end(), v,
                                   [](const Neighbor& a, NodeId id) { return a.node < id; });
  return it != row.end() && it->node == v;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const auto& nb : neighbors(u)) {
      if (u < nb.node) out.push_back({u, nb.node, nb.weight});
    }
  }
  return out;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
  if (node_count() != other.node_count() || offsets_ != other.offsets_) return false;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    if (adjacency_[i].node != other.adjacency_[i].node ||
        adjacency_[i].weight != other.adjacency_[i].weight)
      return false;
  }
  return true;
}

WeightedGraph build_graph(std::span<const Edge> edges, bool aggregate, std::size_t node_count) {
  std::size_t n = node_count;
  if (n == 0) {
    for (const auto& e : edges) n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
  }

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a node outside 0.." + std::to_string(n) + "-1");
    if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has invalid weight " + std::to_string(e.w));
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
  }
  // Stable so that aggregation sums in input order.
  std::stable_sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<Edge> unique;
  unique.reserve(canon.size());
  for (const auto& e : canon) {
    if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
      if (!aggregate)
        throw ValidationError("duplicate edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")");
      unique.back().w += e.w;
    } else {
      unique.push_back(e);
    }
  }

  WeightedGraph g;
  g.strengths_.assign(n, 0.0);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : unique) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);

  // Edges are sorted by (u, v); filling rows in this order leaves every row
  // sorted by neighbor id.
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : unique) {
    g.adjacency_[cursor[e.v]++] = {e.u, e.w};
  }
  for (const auto& e : unique) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.w};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    double s = 0.0;
    for (std::size_t j = g.offsets_[i]; j < g.offsets_[i + 1]; ++j) s += g.adjacency_[j].weight;
    g.strengths_[i] = s;
  }
  double total = 0.0;
  for (const auto& e : unique) total += e.w;
  g.total_weight_ = total;
  return g;
}

namespace {

std::size_t kept_edge_count(double q, std::size_t m) {
  // Guard against q*m landing a hair above an integer (0.07 * 100 = 7.000000000000001).
  const double raw = q * static_cast<double>(m);
  const double rounded = std::round(raw);
  const double keep = std::abs(raw - rounded) <= 1e-9 * std::max(1.0, raw) ? rounded : std::ceil(raw);
  return std::min(m, static_cast<std::size_t>(keep));
}

}  // namespace

WeightedGraph threshold_edges(const WeightedGraph& g, double q) {
  if (!(q > 0.0 && q <= 1.0))
    throw ParamError("threshold q must lie in (0, 1], got " + std::to_string(q));
  auto all = g.edges();
  const std::size_t keep = kept_edge_count(q, all.size());
  if (keep == all.size()) return g;

  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // `all` is already in ascending (u, v) order, so a stable sort by weight
  // resolves cutoff ties lexicographically.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return all[a].w > all[b].w; });
  order.resize(keep);
  std::sort(order.begin(), order.end());

  std::vector<Edge> kept;
  kept.reserve(keep);
  for (auto idx : order) kept.push_back(all[idx]);
  return build_graph(kept, false, g.node_count());
}

RankedAdjacency rank_neighbors(const WeightedGraph& g, double q) {
  RankedAdjacency r;
  const std::size_t n = g.node_count();
  r.order_ = RankedAdjacency::Order::by_weight;
  r.threshold_q_ = q;
  r.offsets_.assign(n + 1, 0);
  r.nodes_.reserve(2 * g.edge_count());
  r.weights_.reserve(2 * g.edge_count());

  double min_weight = g.edge_count() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  std::vector<Neighbor> row;
  for (NodeId u = 0; u < n; ++u) {
    const auto nbs = g.neighbors(u);
    row.assign(nbs.begin(), nbs.end());
    // Rows arrive in ascending id order, so stability gives the id tie-break.
    std::stable_sort(row.begin(), row.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.weight > b.weight; });
    for (const auto& nb : row) {
      r.nodes_.push_back(nb.node);
      r.weights_.push_back(nb.weight);
      min_weight = std::min(min_weight, nb.weight);
    }
    r.offsets_[u + 1] = r.nodes_.size();
  }
  r.w_q_ = min_weight;
  return r;
}

RankedAdjacency ranked_candidates(const WeightedGraph& g, double q) {
  return rank_neighbors(threshold_edges(g, q), q);
}

RankedAdjacency natural_order(const WeightedGraph& g) {
  RankedAdjacency r;
  const std::size_t n = g.node_count();
  r.order_ = RankedAdjacency::Order::by_id;
  r.offsets_.assign(n + 1, 0);
  double min_weight = g.edge_count() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) {
      r.nodes_.push_back(nb.node);
      r.weights_.push_back(nb.weight);
      min_weight = std::min(min_weight, nb.weight);
    }
    r.offsets_[u + 1] = r.nodes_.size();
  }
  r.w_q_ = min_weight;
  return r;
}

}  // namespace hsp
