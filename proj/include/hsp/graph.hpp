#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hsp {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double w;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// Undirected graph with nonnegative edge weights in compressed row form.
///
/// Each undirected edge {u,v} appears once in row u and once in row v with
/// the same weight. Rows are sorted by neighbor id so that `weight(u, v)` is a
/// binary search. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t node_count() const noexcept { return strengths_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Neighbor> neighbors(NodeId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  /// Weighted degree s_u.
  double strength(NodeId u) const noexcept { return strengths_[u]; }
  std::span<const double> strengths() const noexcept { return strengths_; }

  /// Weight of {u,v}, or 0 when the edge is absent.
  double weight(NodeId u, NodeId v) const noexcept;
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Sum over undirected edges, each counted once.
  double total_weight() const noexcept { return total_weight_; }

  /// All undirected edges with u < v, in ascending (u, v) order.
  std::vector<Edge> edges() const;

  bool operator==(const WeightedGraph& other) const;

 private:
  friend WeightedGraph build_graph(std::span<const Edge>, bool, std::size_t);

  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strengths_;
  double total_weight_ = 0.0;
};

/// Builds a validated symmetric graph from undirected edge triples.
///
/// `node_count` fixes n; when 0, n is one past the largest id mentioned.
/// Either orientation of a pair names the same edge. With `aggregate` set,
/// repeated pairs are summed; otherwise a repeat throws ValidationError, as do
/// negative/non-finite weights, self-loops and ids >= node_count.
WeightedGraph build_graph(std::span<const Edge> edges, bool aggregate,
                          std::size_t node_count = 0);

/// Keeps the ceil(q * |E|) heaviest edges. Ties at the cutoff are resolved by
/// ascending (u, v) so the kept count is exact. Node set is unchanged.
WeightedGraph threshold_edges(const WeightedGraph& g, double q);

/// Per-node candidate lists for neighborhood search.
///
/// `by_weight` rows are sorted by descending edge weight, ties by ascending
/// neighbor id. `by_id` rows keep the graph's natural ascending-id order and
/// serve as the unranked baseline.
class RankedAdjacency {
 public:
  enum class Order { by_weight, by_id };

  RankedAdjacency() = default;

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::span<const NodeId> row(NodeId u) const noexcept {
    return {nodes_.data() + offsets_[u], nodes_.data() + offsets_[u + 1]};
  }
  std::span<const double> row_weights(NodeId u) const noexcept {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }

  Order order() const noexcept { return order_; }
  /// q the underlying graph was thresholded with.
  double threshold_q() const noexcept { return threshold_q_; }
  /// Smallest listed edge weight (0 when no edges are listed).
  double weight_cutoff() const noexcept { return w_q_; }

 private:
  friend RankedAdjacency rank_neighbors(const WeightedGraph&, double);
  friend RankedAdjacency natural_order(const WeightedGraph&);

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> nodes_;
  std::vector<double> weights_;
  Order order_ = Order::by_weight;
  double threshold_q_ = 1.0;
  double w_q_ = 0.0;
};

/// Arg-sorts every row of `g` by descending weight. `q` records the threshold
/// `g` was produced with; it does not filter.
RankedAdjacency rank_neighbors(const WeightedGraph& g, double q = 1.0);

/// Thresholds at q and ranks the result.
RankedAdjacency ranked_candidates(const WeightedGraph& g, double q);

/// Candidate lists in ascending neighbor-id order.
RankedAdjacency natural_order(const WeightedGraph& g);

}  // namespace hsp
