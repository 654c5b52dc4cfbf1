#pragma once

#include <span>
#include <vector>

#include "hsp/graph.hpp"

namespace hsp {

/// Induced weight of `nodes`: each undirected edge inside the set counted once.
/// Throws ValidationError on ids outside the graph or repeated ids.
double objective_of(const WeightedGraph& g, std::span<const NodeId> nodes);

/// A k-subset H with incrementally maintained objective and gain table.
///
/// gain[x] = sum of w(x, j) over j in H, j != x, kept for every node of the
/// graph, so any 1-swap is priced in O(log deg) and applied in O(deg).
/// The state refers to its graph; the graph must outlive it.
class SolutionState {
 public:
  /// init_state. Throws ValidationError for an empty, repeated or
  /// out-of-range member list.
  SolutionState(const WeightedGraph& g, std::span<const NodeId> nodes);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  std::size_t size() const noexcept { return members_.size(); }

  /// Members in slot order. A swap puts the incoming node in the slot of the
  /// outgoing one.
  std::span<const NodeId> members() const noexcept { return members_; }
  std::vector<NodeId> sorted_members() const;

  bool contains(NodeId x) const noexcept { return in_h_[x] != 0; }
  /// Per-node membership flags (1 = in H).
  std::span<const char> membership() const noexcept { return in_h_; }
  double gain(NodeId x) const noexcept { return gain_[x]; }
  std::span<const double> gains() const noexcept { return gain_; }
  double objective() const noexcept { return objective_; }

  /// f(H - {out} + {in}) - f(H). Throws LogicError unless out is a member
  /// and in is not.
  double swap_delta(NodeId out, NodeId in) const;

  void apply_swap(NodeId out, NodeId in);

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  void check_swap(NodeId out, NodeId in) const;
  double delta_unchecked(NodeId out, NodeId in) const noexcept {
    return gain_[in] - gain_[out] - graph_->weight(out, in);
  }

  friend class SwapAccess;

  const WeightedGraph* graph_;
  std::vector<NodeId> members_;
  std::vector<std::size_t> slot_;
  std::vector<char> in_h_;
  std::vector<double> gain_;
  double objective_ = 0.0;
};

/// Unchecked swap primitives for hot loops that already guarantee membership.
class SwapAccess {
 public:
  static double delta(const SolutionState& s, NodeId out, NodeId in) noexcept {
    return s.delta_unchecked(out, in);
  }
  /// Same as delta() with w(out, in) supplied by the caller.
  static double delta(const SolutionState& s, NodeId out, NodeId in, double w_out_in) noexcept {
    return s.gain_[in] - s.gain_[out] - w_out_in;
  }
  static void apply(SolutionState& s, NodeId out, NodeId in, double delta) noexcept;
};

}  // namespace hsp
