#include "hsp/solution.hpp"

#include <algorithm>
#include <string>

#include "hsp/errors.hpp"

namespace hsp {

double objective_of(const WeightedGraph& g, std::span<const NodeId> nodes) {
  const std::size_t n = g.node_count();
  std::vector<char> in_set(n, 0);
  for (auto x : nodes) {
    if (x >= n) throw ValidationError("node " + std::to_string(x) + " is not in the graph");
    if (in_set[x]) throw ValidationError("node " + std::to_string(x) + " listed twice");
    in_set[x] = 1;
  }
  double total = 0.0;
  for (auto u : nodes) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.node && in_set[nb.node]) total += nb.weight;
    }
  }
  return total;
}

SolutionState::SolutionState(const WeightedGraph& g, std::span<const NodeId> nodes)
    : graph_(&g), members_(nodes.begin(), nodes.end()), slot_(g.node_count(), kAbsent),
      in_h_(g.node_count(), 0), gain_(g.node_count(), 0.0) {
  if (members_.empty()) throw ValidationError("solution must contain at least one node");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const NodeId x = members_[i];
    if (x >= g.node_count())
      throw ValidationError("node " + std::to_string(x) + " is not in the graph");
    if (slot_[x] != kAbsent)
      throw ValidationError("node " + std::to_string(x) + " listed twice");
    slot_[x] = i;
    in_h_[x] = 1;
  }
  for (auto j : members_) {
    for (const auto& nb : g.neighbors(j)) gain_[nb.node] += nb.weight;
  }
  double twice = 0.0;
  for (auto j : members_) twice += gain_[j];
  objective_ = twice / 2.0;
}

std::vector<NodeId> SolutionState::sorted_members() const {
  std::vector<NodeId> out(members_);
  std::sort(out.begin(), out.end());
  return out;
}

void SolutionState::check_swap(NodeId out, NodeId in) const {
  const std::size_t n = graph_->node_count();
  if (out >= n || in >= n) throw LogicError("swap references a node outside the graph");
  if (!contains(out))
    throw LogicError("swap-out node " + std::to_string(out) + " is not in the solution");
  if (contains(in))
    throw LogicError("swap-in node " + std::to_string(in) + " is already in the solution");
}

double SolutionState::swap_delta(NodeId out, NodeId in) const {
  check_swap(out, in);
  return delta_unchecked(out, in);
}

void SolutionState::apply_swap(NodeId out, NodeId in) {
  check_swap(out, in);
  SwapAccess::apply(*this, out, in, delta_unchecked(out, in));
}

void SwapAccess::apply(SolutionState& s, NodeId out, NodeId in, double delta) noexcept {
  const auto& g = *s.graph_;
  for (const auto& nb : g.neighbors(out)) s.gain_[nb.node] -= nb.weight;
  for (const auto& nb : g.neighbors(in)) s.gain_[nb.node] += nb.weight;
  const std::size_t slot = s.slot_[out];
  s.members_[slot] = in;
  s.slot_[in] = slot;
  s.slot_[out] = SolutionState::kAbsent;
  s.in_h_[in] = 1;
  s.in_h_[out] = 0;
  s.objective_ += delta;
}

}  // namespace hsp
