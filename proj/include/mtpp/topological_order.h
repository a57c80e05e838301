#pragma once

#include <span>
#include <vector>

#include "mtpp/graph.h"

namespace mtpp {

// A permutation of the graph's nodes in which every edge points forward.
// Positions are 1-based in the public API: node_at(1) is the first op.
class TopologicalOrder {
 public:
  TopologicalOrder() = default;

  // Throws PreconditionError if perm is not a permutation of [0, n) or some
  // edge points backwards.
  static TopologicalOrder FromPermutation(const ComputationGraph& g,
                                          std::vector<NodeIndex> perm);

  NodeIndex size() const { return static_cast<NodeIndex>(perm_.size()); }
  NodeIndex node_at(int position) const { return perm_[position - 1]; }
  int position_of(NodeIndex v) const { return inverse_[v] + 1; }

  const std::vector<NodeIndex>& perm() const { return perm_; }
  // Ops at positions l..r (inclusive, 1-based) in order.
  std::span<const NodeIndex> slice(int l, int r) const {
    return {perm_.data() + (l - 1), perm_.data() + r};
  }

  friend bool operator==(const TopologicalOrder& a, const TopologicalOrder& b) {
    return a.perm_ == b.perm_;
  }

 private:
  std::vector<NodeIndex> perm_;
  std::vector<int> inverse_;  // 0-based position of each node
};

}  // namespace mtpp
