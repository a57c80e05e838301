#include "mtpp/segment_cost.h"

#include <algorithm>
#include <string>

#include "mtpp/errors.h"
#include "mtpp/fenwick2d.h"

namespace mtpp {

TopologicalOrder TopologicalOrder::FromPermutation(const ComputationGraph& g,
                                                   std::vector<NodeIndex> perm) {
  g.RequireValid();
  const NodeIndex n = g.num_nodes();
  if (static_cast<NodeIndex>(perm.size()) != n) {
    throw PreconditionError("order has " + std::to_string(perm.size()) +
                            " entries but the graph has " + std::to_string(n) + " nodes");
  }
  TopologicalOrder order;
  order.inverse_.assign(n, -1);
  for (NodeIndex i = 0; i < n; ++i) {
    const NodeIndex v = perm[i];
    if (v < 0 || v >= n || order.inverse_[v] != -1) {
      throw PreconditionError("order is not a permutation of the graph's nodes");
    }
    order.inverse_[v] = i;
  }
  for (const Edge& e : g.edges()) {
    if (order.inverse_[e.producer] >= order.inverse_[e.consumer]) {
      throw PreconditionError("order is not topological: edge (" +
                              std::to_string(e.producer) + "," +
                              std::to_string(e.consumer) + ") points backwards");
    }
  }
  order.perm_ = std::move(perm);
  return order;
}

namespace {

struct Rect {
  int l1, r1, l2, r2;  // l in [l1, l2], r in [r1, r2]
};

// Slices [l, r] that leave u's tensor uncut: those missing all of
// S_u = {u} + consumers(u), and those containing all of S_u. `sorted` holds
// the 1-based positions of S_u in increasing order.
template <typename Emit>
void ForEachUncutRectangle(const std::vector<int>& sorted, int n, Emit emit) {
  const int first = sorted.front();
  const int last = sorted.back();
  if (first > 1) emit(Rect{1, 1, first - 1, first - 1});
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const int lo = sorted[i] + 1;
    const int hi = sorted[i + 1] - 1;
    if (lo <= hi) emit(Rect{lo, lo, hi, hi});
  }
  if (last < n) emit(Rect{last + 1, last + 1, n, n});
  emit(Rect{1, last, first, n});
}

template <typename Emit>
void ForEachTensor(const ComputationGraph& g, const TopologicalOrder& order, Emit emit) {
  const int n = order.size();
  std::vector<int> positions;
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    const double bytes = g.node(u).size_out;
    if (bytes == 0.0) continue;
    positions.clear();
    const int home = order.position_of(u);
    positions.push_back(home);
    for (NodeIndex w : g.successors(u)) positions.push_back(order.position_of(w));
    std::sort(positions.begin(), positions.end());
    if (positions.front() != home) {
      // The producer must precede all its consumers.
      throw PreconditionError("segment cost: order is not topological at node " +
                              std::to_string(u));
    }
    ForEachUncutRectangle(positions, n, [&](const Rect& rect) { emit(rect, bytes); });
  }
}

}  // namespace

void SegmentCostStructure::Prepare(const ComputationGraph& g, const PlatformConfig& cfg,
                                   const TopologicalOrder& order) {
  g.RequireValid();
  cfg.RequireValid();
  if (order.size() != g.num_nodes()) {
    throw PreconditionError("segment cost: order size does not match the graph");
  }
  cfg_ = cfg;
  order_ = order;
  n_ = order.size();
  work_prefix_.assign(n_ + 1, 0.0);
  mem_prefix_.assign(n_ + 1, 0.0);
  for (int i = 1; i <= n_; ++i) {
    const NodeSpec& spec = g.node(order.node_at(i));
    work_prefix_[i] = work_prefix_[i - 1] + spec.work;
    mem_prefix_[i] = mem_prefix_[i - 1] + spec.size_param;
  }
  overflow_possible_ = cfg.has_peak_model() || mem_prefix_[n_] > cfg.memory;
}

SegmentCostStructure SegmentCostStructure::InitNaive(const ComputationGraph& g,
                                                     const PlatformConfig& cfg,
                                                     const TopologicalOrder& order) {
  SegmentCostStructure s;
  s.Prepare(g, cfg, order);
  const int n = s.n_;
  s.io_table_.assign(static_cast<std::size_t>(n) * n, g.total_size_out());
  ForEachTensor(g, order, [&](const Rect& rect, double bytes) {
    for (int l = rect.l1; l <= rect.l2; ++l) {
      for (int r = std::max(rect.r1, l); r <= rect.r2; ++r) {
        s.io_table_[static_cast<std::size_t>(l - 1) * n + (r - 1)] -= bytes;
      }
    }
  });
  return s;
}

SegmentCostStructure SegmentCostStructure::InitFast(const ComputationGraph& g,
                                                    const PlatformConfig& cfg,
                                                    const TopologicalOrder& order) {
  SegmentCostStructure s;
  Fenwick2D tree(0);
  s.RebuildFast(g, cfg, order, tree);
  return s;
}

void SegmentCostStructure::RebuildFast(const ComputationGraph& g, const PlatformConfig& cfg,
                                       const TopologicalOrder& order, Fenwick2D& scratch) {
  Prepare(g, cfg, order);
  const int n = n_;
  io_table_.clear();
  if (n == 0) return;
  scratch.Reset(n);
  scratch.RangeUpdate(1, 1, n, n, g.total_size_out());
  ForEachTensor(g, order, [&](const Rect& rect, double bytes) {
    scratch.RangeUpdate(rect.l1, rect.r1, rect.l2, rect.r2, -bytes);
  });
  scratch.Materialize(io_table_);
}

double SegmentCostStructure::Query(int l, int r) const {
  if (l == r + 1 && l >= 1 && r <= n_) return 0.0;
  if (l < 1 || r > n_ || l > r) {
    throw PreconditionError("segment query [" + std::to_string(l) + "," +
                            std::to_string(r) + "] outside 1.." + std::to_string(n_));
  }
  return QueryUnchecked(l, r);
}

double SegmentCostStructure::OverflowSlow(int l, int r) const {
  const double params = mem_prefix_[r] - mem_prefix_[l - 1];
  const double excess = params + cfg_.Peak(order_.slice(l, r)) - cfg_.memory;
  return std::max(excess, 0.0) / cfg_.bandwidth;
}

}  // namespace mtpp
