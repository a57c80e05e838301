#include "mtpp/slicer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "mtpp/errors.h"

namespace mtpp {

TopologicalOrder kahn_with_priorities(const ComputationGraph& g,
                                      std::span<const double> priorities) {
  g.RequireValid();
  const NodeIndex n = g.num_nodes();
  if (static_cast<NodeIndex>(priorities.size()) != n) {
    throw PreconditionError("kahn_with_priorities: expected " + std::to_string(n) +
                            " priorities, got " + std::to_string(priorities.size()));
  }
  for (double x : priorities) {
    if (!std::isfinite(x)) throw PreconditionError("kahn_with_priorities: non-finite priority");
  }

  // Max-heap on priority; among equal priorities the smaller index wins.
  auto lower = [&](NodeIndex a, NodeIndex b) {
    if (priorities[a] != priorities[b]) return priorities[a] < priorities[b];
    return a > b;
  };
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, decltype(lower)> ready(lower);
  std::vector<std::int64_t> indegree(n);
  for (NodeIndex v = 0; v < n; ++v) {
    indegree[v] = static_cast<std::int64_t>(g.predecessors(v).size());
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeIndex> perm;
  perm.reserve(n);
  while (!ready.empty()) {
    const NodeIndex u = ready.top();
    ready.pop();
    perm.push_back(u);
    for (NodeIndex w : g.successors(u)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (static_cast<NodeIndex>(perm.size()) != n) {
    throw PreconditionError("kahn_with_priorities: graph has a cycle");
  }
  return TopologicalOrder::FromPermutation(g, std::move(perm));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// table[(kk-1)*(n+1) + r] = best max-block cost of splitting the first r ops
// into at most kk blocks. A slice costs at least its work, so for each r the
// scan over the last block's start stops once that work alone reaches the
// best value found.
void RunDp(const SegmentCostStructure& costs, int k_max, std::vector<double>& table) {
  const int n = costs.size();
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  const std::vector<double>& work = costs.work_prefix();
  table.assign(static_cast<std::size_t>(k_max) * width, kInf);
  table[0] = 0.0;
  for (int r = 1; r <= n; ++r) table[r] = costs.QueryUnchecked(1, r);
  for (int kk = 2; kk <= k_max; ++kk) {
    const double* prev = &table[(kk - 2) * width];
    double* cur = &table[(kk - 1) * width];
    cur[0] = 0.0;
    for (int r = 1; r <= n; ++r) {
      // l == r leaves the last block empty.
      double best = prev[r];
      for (int l = r - 1; l >= 1; --l) {
        if (work[r] - work[l] >= best) break;
        const double a = prev[l];
        if (a >= best) continue;
        const double b = costs.QueryUnchecked(l + 1, r);
        const double v = a > b ? a : b;
        if (v < best) best = v;
      }
      cur[r] = best;
    }
  }
}

}  // namespace

std::vector<double> slice_values_up_to(const SegmentCostStructure& costs, int k_max) {
  if (k_max < 1) throw PreconditionError("slice_graph: k must be >= 1");
  const int n = costs.size();
  std::vector<double> table;
  RunDp(costs, k_max, table);
  std::vector<double> values(k_max);
  for (int kk = 1; kk <= k_max; ++kk) values[kk - 1] = table[(kk - 1) * (static_cast<std::size_t>(n) + 1) + n];
  return values;
}

Segmentation slice_graph(const SegmentCostStructure& costs, int k) {
  if (k < 1) throw PreconditionError("slice_graph: k must be >= 1");
  const int n = costs.size();
  Segmentation seg;
  if (n == 0) return seg;
  std::vector<double> table;
  RunDp(costs, k, table);
  const double target = table[(k - 1) * (static_cast<std::size_t>(n) + 1) + n];
  seg.value = target;

  // Every optimal segmentation uses only slices costing <= target, and any
  // segmentation built from such slices is optimal. suffix[l] = fewest such
  // slices covering positions l..n.
  constexpr int kUnreachable = std::numeric_limits<int>::max();
  std::vector<int> suffix(n + 2, kUnreachable);
  suffix[n + 1] = 0;
  const std::vector<double>& work = costs.work_prefix();
  for (int l = n; l >= 1; --l) {
    for (int r = l; r <= n; ++r) {
      if (work[r] - work[l - 1] > target) break;
      if (suffix[r + 1] == kUnreachable) continue;
      if (costs.QueryUnchecked(l, r) <= target) {
        suffix[l] = std::min(suffix[l], suffix[r + 1] + 1);
      }
    }
  }
  // Greedy earliest cut keeps the cut list lexicographically smallest.
  int remaining = suffix[1];
  int start = 1;
  while (remaining > 1) {
    int end = start;
    while (!(costs.QueryUnchecked(start, end) <= target &&
             suffix[end + 1] == remaining - 1)) {
      ++end;
    }
    seg.cut_points.push_back(end);
    start = end + 1;
    --remaining;
  }
  return seg;
}

Segmentation slice_graph(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                         const TopologicalOrder& order) {
  if (k < 1) throw PreconditionError("slice_graph: k must be >= 1");
  return slice_graph(SegmentCostStructure::InitFast(g, cfg, order), k);
}

Partition SegmentationToPartition(const TopologicalOrder& order, const Segmentation& seg,
                                  int k) {
  if (seg.num_blocks() > k) {
    throw PreconditionError("segmentation has more blocks than k");
  }
  Partition p{k, std::vector<int>(order.size(), 1)};
  int block = 1;
  std::size_t next_cut = 0;
  for (int pos = 1; pos <= order.size(); ++pos) {
    p.block[order.node_at(pos)] = block;
    if (next_cut < seg.cut_points.size() && seg.cut_points[next_cut] == pos) {
      ++block;
      ++next_cut;
    }
  }
  return p;
}

double decode_value(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                    std::span<const double> chromosome) {
  if (k < 1) throw PreconditionError("slice_graph: k must be >= 1");
  struct Workspace {
    Fenwick2D tree{0};
    SegmentCostStructure costs;
    std::vector<double> table;
  };
  thread_local Workspace ws;
  const TopologicalOrder order = kahn_with_priorities(g, chromosome);
  if (order.size() == 0) return 0.0;
  ws.costs.RebuildFast(g, cfg, order, ws.tree);
  RunDp(ws.costs, k, ws.table);
  return ws.table[(k - 1) * (static_cast<std::size_t>(order.size()) + 1) + order.size()];
}

std::pair<TopologicalOrder, Segmentation> decode(const ComputationGraph& g,
                                                 const PlatformConfig& cfg, int k,
                                                 std::span<const double> chromosome) {
  TopologicalOrder order = kahn_with_priorities(g, chromosome);
  Segmentation seg = slice_graph(g, cfg, k, order);
  return {std::move(order), std::move(seg)};
}

}  // namespace mtpp
