#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mtpp/graph.h"
#include "mtpp/segment_cost.h"
#include "mtpp/topological_order.h"

namespace mtpp {

// An optimal cut of a topological order into at most k contiguous blocks.
struct Segmentation {
  // Block boundaries: a block ends right after each listed position. Strictly
  // increasing, within [1, n-1], at most k-1 entries. Blocks are nonempty.
  std::vector<int> cut_points;
  double value = 0.0;  // max block cost

  int num_blocks() const { return static_cast<int>(cut_points.size()) + 1; }
  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

// Kahn's algorithm that always emits the available op of highest priority;
// equal priorities go to the smaller node index. O(n log n + m).
TopologicalOrder kahn_with_priorities(const ComputationGraph& g,
                                      std::span<const double> priorities);

// Optimal segmentation by dynamic programming over (prefix end, blocks used)
// in O(n^2 k) after the O(n^2 + m log^2 n) segment-cost build. Among optimal
// segmentations returns the one with fewest blocks, then lexicographically
// smallest cut points.
Segmentation slice_graph(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                         const TopologicalOrder& order);
Segmentation slice_graph(const SegmentCostStructure& costs, int k);

// Optimal values for every block budget 1..k_max from a single DP pass.
// Entry k-1 is the value for budget k.
std::vector<double> slice_values_up_to(const SegmentCostStructure& costs, int k_max);

// Turns a segmentation of `order` into a k-block partition (blocks numbered
// along the order; trailing blocks stay empty).
Partition SegmentationToPartition(const TopologicalOrder& order, const Segmentation& seg,
                                  int k);

// Sort-and-slice decoder: priorities -> topological order -> optimal slicing.
// decode(...).second.value without the cut recovery; reuses per-thread
// buffers across calls.
double decode_value(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                    std::span<const double> chromosome);

std::pair<TopologicalOrder, Segmentation> decode(const ComputationGraph& g,
                                                 const PlatformConfig& cfg, int k,
                                                 std::span<const double> chromosome);

}  // namespace mtpp
