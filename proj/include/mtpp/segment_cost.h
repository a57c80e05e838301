#pragma once

#include <vector>

#include "mtpp/fenwick2d.h"
#include "mtpp/graph.h"
#include "mtpp/topological_order.h"

namespace mtpp {

// Answers f({pi(l), ..., pi(r)}) for contiguous slices of a fixed topological
// order. After initialization a query costs O(1) array lookups plus one call
// to the platform's peak model (skipped entirely when none is configured).
//
// io_table(l, r) holds the raw bytes of every tensor cut by the slice; the
// division by bandwidth happens at query time so integer inputs stay exact.
class SegmentCostStructure {
 public:
  SegmentCostStructure() = default;

  // O(n^3) reference construction: starts every entry at the total tensor
  // bytes and, per producer u, subtracts size_out(u) entry by entry from the
  // slices that do not cut u's tensor.
  static SegmentCostStructure InitNaive(const ComputationGraph& g,
                                        const PlatformConfig& cfg,
                                        const TopologicalOrder& order);

  // O(n^2 + m log^2 n) construction: the same subtractions as O(log^2 n)
  // rectangle updates on a 2D Fenwick tree, then an O(n^2) materialization.
  // Entries with l > r receive updates too; they are never queried.
  static SegmentCostStructure InitFast(const ComputationGraph& g,
                                       const PlatformConfig& cfg,
                                       const TopologicalOrder& order);

  // InitFast into this object, reusing its buffers and `scratch`; for hot
  // loops that rebuild the structure for many orders.
  void RebuildFast(const ComputationGraph& g, const PlatformConfig& cfg,
                   const TopologicalOrder& order, Fenwick2D& scratch);

  int size() const { return n_; }
  const TopologicalOrder& order() const { return order_; }

  // Cost of slice [l, r], 1-based inclusive. l == r + 1 denotes the empty
  // slice and costs 0. Throws PreconditionError on any other l > r or on
  // out-of-range indices.
  double Query(int l, int r) const;

  // Unchecked variant for hot loops; requires 1 <= l <= r <= n.
  double QueryUnchecked(int l, int r) const {
    const double work = work_prefix_[r] - work_prefix_[l - 1];
    const double io = io_table_[static_cast<std::size_t>(l - 1) * n_ + (r - 1)];
    return work + Overflow(l, r) + io / cfg_.bandwidth;
  }

  double io_bytes(int l, int r) const {
    return io_table_[static_cast<std::size_t>(l - 1) * n_ + (r - 1)];
  }
  const std::vector<double>& work_prefix() const { return work_prefix_; }
  const std::vector<double>& mem_prefix() const { return mem_prefix_; }

 private:
  void Prepare(const ComputationGraph& g, const PlatformConfig& cfg,
               const TopologicalOrder& order);
  double Overflow(int l, int r) const {
    if (!overflow_possible_) return 0.0;
    return OverflowSlow(l, r);
  }
  double OverflowSlow(int l, int r) const;

  PlatformConfig cfg_;
  TopologicalOrder order_;
  int n_ = 0;
  bool overflow_possible_ = false;
  std::vector<double> work_prefix_;  // size n+1
  std::vector<double> mem_prefix_;   // size n+1
  std::vector<double> io_table_;     // row-major n x n, bytes
};

}  // namespace mtpp
