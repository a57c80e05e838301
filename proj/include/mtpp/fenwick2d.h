#pragma once

#include <vector>

namespace mtpp {

// Two-dimensional Fenwick tree over an n x n grid (1-based) supporting
// rectangle range updates and point reads, both in O(log^2 n). Internally it
// stores the 2D difference array in Fenwick form.
class Fenwick2D {
 public:
  explicit Fenwick2D(int n);

  int size() const { return n_; }

  // Clears the tree and resizes it to n x n, reusing its storage.
  void Reset(int n);

  // Adds x to every entry (i, j) with i1 <= i <= i2 and j1 <= j <= j2.
  // Requires 1 <= i1 <= i2 <= n and 1 <= j1 <= j2 <= n.
  void RangeUpdate(int i1, int j1, int i2, int j2, double x);

  double PointRead(int i, int j) const;

  // Writes every entry into a dense row-major n x n array (entry (i, j) at
  // (i-1)*n + (j-1)) in O(n^2) total by undoing the Fenwick aggregation and
  // taking 2D prefix sums, working inside `dense` so that no other memory is
  // allocated. Leaves the tree itself unchanged.
  void Materialize(std::vector<double>& dense) const;

 private:
  void Add(int i, int j, double x);
  double& cell(int i, int j) { return tree_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
  double cell(int i, int j) const { return tree_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }

  int n_;
  std::vector<double> tree_;  // (n+1) x (n+1), row/column 0 unused
};

}  // namespace mtpp
