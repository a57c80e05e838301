#include "mtpp/fenwick2d.h"

#include <string>

#include "mtpp/errors.h"

namespace mtpp {

namespace {
inline int LowBit(int i) { return i & -i; }
}  // namespace

Fenwick2D::Fenwick2D(int n) { Reset(n); }

void Fenwick2D::Reset(int n) {
  if (n < 0) throw PreconditionError("Fenwick2D size must be nonnegative");
  n_ = n;
  tree_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
}

void Fenwick2D::Add(int i, int j, double x) {
  for (int a = i; a <= n_; a += LowBit(a)) {
    for (int b = j; b <= n_; b += LowBit(b)) cell(a, b) += x;
  }
}

void Fenwick2D::RangeUpdate(int i1, int j1, int i2, int j2, double x) {
  if (i1 < 1 || j1 < 1 || i2 > n_ || j2 > n_ || i1 > i2 || j1 > j2) {
    throw PreconditionError("Fenwick2D rectangle [" + std::to_string(i1) + "," +
                            std::to_string(i2) + "]x[" + std::to_string(j1) + "," +
                            std::to_string(j2) + "] outside 1.." + std::to_string(n_));
  }
  Add(i1, j1, x);
  if (j2 < n_) Add(i1, j2 + 1, -x);
  if (i2 < n_) Add(i2 + 1, j1, -x);
  if (i2 < n_ && j2 < n_) Add(i2 + 1, j2 + 1, x);
}

double Fenwick2D::PointRead(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw PreconditionError("Fenwick2D point (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside 1.." + std::to_string(n_));
  }
  double sum = 0.0;
  for (int a = i; a > 0; a -= LowBit(a)) {
    for (int b = j; b > 0; b -= LowBit(b)) sum += cell(a, b);
  }
  return sum;
}

void Fenwick2D::Materialize(std::vector<double>& dense) const {
  const int n = n_;
  const std::size_t stride = static_cast<std::size_t>(n);
  dense.resize(stride * stride);
  auto at = [&](int i, int j) -> double& { return dense[(i - 1) * stride + (j - 1)]; };
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) at(i, j) = cell(i, j);
  }
  // Undo the linear-time Fenwick build along columns, then along rows.
  for (int i = 1; i <= n; ++i) {
    for (int j = n; j >= 1; --j) {
      const int parent = j + LowBit(j);
      if (parent <= n) at(i, parent) -= at(i, j);
    }
  }
  for (int i = n; i >= 1; --i) {
    const int parent = i + LowBit(i);
    if (parent > n) continue;
    for (int j = 1; j <= n; ++j) at(parent, j) -= at(i, j);
  }
  for (int i = 1; i <= n; ++i) {
    double row = 0.0;
    for (int j = 1; j <= n; ++j) {
      row += at(i, j);
      at(i, j) = row + (i > 1 ? at(i - 1, j) : 0.0);
    }
  }
}

}  // namespace mtpp
