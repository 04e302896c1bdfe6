#include "hptp/simplex.hpp"

#include <cmath>
#include <vector>

namespace hptp::detail {

LpResult simplex_max(const RealVector& c, const RealMatrix& a, const RealVector& b,
                     int max_pivots) {
  const Index m = a.rows();
  const Index n = a.cols();
  for (Index i = 0; i < m; ++i)
    if (b(i) < 0) throw Error("simplex_max: rhs must be nonnegative");

  // tableau over [structural | slack | rhs]; slack basis is the initial BFS
  RealMatrix tab = RealMatrix::Zero(m + 1, n + m + 1);
  tab.block(0, 0, m, n) = a;
  tab.block(0, n, m, m) = RealMatrix::Identity(m, m);
  tab.block(0, n + m, m, 1) = b;
  tab.block(m, 0, 1, n) = -c.transpose();

  std::vector<Index> basis(m);
  for (Index i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-11;
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    // entering column: Dantzig for speed, Bland late for anti-cycling
    Index col = -1;
    if (pivot < max_pivots / 2) {
      double best = -eps;
      for (Index j = 0; j < n + m; ++j)
        if (tab(m, j) < best) {
          best = tab(m, j);
          col = j;
        }
    } else {
      for (Index j = 0; j < n + m; ++j)
        if (tab(m, j) < -eps) {
          col = j;
          break;
        }
    }
    if (col < 0) {
      LpResult out;
      out.ok = true;
      out.value = tab(m, n + m);
      out.z = RealVector::Zero(n);
      for (Index i = 0; i < m; ++i)
        if (basis[i] < n) out.z(basis[i]) = tab(i, n + m);
      return out;
    }

    // ratio test
    Index row = -1;
    double best_ratio = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (tab(i, col) > eps) {
        const double ratio = tab(i, n + m) / tab(i, col);
        if (row < 0 || ratio < best_ratio - eps ||
            (ratio < best_ratio + eps && basis[i] < basis[row])) {
          row = i;
          best_ratio = ratio;
        }
      }
    }
    if (row < 0) return {};  // unbounded

    tab.row(row) /= tab(row, col);
    for (Index i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double factor = tab(i, col);
      if (factor != 0.0) tab.row(i) -= factor * tab.row(row);
    }
    basis[row] = col;
  }
  return {};  // pivot limit
}

}  // namespace hptp::detail
