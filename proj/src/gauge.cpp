#include <cmath>
#include <vector>

#include "tlb/bounds.hpp"

namespace tlb {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 20000;

// Dense tableau simplex with Bland's rule. Columns [0, ncols) are decision
// variables, the remainder artificials; the last tableau column is the rhs
// and the last row holds reduced costs (for minimization, entering requires
// a negative reduced cost).
struct Tableau {
  Matrix t;
  std::vector<int> basis;
  int rows;
  int vars;  // decision + artificial columns

  double& at(int r, int c) { return t(r, c); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= rows; ++r) {
      if (r == row) continue;
      const double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Returns false when optimal; `limit` restricts which columns may enter.
  bool step(int limit) {
    int enter = -1;
    for (int c = 0; c < limit; ++c) {
      if (t(rows, c) < -kPivotTol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    double best = kInfinity;
    for (int r = 0; r < rows; ++r) {
      if (t(r, enter) > kPivotTol) {
        const double ratio = t(r, t.cols() - 1) / t(r, enter);
        if (ratio < best - kPivotTol ||
            (ratio < best + kPivotTol && leave >= 0 &&
             basis[static_cast<std::size_t>(r)] <
                 basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) {
      throw infeasible_error("gauge: unbounded linear program");
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

double gauge(const std::vector<Vector>& arms, const Vector& y) {
  if (arms.empty()) throw structural_error("gauge: no arms");
  const int d = static_cast<int>(arms.front().size());
  if (y.size() != d) throw structural_error("gauge: dimension mismatch");
  if (y.norm() == 0.0) throw structural_error("gauge: zero direction");

  const int n = static_cast<int>(arms.size());
  const int ncols = 2 * n;  // arms then negated arms

  Tableau tab;
  tab.rows = d;
  tab.vars = ncols + d;
  tab.t = Matrix::Zero(d + 1, tab.vars + 1);
  tab.basis.assign(static_cast<std::size_t>(d), 0);

  for (int r = 0; r < d; ++r) {
    const double sign = y[r] >= 0.0 ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      if (arms[static_cast<std::size_t>(j)].size() != d) {
        throw structural_error("gauge: mixed arm dimensions");
      }
      const double v = arms[static_cast<std::size_t>(j)][r];
      tab.at(r, j) = sign * v;
      tab.at(r, n + j) = -sign * v;
    }
    tab.at(r, ncols + r) = 1.0;
    tab.at(r, tab.vars) = sign * y[r];
    tab.basis[static_cast<std::size_t>(r)] = ncols + r;
  }

  // Phase 1: minimize the artificial mass.
  for (int r = 0; r < d; ++r) tab.t.row(d) -= tab.t.row(r);
  for (int r = 0; r < d; ++r) tab.at(d, ncols + r) = 0.0;

  int pivots = 0;
  while (tab.step(ncols)) {
    if (++pivots > kMaxPivots) {
      throw nonterminating_error("gauge: simplex did not converge");
    }
  }
  const double infeas = -tab.at(d, tab.vars);
  if (infeas > 1e-9 * std::max(1.0, y.norm())) {
    throw infeasible_error("gauge: direction outside the span of the arms");
  }

  // Drive leftover artificials out of the basis. Rows without a usable
  // decision column are redundant constraints; they stay all-zero in the
  // decision columns and can never pivot again.
  for (int r = 0; r < d; ++r) {
    if (tab.basis[static_cast<std::size_t>(r)] < ncols) continue;
    for (int c = 0; c < ncols; ++c) {
      if (std::abs(tab.at(r, c)) > kPivotTol) {
        tab.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2: minimize the total coefficient mass sum a_i.
  tab.t.row(d).setZero();
  for (int c = 0; c < ncols; ++c) tab.at(d, c) = 1.0;
  for (int r = 0; r < d; ++r) {
    const int b = tab.basis[static_cast<std::size_t>(r)];
    if (b < ncols) tab.t.row(d) -= tab.t.row(r);  // cost of each basic is 1
  }

  pivots = 0;
  while (tab.step(ncols)) {
    if (++pivots > kMaxPivots) {
      throw nonterminating_error("gauge: simplex did not converge");
    }
  }

  double mass = 0.0;
  for (int r = 0; r < d; ++r) {
    if (tab.basis[static_cast<std::size_t>(r)] < ncols) {
      mass += tab.at(r, tab.vars);
    }
  }
  if (!(mass > 0.0)) {
    throw structural_error("gauge: degenerate optimum");
  }
  return 1.0 / mass;
}

}  // namespace tlb
