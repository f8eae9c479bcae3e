#include "chq/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chq {

namespace {

struct Tableau {
  int rows = 0, cols = 0;  // cols excludes the rhs column
  std::vector<double> a;   // (rows+1) x (cols+1); last row: objective, last col: rhs
  std::vector<int> basis;
  double tol = 1e-9;

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * (cols + 1) + c]; }
  double get(int r, int c) const {
    return a[static_cast<std::size_t>(r) * (cols + 1) + c];
  }

  void pivot(int pr, int pc) {
    const double piv = get(pr, pc);
    for (int c = 0; c <= cols; ++c) at(pr, c) /= piv;
    for (int r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double factor = get(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c <= cols; ++c) at(r, c) -= factor * get(pr, c);
    }
    basis[pr] = pc;
  }

  // Bland: entering = smallest eligible column, leaving = smallest basis index
  // among minimum-ratio rows. allowed(c) gates candidate columns.
  template <typename Allowed>
  LpStatus iterate(const Allowed& allowed) {
    for (;;) {
      int pc = -1;
      for (int c = 0; c < cols; ++c)
        if (allowed(c) && get(rows, c) < -tol) {
          pc = c;
          break;
        }
      if (pc < 0) return LpStatus::kOptimal;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows; ++r) {
        if (get(r, pc) <= tol) continue;
        const double ratio = get(r, cols) / get(r, pc);
        if (ratio < best - tol ||
            (ratio < best + tol && (pr < 0 || basis[r] < basis[pr]))) {
          best = ratio;
          pr = r;
        }
      }
      if (pr < 0) return LpStatus::kUnbounded;
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const int v = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.coeffs.size()) != v)
      throw std::invalid_argument("solve_lp: row width mismatch");

  // columns: x+ (v), x- (v), slack/surplus (one per inequality), artificials
  int n_slack = 0;
  for (const auto& row : lp.rows)
    if (row.type != RowType::kEq) ++n_slack;

  Tableau t;
  t.tol = tol;
  t.rows = m;
  t.cols = 2 * v + n_slack + m;  // one artificial per row (unused ones stay 0)
  t.a.assign(static_cast<std::size_t>(m + 1) * (t.cols + 1), 0.0);
  t.basis.assign(m, -1);

  const int slack0 = 2 * v;
  const int art0 = 2 * v + n_slack;

  int si = 0;
  for (int r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    double sign = 1.0;
    RowType type = row.type;
    if (row.rhs < 0.0) {
      sign = -1.0;
      if (type == RowType::kLe)
        type = RowType::kGe;
      else if (type == RowType::kGe)
        type = RowType::kLe;
    }
    for (int c = 0; c < v; ++c) {
      t.at(r, c) = sign * row.coeffs[c];
      t.at(r, v + c) = -sign * row.coeffs[c];
    }
    t.at(r, t.cols) = sign * row.rhs;
    if (type == RowType::kLe) {
      t.at(r, slack0 + si) = 1.0;
      t.basis[r] = slack0 + si;
      ++si;
    } else if (type == RowType::kGe) {
      t.at(r, slack0 + si) = -1.0;
      ++si;
    }
    if (t.basis[r] < 0) {
      t.at(r, art0 + r) = 1.0;
      t.basis[r] = art0 + r;
    }
  }

  // Phase 1: minimize sum of artificials.
  bool need_phase1 = false;
  for (int r = 0; r < m; ++r)
    if (t.basis[r] >= art0) {
      need_phase1 = true;
      for (int c = 0; c <= t.cols; ++c) t.at(m, c) -= t.get(r, c);
      t.at(m, t.basis[r]) = 0.0;
    }
  if (need_phase1) {
    const auto st = t.iterate([&](int) { return true; });
    if (st == LpStatus::kUnbounded) return {LpStatus::kUnbounded, {}, 0.0};
    if (t.get(m, t.cols) < -tol * 10) {
      LpSolution sol;
      sol.status = LpStatus::kInfeasible;
      sol.objective = -t.get(m, t.cols);  // residual infeasibility
      return sol;
    }
    // drive remaining artificials out of the basis
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < art0) continue;
      int pc = -1;
      for (int c = 0; c < art0; ++c)
        if (std::abs(t.get(r, c)) > tol) {
          pc = c;
          break;
        }
      if (pc >= 0) t.pivot(r, pc);
      // else: redundant row; artificial stays basic at zero and its column is
      // never eligible in phase 2
    }
  }

  // Phase 2 objective row: z_j - c_j for the real objective.
  for (int c = 0; c <= t.cols; ++c) t.at(m, c) = 0.0;
  for (int c = 0; c < v; ++c) {
    t.at(m, c) = -lp.maximize[c];
    t.at(m, v + c) = lp.maximize[c];
  }
  for (int r = 0; r < m; ++r) {
    const double cb = t.get(m, t.basis[r]);
    if (cb == 0.0) continue;
    for (int c = 0; c <= t.cols; ++c) t.at(m, c) -= cb * t.get(r, c);
  }
  const auto st = t.iterate([&](int c) { return c < art0; });
  if (st == LpStatus::kUnbounded) return {LpStatus::kUnbounded, {}, 0.0};

  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.x.assign(v, 0.0);
  for (int r = 0; r < m; ++r) {
    const int b = t.basis[r];
    const double val = t.get(r, t.cols);
    if (b < v)
      sol.x[b] += val;
    else if (b < 2 * v)
      sol.x[b - v] -= val;
  }
  for (int c = 0; c < v; ++c) sol.objective += lp.maximize[c] * sol.x[c];
  return sol;
}

}  // namespace chq
