#pragma once

#include <vector>

namespace chq {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

enum class RowType { kLe, kGe, kEq };

struct LpRow {
  std::vector<double> coeffs;
  RowType type = RowType::kLe;
  double rhs = 0.0;
};

// maximize c.x subject to rows; variables are free (internally split).
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> maximize;
  std::vector<LpRow> rows;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Dense two-phase tableau simplex, Bland's rule (deterministic, anti-cycling).
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace chq
