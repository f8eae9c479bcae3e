#include "chq/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chq/simplex.hpp"

namespace chq {

namespace {

std::vector<double> scores_of(const ProductModel& model, const Alternative& a) {
  std::vector<double> f(model.n());
  for (int i = 0; i < model.n(); ++i) f[i] = model.value(i, a.coords[i]);
  return f;
}

// min over A of the alternative's scores, for every nonempty A
std::vector<double> mins_of(const ProductModel& model, const Alternative& a) {
  const int n = model.n();
  const auto f = scores_of(model, a);
  const SubsetIndex size = SubsetIndex{1} << n;
  std::vector<double> mins(size, 0.0);
  for (SubsetIndex s = 1; s < size; ++s) {
    const int i = std::countr_zero(s);
    const SubsetIndex rest = s & (s - 1);
    mins[s] = rest ? std::min(f[i], mins[rest]) : f[i];
  }
  return mins;
}

// preference statements as (better, worse, strict) over alternative indices
std::vector<PairStatement> statements(const PreferenceStructure& prefs) {
  if (prefs.kind == PrefKind::kPairs) return prefs.pairs;
  // RANKED: chain the members of each class, one strict link per adjacent
  // class; together with transitivity this reproduces every comparison.
  std::vector<int> idx(prefs.alternatives.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return prefs.ranks[a] < prefs.ranks[b]; });
  std::vector<PairStatement> out;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const bool tie = prefs.ranks[idx[k]] == prefs.ranks[idx[k - 1]];
    out.push_back({idx[k - 1], idx[k], !tie});
  }
  return out;
}

}  // namespace

FitResult fit_capacity(const FitProblem& problem) {
  const auto& model = problem.model;
  const auto& prefs = problem.prefs;
  const int n = model.n();
  if (n > kFitMaxCriteria)
    throw std::invalid_argument("fit_capacity: n > 12 (2^n LP variables)");
  if (!model.has_values())
    throw std::invalid_argument("fit_capacity: model has no value functions");
  if (problem.epsilon <= 0)
    throw std::invalid_argument("fit_capacity: epsilon must be positive");

  const SubsetIndex size = SubsetIndex{1} << n;
  const int nm = static_cast<int>(size) - 1;  // m(A), A nonempty; var A-1
  const auto stmts = statements(prefs);
  const int na = static_cast<int>(prefs.alternatives.size());
  for (const auto& s : stmts)
    if (s.better < 0 || s.better >= na || s.worse < 0 || s.worse >= na)
      throw std::invalid_argument("fit_capacity: statement index out of range");
  bool any_strict = false;
  for (const auto& s : stmts) any_strict |= s.strict;
  const int nv = nm + (any_strict ? 1 : 0);
  const int t_var = nm;

  LinearProgram lp;
  lp.num_vars = nv;
  lp.maximize.assign(nv, 0.0);
  if (any_strict) lp.maximize[t_var] = 1.0;

  // (i) normalization
  {
    LpRow row;
    row.coeffs.assign(nv, 0.0);
    for (int a = 0; a < nm; ++a) row.coeffs[a] = 1.0;
    row.type = RowType::kEq;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }
  // (ii) monotonicity: for all A, i in A: sum_{B subset A, i in B} m(B) >= 0
  for (SubsetIndex a = 1; a < size; ++a)
    for (int i = 0; i < n; ++i) {
      if (!(a >> i & 1)) continue;
      LpRow row;
      row.coeffs.assign(nv, 0.0);
      for (SubsetIndex b = a; b != 0; b = (b - 1) & a)
        if (b >> i & 1) row.coeffs[b - 1] = 1.0;
      row.type = RowType::kGe;
      row.rhs = 0.0;
      lp.rows.push_back(std::move(row));
    }
  // (iii)/(iv) preference statements
  std::vector<std::vector<double>> alt_mins(prefs.alternatives.size());
  auto mins_at = [&](int k) -> const std::vector<double>& {
    if (alt_mins[k].empty()) alt_mins[k] = mins_of(model, prefs.alternatives[k]);
    return alt_mins[k];
  };
  for (const auto& s : stmts) {
    LpRow row;
    row.coeffs.assign(nv, 0.0);
    const auto& mb = mins_at(s.better);
    const auto& mw = mins_at(s.worse);
    for (SubsetIndex a = 1; a < size; ++a) row.coeffs[a - 1] = mb[a] - mw[a];
    if (s.strict) {
      row.coeffs[t_var] = -1.0;
      row.type = RowType::kGe;
      row.rhs = problem.epsilon;
    } else {
      row.type = RowType::kEq;
      row.rhs = 0.0;
    }
    lp.rows.push_back(std::move(row));
  }

  const LpSolution sol = solve_lp(lp, problem.solver_tol);
  FitResult res;
  if (sol.status == LpStatus::kUnbounded)
    throw std::runtime_error("fit_capacity: LP unbounded (solver diagnostics: "
                             "objective escaped; check input values)");
  if (sol.status == LpStatus::kInfeasible) {
    res.status = FitStatus::kInfeasible;
    res.max_violation = sol.objective;  // residual phase-1 infeasibility
    return res;
  }
  const double t_opt = any_strict ? sol.x[t_var] : 0.0;
  res.min_slack = t_opt;
  std::vector<double> coeffs(size, 0.0);
  for (SubsetIndex a = 1; a < size; ++a) coeffs[a] = sol.x[a - 1];
  res.mobius = make_mobius(n, std::move(coeffs));
  if (t_opt >= -problem.solver_tol) {
    res.status = FitStatus::kFeasible;
  } else {
    res.status = FitStatus::kInfeasible;
    res.max_violation = -t_opt;
  }
  // binding inequality constraints at the solution
  for (const auto& row : lp.rows) {
    if (row.type == RowType::kEq) continue;
    double lhs = 0.0;
    for (int c = 0; c < nv; ++c) lhs += row.coeffs[c] * sol.x[c];
    if (std::abs(lhs - row.rhs) <= 1e-7) ++res.active_constraints;
  }
  return res;
}

CandidateFit fit_capacity_over_candidates(
    const std::vector<ProductModel>& candidates,
    const PreferenceStructure& prefs, double epsilon, double solver_tol) {
  CandidateFit best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    FitProblem fp;
    fp.model = candidates[k];
    fp.prefs = prefs;
    fp.epsilon = epsilon;
    fp.solver_tol = solver_tol;
    const FitResult res = fit_capacity(fp);
    if (res.status != FitStatus::kFeasible) continue;
    if (best.candidate < 0 || res.min_slack > best.result.min_slack) {
      best.candidate = static_cast<int>(k);
      best.result = res;
    }
  }
  return best;
}

RepresentationReport verify_representation(const MobiusRep& m,
                                           const ProductModel& model,
                                           const PreferenceStructure& prefs,
                                           double tol) {
  RepresentationReport rep;
  std::vector<double> c(prefs.alternatives.size());
  for (std::size_t k = 0; k < prefs.alternatives.size(); ++k) {
    std::vector<double> f(model.n());
    for (int i = 0; i < model.n(); ++i)
      f[i] = model.value(i, prefs.alternatives[k].coords[i]);
    c[k] = choquet_mobius(m, f);
  }
  auto audit = [&](int a, int b, int stated) {
    ++rep.checked;
    const double delta = c[a] - c[b];
    const bool ok = stated > 0    ? delta > tol
                    : stated == 0 ? std::abs(delta) <= tol
                                  : delta < -tol;
    if (!ok) rep.mismatches.push_back({a, b, stated, delta});
  };
  if (prefs.kind == PrefKind::kRanked) {
    for (std::size_t a = 0; a < prefs.alternatives.size(); ++a)
      for (std::size_t b = a + 1; b < prefs.alternatives.size(); ++b) {
        const int stated = (prefs.ranks[b] > prefs.ranks[a]) -
                           (prefs.ranks[b] < prefs.ranks[a]);
        audit(static_cast<int>(a), static_cast<int>(b), stated);
      }
  } else {
    for (const auto& s : prefs.pairs) audit(s.better, s.worse, s.strict ? 1 : 0);
  }
  return rep;
}

}  // namespace chq
