#pragma once

#include <cstdint>
#include <vector>

#include "chq/product_space.hpp"

namespace chq {

// Capacity identification from finite preference data: LP over the Mobius
// coefficients m(A), A nonempty, maximizing the minimum slack of the strict
// constraints. Value functions are fixed inputs (carried by the model).
struct FitProblem {
  ProductModel model;
  PreferenceStructure prefs;
  double epsilon = 1e-3;      // strict-preference margin
  double solver_tol = 1e-9;
};

enum class FitStatus { kFeasible, kInfeasible };

struct FitResult {
  FitStatus status = FitStatus::kInfeasible;
  MobiusRep mobius;            // meaningful when feasible
  double max_violation = 0.0;  // worst margin shortfall when infeasible
  double min_slack = 0.0;      // optimal value of the max-min-slack objective
  int active_constraints = 0;
};

inline constexpr int kFitMaxCriteria = 12;

FitResult fit_capacity(const FitProblem& problem);

// Joint (capacity, values) identification is out of scope; this grid-searches
// user-supplied candidate value assignments instead, fitting each one and
// keeping the feasible result with the largest minimum slack.
struct CandidateFit {
  int candidate = -1;  // index into the candidate list, -1 if none feasible
  FitResult result;
};
CandidateFit fit_capacity_over_candidates(
    const std::vector<ProductModel>& candidates,
    const PreferenceStructure& prefs, double epsilon = 1e-3,
    double solver_tol = 1e-9);

struct RepresentationMismatch {
  int a = 0, b = 0;   // alternative indices
  int stated = 0;     // +1 a preferred, 0 indifferent, -1 b preferred
  double delta = 0.0; // C(a) - C(b)
};

struct RepresentationReport {
  std::uint64_t checked = 0;
  std::vector<RepresentationMismatch> mismatches;
};

// Sign agreement of Choquet differences with every stated comparison.
RepresentationReport verify_representation(const MobiusRep& m,
                                           const ProductModel& model,
                                           const PreferenceStructure& prefs,
                                           double tol = kTolLin);

}  // namespace chq
