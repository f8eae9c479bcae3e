#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chq/axioms.hpp"
#include "chq/fit.hpp"
#include "chq/relations.hpp"

namespace chq {

// Per-clique rescaling of a representation: the input values f relate to the
// returned values g by f_i = alpha_A g_i + beta_A for i in clique A, and the
// returned Mobius rep is m'(B) = alpha_A m(B) / sum_C alpha_C v(C), the
// capacity paired with g. Induced preferences are unchanged.
struct CliqueTransform {
  std::vector<std::vector<int>> cliques;
  std::vector<double> alpha;  // > 0, per clique
  std::vector<double> beta;
};

// Errors when some B with |m(B)| > tol straddles two cliques, or alpha <= 0.
std::pair<MobiusRep, ProductModel> apply_uniqueness_transform(
    const MobiusRep& m, const ProductModel& model, const CliqueTransform& t,
    double tol = kTolLin);

// Relation-based integral: phi(x) = sum_A m(A) PhiMin(x, A), where
// PhiMin(x, A) is the value of an R^x-minimal coordinate of A (ties resolved
// to the smallest value). Errors when R is incomplete at x.
double choquet_via_relations(const MobiusRep& m, const ProductModel& model,
                             const Alternative& x, const RelationTable& table);

// Checks that two coordinate orderings agreeing on every pair across the
// subset boundary yield equal weight sums over the subset.
// rank vectors follow the weights_for_ordering convention.
bool check_A_NA(const MobiusRep& m, const Capacity& c,
                std::span<const int> rank_a, std::span<const int> rank_b,
                SubsetIndex subset, double tol = kTolLin);

struct StageResult {
  std::string stage;
  bool pass = false;
  std::string detail;
};

struct RoundtripReport {
  std::vector<StageResult> stages;
  std::uint64_t seed = 0;
  bool all_pass() const;
  const StageResult* first_failure() const;
};

// validate -> induce -> axiom battery -> fit -> verify + rank round trip ->
// random clique transform -> rank invariance.
RoundtripReport roundtrip_suite(const ProductModel& model, const MobiusRep& m,
                                std::uint64_t seed, CheckOptions options = {});

}  // namespace chq
