#include <doctest.h>

#include "chq/fit.hpp"
#include "chq/generator.hpp"
#include "oracles.hpp"

using namespace chq;

namespace {

PreferenceStructure induce(const ProductModel& model, const MobiusRep& m) {
  return induced_order(m, model, enumerate_grid(model));
}

}  // namespace

TEST_CASE("fit reproduces the rank vector of a generated order") {
  for (int t = 0; t < 6; ++t) {
    const auto gen = random_block_model(3, 3, 3, 2200 + t);
    const auto prefs = induce(gen.model, gen.mobius);
    FitProblem fp;
    fp.model = gen.model;
    fp.prefs = prefs;
    const auto res = fit_capacity(fp);
    REQUIRE(res.status == FitStatus::kFeasible);
    CHECK(res.min_slack >= -1e-9);
    CHECK(validate_capacity(capacity_of(res.mobius)).empty());
    const auto refit = induce(gen.model, res.mobius);
    CHECK(refit.ranks == prefs.ranks);
  }
}

TEST_CASE("fitted margins meet epsilon on every strict statement") {
  const auto gen = random_block_model(3, 3, 3, 97);
  const auto prefs = induce(gen.model, gen.mobius);
  FitProblem fp;
  fp.model = gen.model;
  fp.prefs = prefs;
  fp.epsilon = 5e-3;
  const auto res = fit_capacity(fp);
  REQUIRE(res.status == FitStatus::kFeasible);
  const auto grid = enumerate_grid(gen.model);
  std::vector<double> c(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> f(3);
    for (int i = 0; i < 3; ++i) f[i] = gen.model.value(i, grid[k].coords[i]);
    c[k] = choquet_mobius(res.mobius, f);
  }
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (prefs.ranks[a] < prefs.ranks[b])
        CHECK(c[a] - c[b] >= fp.epsilon - 1e-7);
      if (prefs.ranks[a] == prefs.ranks[b])
        CHECK(std::abs(c[a] - c[b]) <= 1e-7);
    }
}

TEST_CASE("preferences that reverse dominance are infeasible") {
  const auto model = testutil::make_model({{0, 1}, {0, 1}});
  PreferenceStructure prefs;
  prefs.kind = PrefKind::kRanked;
  prefs.alternatives = enumerate_grid(model);
  // (0,0) strictly above the dominating (1,1)
  prefs.ranks = {1, 2, 2, 3};
  FitProblem fp;
  fp.model = model;
  fp.prefs = prefs;
  const auto res = fit_capacity(fp);
  CHECK(res.status == FitStatus::kInfeasible);
  CHECK(res.max_violation > 0.0);
}

TEST_CASE("an empty preference list is trivially feasible") {
  const auto model = testutil::make_model({{0, 1}, {0, 1}});
  PreferenceStructure prefs;
  prefs.kind = PrefKind::kPairs;
  prefs.alternatives = enumerate_grid(model);
  FitProblem fp;
  fp.model = model;
  fp.prefs = prefs;
  const auto res = fit_capacity(fp);
  REQUIRE(res.status == FitStatus::kFeasible);
  CHECK(validate_capacity(capacity_of(res.mobius)).empty());
}

TEST_CASE("fit refuses more than twelve criteria") {
  ProductModel big;
  for (int i = 0; i < 13; ++i) {
    CriterionScale s;
    s.name = "c";
    s.levels = {"a", "b"};
    s.values = std::vector<double>{0.0, 1.0};
    big.scales.push_back(s);
  }
  PreferenceStructure prefs;
  prefs.kind = PrefKind::kPairs;
  prefs.alternatives = {Alternative{std::vector<int>(13, 0)}};
  FitProblem fp;
  fp.model = big;
  fp.prefs = prefs;
  CHECK_THROWS_AS(fit_capacity(fp), std::invalid_argument);
}

TEST_CASE("verify_representation agrees with the generator and flags breaks") {
  const auto gen = random_block_model(3, 3, 4, 321);
  const auto prefs = induce(gen.model, gen.mobius);
  const auto clean = verify_representation(gen.mobius, gen.model, prefs);
  CHECK(clean.checked > 0);
  CHECK(clean.mismatches.empty());

  // perturb one coefficient by +0.5 and renormalize on a crossing grid:
  // min capacity ties (0,3) ~ (1,0), the perturbed mixture separates them
  const auto model = testutil::make_model({{0, 1, 2, 3}, {0, 1, 2, 3}});
  const auto mn = mobius_of(min_capacity(2));
  const auto mprefs = induce(model, mn);
  auto bad = mn;
  bad.coeffs[0b01] += 0.5;
  for (SubsetIndex a = 1; a < bad.coeffs.size(); ++a) bad.coeffs[a] /= 1.5;
  const auto broken = verify_representation(bad, model, mprefs);
  CHECK(!broken.mismatches.empty());
}

TEST_CASE("pairs statements are audited one by one") {
  const auto model = testutil::make_model({{0, 1}, {0, 1}});
  PreferenceStructure prefs;
  prefs.kind = PrefKind::kPairs;
  prefs.alternatives = enumerate_grid(model);
  prefs.pairs = {{3, 0, true}, {1, 2, false}};
  const MobiusRep add = mobius_of(additive_capacity({0.5, 0.5}));
  const auto rep = verify_representation(add, model, prefs);
  CHECK(rep.checked == 2);
  CHECK(rep.mismatches.empty());

  PreferenceStructure wrong = prefs;
  wrong.pairs = {{0, 3, true}};  // claims (0,0) beats (1,1)
  const auto rep2 = verify_representation(add, model, wrong);
  REQUIRE(rep2.mismatches.size() == 1);
  CHECK(rep2.mismatches.front().stated == 1);
  CHECK(rep2.mismatches.front().delta < 0.0);
}

TEST_CASE("candidate value assignments are grid-searched") {
  const auto gen = random_block_model(3, 3, 3, 404);
  const auto prefs = induce(gen.model, gen.mobius);
  // candidate 0: compressed values that destroy the representation;
  // candidate 1: the true assignment
  auto squashed = gen.model;
  for (auto& s : squashed.scales) {
    auto& v = *s.values;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = k == 0 ? 0.0 : 5.0 + 1e-4 * k;
  }
  const auto best = fit_capacity_over_candidates({squashed, gen.model}, prefs);
  REQUIRE(best.candidate >= 0);
  const auto& chosen = best.candidate == 0 ? squashed : gen.model;
  const auto refit = induce(chosen, best.result.mobius);
  CHECK(refit.ranks == prefs.ranks);
}
