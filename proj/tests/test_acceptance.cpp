// Acceptance suite: every criterion prints one pass/fail line.

#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "chq/generator.hpp"
#include "chq/json_io.hpp"
#include "chq/transform.hpp"
#include "oracles.hpp"

using namespace chq;

namespace {

struct Criterion {
  const char* name;
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  ~Criterion() {
    std::printf("criterion %-38s %s%s%s\n", name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct SuiteModel {
  GeneratedModel gen;
  PreferenceStructure prefs;
  GridView view;
  MarginalOrder marginal;
  RelationTable table;
  std::vector<PartitionCell> cells;
};

// The 50 seeded models shared by criteria 5-10.
const std::vector<SuiteModel>& suite_models() {
  static const std::vector<SuiteModel> models = [] {
    std::vector<SuiteModel> out;
    for (int t = 0; t < 50; ++t) {
      SuiteModel sm{random_block_model(3, 3, 4, 100 + t), {}, {}, {}, {}, {}};
      sm.prefs = induced_order(sm.gen.mobius, sm.gen.model,
                               enumerate_grid(sm.gen.model));
      sm.view = *grid_ranking(sm.gen.model, sm.prefs);
      sm.marginal = *marginal_order(sm.gen.model, sm.prefs).order;
      sm.table = build_relation_table(sm.gen.model, sm.view, sm.marginal);
      sm.cells = partition_cells(sm.table, sm.view);
      out.push_back(std::move(sm));
    }
    return out;
  }();
  return models;
}

}  // namespace

TEST_CASE("criterion 1: transform round trip") {
  Criterion c{"1 transform-round-trip"};
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix rng(1001);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.below(9));  // 2..10
    const Capacity cap = random_capacity(n, rng);
    const Capacity back = capacity_of(mobius_of(cap));
    for (SubsetIndex a = 0; a < cap.values.size(); ++a)
      if (std::abs(back.values[a] - cap.values[a]) > 1e-12)
        c.fail("round trip off by more than 1e-12 at trial " + std::to_string(t));
  }
  const double secs = seconds_since(t0);
  if (secs >= 5.0) c.fail("runtime " + std::to_string(secs) + "s >= 5s");
  CHECK(c.pass);
}

TEST_CASE("criterion 2: integral form equivalence") {
  Criterion c{"2 form-equivalence"};
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix rng(1002);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.below(9));
    const Capacity cap = random_capacity(n, rng);
    const auto f = random_scores(n, rng);
    if (std::abs(choquet_sorted(cap, f) - choquet_mobius(mobius_of(cap), f)) >
        1e-9)
      c.fail("forms disagree at trial " + std::to_string(t));
  }
  const double secs = seconds_since(t0);
  if (secs >= 5.0) c.fail("runtime " + std::to_string(secs) + "s >= 5s");
  CHECK(c.pass);
}

TEST_CASE("criterion 3: special cases") {
  Criterion c{"3 special-cases"};
  SplitMix rng(1003);
  const int n = 4;
  const Capacity mn = min_capacity(n), mx = max_capacity(n);
  std::vector<double> w{0.1, 0.4, 0.2, 0.3};
  const Capacity add = additive_capacity(w);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_scores(n, rng, 2.0);
    double lo = f[0], hi = f[0], dot = 0.0;
    for (int i = 0; i < n; ++i) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
      dot += w[i] * f[i];
    }
    if (std::abs(choquet_sorted(mn, f) - lo) > 1e-9) c.fail("min case");
    if (std::abs(choquet_sorted(mx, f) - hi) > 1e-9) c.fail("max case");
    if (std::abs(choquet_sorted(add, f) - dot) > 1e-9) c.fail("additive case");
  }
  if (classify_special(mobius_of(mn)) != SpecialKind::kMin) c.fail("min tag");
  if (classify_special(mobius_of(mx)) != SpecialKind::kMax) c.fail("max tag");
  if (classify_special(mobius_of(add)) != SpecialKind::kAdditive)
    c.fail("additive tag");
  CHECK(c.pass);
}

TEST_CASE("criterion 4: comonotonic additivity") {
  Criterion c{"4 comonotonic-additivity"};
  SplitMix rng(1004);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const Capacity cap = random_capacity(n, rng);
    auto f = random_scores(n, rng, 2.0);
    auto g = random_scores(n, rng, 2.0);
    // reorder g's values to share f's coordinate ordering
    std::vector<int> by_f(n), by_g(n);
    for (int i = 0; i < n; ++i) by_f[i] = by_g[i] = i;
    std::stable_sort(by_f.begin(), by_f.end(),
                     [&](int a, int b) { return f[a] < f[b]; });
    std::stable_sort(by_g.begin(), by_g.end(),
                     [&](int a, int b) { return g[a] < g[b]; });
    std::vector<double> g2(n);
    for (int k = 0; k < n; ++k) g2[by_f[k]] = g[by_g[k]];
    if (!is_comonotonic(f, g2)) {
      c.fail("generator produced a non-comonotonic pair");
      continue;
    }
    std::vector<double> sum(n);
    for (int i = 0; i < n; ++i) sum[i] = f[i] + g2[i];
    if (std::abs(choquet_sorted(cap, sum) - choquet_sorted(cap, f) -
                 choquet_sorted(cap, g2)) > 1e-9)
      c.fail("additivity violated at trial " + std::to_string(t));
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 5: necessity suite") {
  Criterion c{"5 necessity-suite"};
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    CheckOptions opts;
    opts.budget = 400'000'000;  // exhaustive at n=3, <=4 levels
    AxiomContext ctx = make_context(sm.gen.model, sm.prefs, opts);
    for (const auto* id :
         {"A1", "A2", "A3", "A3-ACYCL", "A4", "A6", "MONO", "A5"}) {
      const auto rep = run_axiom(ctx, id);
      if (rep.status != AxiomStatus::kPass || rep.coverage != 1.0)
        c.fail(std::string(id) + " " + to_string(rep.status) + " on model " +
               std::to_string(k));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 600.0) c.fail("runtime " + std::to_string(secs) + "s >= 600s");
  CHECK(c.pass);
}

TEST_CASE("criterion 6: relation-value agreement") {
  Criterion c{"6 relation-value-agreement"};
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    const auto cliques = interaction_cliques_from_prefs(sm.table);
    const auto& model = sm.gen.model;
    for (std::uint64_t z = 0; z < sm.table.grid; ++z) {
      const auto coords = sm.view.coords(z);
      bool extreme = false;
      for (int i = 0; i < 3; ++i)
        extreme |= coords[i] == 0 || coords[i] + 1 == model.scales[i].size();
      if (extreme) continue;
      for (const auto& clique : cliques) {
        for (std::size_t a = 0; a < clique.size(); ++a)
          for (std::size_t b = a + 1; b < clique.size(); ++b) {
            const int i = clique[a], j = clique[b];
            const double fi = model.value(i, coords[i]);
            const double fj = model.value(j, coords[j]);
            if (sm.table.S(z, i, j) != (fi > fj) ||
                sm.table.S(z, j, i) != (fj > fi) ||
                sm.table.E(z, i, j) != (fi == fj))
              c.fail("flag/value mismatch on model " + std::to_string(k));
          }
      }
    }
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 7: partition coverage") {
  Criterion c{"7 partition-coverage"};
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    std::vector<char> covered(sm.table.grid, 0);
    for (const auto& cell : sm.cells)
      for (auto m : cell.members) covered[m] = 1;
    for (std::uint64_t z = 0; z < sm.table.grid; ++z)
      if (!covered[z]) c.fail("uncovered point on model " + std::to_string(k));
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 8: fit round trip") {
  Criterion c{"8 fit-round-trip"};
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    FitProblem fp;
    fp.model = sm.gen.model;
    fp.prefs = sm.prefs;
    const auto res = fit_capacity(fp);
    if (res.status != FitStatus::kFeasible) {
      c.fail("fit infeasible on model " + std::to_string(k));
      continue;
    }
    const auto refit = induced_order(res.mobius, sm.gen.model,
                                     enumerate_grid(sm.gen.model));
    if (refit.ranks != sm.prefs.ranks)
      c.fail("refit rank vector differs on model " + std::to_string(k));
  }
  const double secs = seconds_since(t0);
  if (secs >= 300.0) c.fail("runtime " + std::to_string(secs) + "s >= 300s");
  CHECK(c.pass);
}

TEST_CASE("criterion 9: uniqueness invariance") {
  Criterion c{"9 uniqueness-invariance"};
  SplitMix rng(1009);
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    const auto grid = enumerate_grid(sm.gen.model);
    for (int t = 0; t < 10; ++t) {
      CliqueTransform ct;
      ct.cliques = cliques_from_mobius(sm.gen.mobius);
      for (std::size_t q = 0; q < ct.cliques.size(); ++q) {
        ct.alpha.push_back(rng.uniform(0.2, 5.0));
        ct.beta.push_back(rng.uniform(-2.0, 2.0));
      }
      const auto [m2, model2] =
          apply_uniqueness_transform(sm.gen.mobius, sm.gen.model, ct);
      const auto again = induced_order(m2, model2, grid);
      if (again.ranks != sm.prefs.ranks)
        c.fail("rank vector changed on model " + std::to_string(k));
    }
    // single-clique transform: mobius unchanged to 1e-12
    CliqueTransform single;
    single.cliques = {{0, 1, 2}};
    single.alpha = {rng.uniform(0.2, 5.0)};
    single.beta = {rng.uniform(-2.0, 2.0)};
    const auto [m1, model1] =
        apply_uniqueness_transform(sm.gen.mobius, sm.gen.model, single);
    for (SubsetIndex a = 0; a < m1.coeffs.size(); ++a)
      if (std::abs(m1.coeffs[a] - sm.gen.mobius.coeffs[a]) > 1e-12)
        c.fail("single-clique transform moved m on model " + std::to_string(k));
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 10: relation-based integral equivalence") {
  Criterion c{"10 eq2-equivalence"};
  for (std::size_t k = 0; k < suite_models().size(); ++k) {
    const auto& sm = suite_models()[k];
    for (const auto& alt : enumerate_grid(sm.gen.model)) {
      std::vector<double> f(3);
      for (int i = 0; i < 3; ++i) f[i] = sm.gen.model.value(i, alt.coords[i]);
      const double via_rel =
          choquet_via_relations(sm.gen.mobius, sm.gen.model, alt, sm.table);
      if (std::abs(via_rel - choquet_mobius(sm.gen.mobius, f)) > 1e-9)
        c.fail("mismatch on model " + std::to_string(k));
    }
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 11: clique consistency") {
  Criterion c{"11 clique-consistency"};
  int cases = 0;
  for (int t = 0; t < 40 && cases < 12; ++t) {
    const auto gen = random_block_model(3, 3, 4, 8600 + t);
    bool decomposable = gen.cliques.size() >= 2;
    for (const auto& q : gen.cliques) decomposable &= q.size() <= 2;
    if (!decomposable || gen.cliques.size() == 3) continue;  // need a real block
    ++cases;
    const auto prefs =
        induced_order(gen.mobius, gen.model, enumerate_grid(gen.model));
    const auto view = *grid_ranking(gen.model, prefs);
    const auto mo = *marginal_order(gen.model, prefs).order;
    const auto table = build_relation_table(gen.model, view, mo);
    if (interaction_cliques_from_prefs(table) != cliques_from_mobius(gen.mobius))
      c.fail("clique mismatch at seed " + std::to_string(8600 + t));
  }
  if (cases < 10)
    c.fail("only " + std::to_string(cases) + " block-decomposable cases");
  CHECK(c.pass);
}

TEST_CASE("criterion 12: negative controls") {
  Criterion c{"12 negative-controls"};
  const auto model2 = testutil::make_model({{0, 1}, {0, 1}});

  {  // A1: three-cycle
    PreferenceStructure cyc;
    cyc.kind = PrefKind::kPairs;
    cyc.alternatives = enumerate_grid(model2);
    cyc.pairs = {{0, 1, true}, {1, 2, true}, {2, 0, true}};
    AxiomContext ctx = make_context(model2, cyc);
    const auto rep = check_weak_order(ctx);
    if (rep.status != AxiomStatus::kFail || rep.witnesses.empty())
      c.fail("A1 control");
  }
  {  // A2: reversal
    PreferenceStructure bad;
    bad.kind = PrefKind::kPairs;
    bad.alternatives = enumerate_grid(model2);
    bad.pairs = {{2, 0, true}, {1, 3, true}};
    AxiomContext ctx = make_context(model2, bad);
    const auto rep = check_weak_separability(ctx);
    if (rep.status != AxiomStatus::kFail || rep.witnesses.empty())
      c.fail("A2 control");
  }
  {  // A3-ACYCL: injected cycle
    RelationTable t;
    t.n = 3;
    t.dims = {1, 1, 1};
    t.grid = 1;
    t.raw_bits.assign(9, 1);
    t.mem_bits.assign(9, 1);
    t.mem_bits[1 * 3 + 0] = 0;  // 0 S 1
    t.mem_bits[2 * 3 + 1] = 0;  // 1 S 2
    t.mem_bits[0 * 3 + 2] = 0;  // 2 S 0
    const auto rep = check_acyclicity(t);
    if (rep.status != AxiomStatus::kFail || rep.witnesses.empty())
      c.fail("A3-ACYCL control");
  }
  // A3, A4, A5, A6: perturbed rankings of a crossing min model
  const auto model = testutil::make_model({{0, 1, 2, 3}, {0, 1, 2, 3}});
  const auto base =
      induced_order(mobius_of(min_capacity(2)), model, enumerate_grid(model));
  const auto model5 = testutil::make_model({{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}});
  const auto base5 =
      induced_order(mobius_of(min_capacity(2)), model5, enumerate_grid(model5));
  for (const auto* id : {"A3", "A4", "A5", "A6"}) {
    const auto& m = std::string(id) == "A5" ? model5 : model;
    const auto& b = std::string(id) == "A5" ? base5 : base;
    PreferenceStructure scaled = b;
    for (auto& r : scaled.ranks) r *= 4;
    bool found = false;
    const std::size_t na = scaled.alternatives.size();
    for (std::size_t x = 0; x < na && !found; ++x)
      for (std::size_t y = x + 1; y < na && !found; ++y) {
        if (scaled.ranks[x] == scaled.ranks[y]) continue;
        PreferenceStructure cand = scaled;
        std::swap(cand.ranks[x], cand.ranks[y]);
        AxiomContext ctx = make_context(m, cand);
        if (!ctx.marginal) continue;
        const auto rep = run_axiom(ctx, id);
        if (rep.status == AxiomStatus::kFail && !rep.witnesses.empty())
          found = true;
      }
    for (std::size_t x = 0; x < na && !found; ++x)
      for (int delta : {-5, -3, -2, -1, 1, 2, 3, 5}) {
        PreferenceStructure cand = scaled;
        cand.ranks[x] += delta;
        AxiomContext ctx = make_context(m, cand);
        if (!ctx.marginal) continue;
        const auto rep = run_axiom(ctx, id);
        if (rep.status == AxiomStatus::kFail && !rep.witnesses.empty()) {
          found = true;
          break;
        }
      }
    if (!found) c.fail(std::string(id) + " control not constructed");
  }
  CHECK(c.pass);
}
