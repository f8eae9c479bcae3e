#include "chq/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chq {

std::pair<MobiusRep, ProductModel> apply_uniqueness_transform(
    const MobiusRep& m, const ProductModel& model, const CliqueTransform& t,
    double tol) {
  const int n = m.n;
  if (model.n() != n)
    throw std::invalid_argument("transform: model/mobius n mismatch");
  if (t.cliques.size() != t.alpha.size() || t.cliques.size() != t.beta.size())
    throw std::invalid_argument("transform: clique/coefficient count mismatch");
  for (double a : t.alpha)
    if (!(a > 0.0)) throw std::invalid_argument("transform: alpha must be > 0");

  std::vector<int> clique_of(n, -1);
  std::vector<SubsetIndex> masks(t.cliques.size(), 0);
  for (std::size_t k = 0; k < t.cliques.size(); ++k)
    for (int i : t.cliques[k]) {
      if (i < 0 || i >= n || clique_of[i] != -1)
        throw std::invalid_argument("transform: cliques must partition N");
      clique_of[i] = static_cast<int>(k);
      masks[k] |= SubsetIndex{1} << i;
    }
  for (int i = 0; i < n; ++i)
    if (clique_of[i] < 0)
      throw std::invalid_argument("transform: cliques must partition N");

  const SubsetIndex size = SubsetIndex{1} << n;
  auto clique_containing = [&](SubsetIndex b) -> int {
    for (std::size_t k = 0; k < masks.size(); ++k)
      if (subset_of(b, masks[k])) return static_cast<int>(k);
    return -1;
  };
  for (SubsetIndex b = 1; b < size; ++b)
    if (std::abs(m.coeffs[b]) > tol && clique_containing(b) < 0)
      throw std::invalid_argument(
          "transform: subset {" + subset_label(b) +
          "} has m != 0 but straddles two cliques");

  // denominator: sum over cliques of alpha * v(clique)
  const Capacity cap = capacity_of(m);
  double denom = 0.0;
  for (std::size_t k = 0; k < masks.size(); ++k)
    denom += t.alpha[k] * cap.values[masks[k]];
  if (!(denom > 0.0))
    throw std::runtime_error("transform: nonpositive normalization");

  std::vector<double> coeffs(size, 0.0);
  for (SubsetIndex b = 1; b < size; ++b) {
    if (m.coeffs[b] == 0.0) continue;
    const int k = clique_containing(b);
    if (k < 0) continue;  // straddling with |m| <= tol stays 0
    coeffs[b] = t.alpha[k] * m.coeffs[b] / denom;
  }

  ProductModel out = model;
  for (int i = 0; i < n; ++i) {
    if (!out.scales[i].values) continue;
    const int k = clique_of[i];
    for (double& v : *out.scales[i].values) v = (v - t.beta[k]) / t.alpha[k];
  }
  return {make_mobius(n, std::move(coeffs)), std::move(out)};
}

double choquet_via_relations(const MobiusRep& m, const ProductModel& model,
                             const Alternative& x, const RelationTable& table) {
  const int n = m.n;
  GridView helper;  // only for flat addressing
  helper.dims = table.dims;
  helper.strides.assign(n, 1);
  for (int i = n - 2; i >= 0; --i)
    helper.strides[i] =
        helper.strides[i + 1] * static_cast<std::uint64_t>(table.dims[i + 1]);
  const std::uint64_t z = helper.flat(x.coords);
  if (!table.complete_at(z))
    throw std::runtime_error("choquet_via_relations: R incomplete at x");

  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = model.value(i, x.coords[i]);

  const SubsetIndex size = SubsetIndex{1} << n;
  double total = 0.0;
  for (SubsetIndex a = 1; a < size; ++a) {
    if (m.coeffs[a] == 0.0) continue;
    // R^x-minimal coordinate of A; among candidates pick the smallest value
    double phi = 0.0;
    bool found = false;
    for (int i : members_of(a)) {
      bool minimal = true;
      for (int j : members_of(a))
        if (j != i && !table.R(z, j, i)) {
          minimal = false;
          break;
        }
      if (minimal && (!found || f[i] < phi)) {
        phi = f[i];
        found = true;
      }
    }
    if (!found)
      throw std::runtime_error(
          "choquet_via_relations: no R-minimal coordinate in {" +
          subset_label(a) + "}");
    total += m.coeffs[a] * phi;
  }
  return total;
}

bool check_A_NA(const MobiusRep& m, const Capacity& c,
                std::span<const int> rank_a, std::span<const int> rank_b,
                SubsetIndex subset, double tol) {
  const int n = c.n;
  if (m.n != n || static_cast<int>(rank_a.size()) != n ||
      static_cast<int>(rank_b.size()) != n)
    throw std::invalid_argument("check_A_NA: size mismatch");
  {
    const Capacity from_m = capacity_of(m);
    for (SubsetIndex s = 0; s < from_m.values.size(); ++s)
      if (std::abs(from_m.values[s] - c.values[s]) > tol)
        throw std::invalid_argument("check_A_NA: mobius/capacity disagree");
  }
  // precondition: cross-boundary pairs ranked identically in both orderings
  for (int i = 0; i < n; ++i) {
    if (!(subset >> i & 1)) continue;
    for (int j = 0; j < n; ++j) {
      if (subset >> j & 1) continue;
      const bool a_ge = rank_a[i] >= rank_a[j], b_ge = rank_b[i] >= rank_b[j];
      const bool a_le = rank_a[i] <= rank_a[j], b_le = rank_b[i] <= rank_b[j];
      if (a_ge != b_ge || a_le != b_le)
        throw std::invalid_argument(
            "check_A_NA: orderings disagree on a cross pair (not a lemma "
            "instance)");
    }
  }
  const auto pa = weights_for_ordering(c, rank_a);
  const auto pb = weights_for_ordering(c, rank_b);
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < n; ++i)
    if (subset >> i & 1) {
      sa += pa[i];
      sb += pb[i];
    }
  return std::abs(sa - sb) <= tol;
}

bool RoundtripReport::all_pass() const {
  return std::all_of(stages.begin(), stages.end(),
                     [](const StageResult& s) { return s.pass; });
}

const StageResult* RoundtripReport::first_failure() const {
  for (const auto& s : stages)
    if (!s.pass) return &s;
  return nullptr;
}

namespace {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }
};

}  // namespace

RoundtripReport roundtrip_suite(const ProductModel& model, const MobiusRep& m,
                                std::uint64_t seed, CheckOptions options) {
  RoundtripReport rep;
  rep.seed = seed;
  auto stage = [&](const std::string& name, bool pass, std::string detail = "") {
    rep.stages.push_back({name, pass, std::move(detail)});
    return pass;
  };

  // 0: structural validation (collapsed points, capacity invariants)
  {
    const auto issues = validate_model(model);
    std::string detail;
    bool ok = model.has_values();
    if (!ok) detail = "model has no value functions";
    for (const auto& iss : issues)
      if (iss.fatal) {
        ok = false;
        detail = iss.what;
      }
    const auto cap_issues = validate_capacity(capacity_of(m), options.tol);
    if (!cap_issues.empty()) {
      ok = false;
      detail = cap_issues.front().describe();
    }
    if (!stage("validate", ok, detail)) return rep;
  }

  const auto grid = enumerate_grid(model);
  const auto prefs = induced_order(m, model, grid, options.tol);
  stage("induce", true,
        std::to_string(grid.size()) + " alternatives ranked");

  {
    AxiomContext ctx = make_context(model, prefs, options);
    bool ok = true;
    std::string detail;
    for (const auto& id : {"A1", "A2", "A3", "A3-ACYCL", "A4", "A5", "A6",
                           "A7", "A8", "A9", "MONO"}) {
      const auto r = run_axiom(ctx, id);
      if (r.status != AxiomStatus::kPass &&
          r.status != AxiomStatus::kNotApplicable) {
        ok = false;
        detail = std::string(id) + " " + to_string(r.status) +
                 (r.witnesses.empty() ? "" : ": " + r.witnesses.front().what);
        break;
      }
    }
    if (!stage("axioms", ok, detail)) return rep;
  }

  FitResult fit;
  {
    FitProblem fp;
    fp.model = model;
    fp.prefs = prefs;
    fit = fit_capacity(fp);
    if (!stage("fit", fit.status == FitStatus::kFeasible,
               fit.status == FitStatus::kFeasible
                   ? ""
                   : "max violation " + std::to_string(fit.max_violation)))
      return rep;
  }
  {
    const auto vr = verify_representation(fit.mobius, model, prefs, options.tol);
    const auto refit = induced_order(fit.mobius, model, grid, options.tol);
    const bool ok = vr.mismatches.empty() && refit.ranks == prefs.ranks;
    std::string detail;
    if (!vr.mismatches.empty())
      detail = std::to_string(vr.mismatches.size()) + " mismatching comparison(s)";
    else if (refit.ranks != prefs.ranks)
      detail = "rank vector differs";
    if (!stage("verify", ok, detail)) return rep;
  }
  {
    Rng rng(seed ^ 0x7ab1e5ULL);
    CliqueTransform t;
    t.cliques = cliques_from_mobius(m, options.tol);
    for (std::size_t k = 0; k < t.cliques.size(); ++k) {
      t.alpha.push_back(rng.uniform(0.2, 5.0));
      t.beta.push_back(rng.uniform(-2.0, 2.0));
    }
    const auto [m2, model2] = apply_uniqueness_transform(m, model, t, options.tol);
    const auto prefs2 = induced_order(m2, model2, grid, options.tol);
    stage("transform", prefs2.ranks == prefs.ranks,
          prefs2.ranks == prefs.ranks ? "" : "rank vector changed");
  }
  return rep;
}

}  // namespace chq
