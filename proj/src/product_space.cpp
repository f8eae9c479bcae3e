#include "chq/product_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace chq {

std::vector<int> ProductModel::dims() const {
  std::vector<int> d;
  d.reserve(scales.size());
  for (const auto& s : scales) d.push_back(s.size());
  return d;
}

bool ProductModel::has_values() const {
  return !scales.empty() &&
         std::all_of(scales.begin(), scales.end(),
                     [](const CriterionScale& s) { return s.values.has_value(); });
}

std::uint64_t ProductModel::grid_size() const {
  std::uint64_t total = 1;
  for (const auto& s : scales) total *= static_cast<std::uint64_t>(s.size());
  return total;
}

std::vector<ModelIssue> validate_model(const ProductModel& model) {
  std::vector<ModelIssue> out;
  if (model.n() < 2)
    out.push_back({"fewer than 2 criteria; axiom analysis needs n >= 2", -1, false});
  for (int i = 0; i < model.n(); ++i) {
    const auto& s = model.scales[i];
    if (s.levels.empty()) {
      out.push_back({"scale has no levels", i, true});
      continue;
    }
    if (s.size() < 2)
      out.push_back({"scale has a single level (essentiality precondition)", i, false});
    std::set<std::string> seen(s.levels.begin(), s.levels.end());
    if (seen.size() != s.levels.size())
      out.push_back({"duplicate level labels", i, true});
    if (s.values) {
      if (s.values->size() != s.levels.size()) {
        out.push_back({"values length != levels length", i, true});
        continue;
      }
      for (std::size_t k = 1; k < s.values->size(); ++k)
        if (!((*s.values)[k] > (*s.values)[k - 1])) {
          out.push_back({"values not strictly increasing (collapsed equivalent "
                         "points)", i, true});
          break;
        }
    }
  }
  return out;
}

std::vector<Alternative> enumerate_grid(const ProductModel& model,
                                        std::uint64_t cap) {
  const std::uint64_t total = model.grid_size();
  if (total > cap)
    throw std::invalid_argument("enumerate_grid: grid size " +
                                std::to_string(total) + " exceeds cap " +
                                std::to_string(cap));
  std::vector<Alternative> out;
  out.reserve(total);
  std::vector<int> cur(model.n(), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    out.push_back({cur});
    for (int i = model.n() - 1; i >= 0; --i) {
      if (++cur[i] < model.scales[i].size()) break;
      cur[i] = 0;
    }
  }
  return out;
}

static std::vector<double> scores_at(const ProductModel& model,
                                     const Alternative& alt) {
  std::vector<double> f(model.n());
  for (int i = 0; i < model.n(); ++i) {
    const int lv = alt.coords[i];
    if (lv < 0 || lv >= model.scales[i].size())
      throw std::out_of_range("alternative level index out of range");
    f[i] = model.value(i, lv);
  }
  return f;
}

PreferenceStructure induced_order(const MobiusRep& m, const ProductModel& model,
                                  const std::vector<Alternative>& alts,
                                  double tol) {
  if (!model.has_values())
    throw std::invalid_argument("induced_order: model has no value functions");
  if (m.n != model.n())
    throw std::invalid_argument("induced_order: mobius n != model n");
  std::vector<double> val(alts.size());
  for (std::size_t k = 0; k < alts.size(); ++k)
    val[k] = choquet_mobius(m, scores_at(model, alts[k]));

  std::vector<int> idx(alts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return val[a] > val[b]; });

  PreferenceStructure prefs;
  prefs.kind = PrefKind::kRanked;
  prefs.alternatives = alts;
  prefs.ranks.assign(alts.size(), 0);
  int rank = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || val[idx[k - 1]] - val[idx[k]] > tol) ++rank;
    prefs.ranks[idx[k]] = rank;
  }
  return prefs;
}

bool MarginalOrder::is_max(int crit, int level) const {
  for (int h : height[crit])
    if (h > height[crit][level]) return false;
  return true;
}

bool MarginalOrder::is_min(int crit, int level) const {
  for (int h : height[crit])
    if (h < height[crit][level]) return false;
  return true;
}

std::uint64_t GridView::flat(const std::vector<int>& c) const {
  std::uint64_t f = 0;
  for (int i = 0; i < n(); ++i) f += strides[i] * static_cast<std::uint64_t>(c[i]);
  return f;
}

std::vector<int> GridView::coords(std::uint64_t flat) const {
  std::vector<int> c(n());
  for (int i = 0; i < n(); ++i) {
    c[i] = static_cast<int>(flat / strides[i]);
    flat %= strides[i];
  }
  return c;
}

static GridView make_view(const ProductModel& model) {
  GridView v;
  v.dims = model.dims();
  v.strides.assign(v.dims.size(), 1);
  for (int i = static_cast<int>(v.dims.size()) - 2; i >= 0; --i)
    v.strides[i] = v.strides[i + 1] * static_cast<std::uint64_t>(v.dims[i + 1]);
  v.rank.assign(model.grid_size(), 0);
  return v;
}

std::optional<GridView> grid_ranking(const ProductModel& model,
                                     const PreferenceStructure& prefs) {
  const std::uint64_t total = model.grid_size();
  if (total > kGridCap) return std::nullopt;
  GridView view = make_view(model);

  if (prefs.kind == PrefKind::kRanked) {
    if (prefs.alternatives.size() != total) return std::nullopt;
    std::vector<char> seen(total, 0);
    for (std::size_t k = 0; k < prefs.alternatives.size(); ++k) {
      const std::uint64_t f = view.flat(prefs.alternatives[k].coords);
      if (seen[f]) return std::nullopt;
      seen[f] = 1;
      view.rank[f] = prefs.ranks[k];
    }
    return view;
  }

  // PAIRS: transitive closure over the listed alternatives; must cover the
  // grid, be complete, and contain no strict cycle.
  const std::size_t na = prefs.alternatives.size();
  if (na != total) return std::nullopt;
  std::vector<std::vector<std::uint8_t>> geq(na, std::vector<std::uint8_t>(na, 0));
  for (std::size_t i = 0; i < na; ++i) geq[i][i] = 1;
  for (const auto& p : prefs.pairs) {
    geq[p.better][p.worse] = 1;
    if (!p.strict) geq[p.worse][p.better] = 1;
  }
  for (std::size_t k = 0; k < na; ++k)
    for (std::size_t i = 0; i < na; ++i) {
      if (!geq[i][k]) continue;
      for (std::size_t j = 0; j < na; ++j)
        if (geq[k][j]) geq[i][j] = 1;
    }
  for (const auto& p : prefs.pairs)
    if (p.strict && geq[p.worse][p.better]) return std::nullopt;  // strict cycle
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      if (!geq[i][j] && !geq[j][i]) return std::nullopt;  // incomplete

  // Dense ranks: count of strictly-better equivalence classes.
  std::vector<int> order(na);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (geq[a][b] != geq[b][a]) return geq[a][b] > geq[b][a];
    return a < b;
  });
  int rank = 0;
  for (std::size_t k = 0; k < na; ++k) {
    if (k == 0 || !(geq[order[k]][order[k - 1]] && geq[order[k - 1]][order[k]]))
      ++rank;
    view.rank[view.flat(prefs.alternatives[order[k]].coords)] = rank;
  }
  return view;
}

PrefComparisons pref_comparisons(const PreferenceStructure& prefs) {
  PrefComparisons pc;
  pc.na = prefs.alternatives.size();
  pc.table.assign(pc.na * pc.na, 2);
  for (std::size_t a = 0; a < pc.na; ++a) pc.table[a * pc.na + a] = 0;
  if (prefs.kind == PrefKind::kRanked) {
    for (std::size_t a = 0; a < pc.na; ++a)
      for (std::size_t b = 0; b < pc.na; ++b) {
        const int ra = prefs.ranks[a], rb = prefs.ranks[b];
        pc.table[a * pc.na + b] = static_cast<std::int8_t>((rb > ra) - (rb < ra));
      }
    return pc;
  }
  std::vector<std::uint8_t> geq(pc.na * pc.na, 0);
  for (std::size_t a = 0; a < pc.na; ++a) geq[a * pc.na + a] = 1;
  for (const auto& p : prefs.pairs) {
    geq[static_cast<std::size_t>(p.better) * pc.na + p.worse] = 1;
    if (!p.strict) geq[static_cast<std::size_t>(p.worse) * pc.na + p.better] = 1;
  }
  for (std::size_t k = 0; k < pc.na; ++k)
    for (std::size_t i = 0; i < pc.na; ++i) {
      if (!geq[i * pc.na + k]) continue;
      for (std::size_t j = 0; j < pc.na; ++j)
        if (geq[k * pc.na + j]) geq[i * pc.na + j] = 1;
    }
  for (std::size_t a = 0; a < pc.na; ++a)
    for (std::size_t b = 0; b < pc.na; ++b) {
      const bool ab = geq[a * pc.na + b], ba = geq[b * pc.na + a];
      if (ab || ba)
        pc.table[a * pc.na + b] =
            static_cast<std::int8_t>(ab && ba ? 0 : (ab ? 1 : -1));
    }
  return pc;
}

// Marginal derivation over partial data: per-fiber comparisons from the
// listed alternatives, with explicit undetermined level pairs.
static MarginalResult marginal_order_partial(const ProductModel& model,
                                             const PreferenceStructure& prefs) {
  MarginalResult res;
  const int n = model.n();
  const auto dims = model.dims();
  const auto pc = pref_comparisons(prefs);
  MarginalOrder order;
  order.height.resize(n);
  bool complete = true;
  for (int i = 0; i < n; ++i) {
    // group listed alternatives by their rest coordinates
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> fibers;
    for (std::size_t k = 0; k < prefs.alternatives.size(); ++k) {
      auto rest = prefs.alternatives[k].coords;
      const int lv = rest[i];
      rest.erase(rest.begin() + i);
      fibers[rest].push_back({lv, static_cast<int>(k)});
    }
    const int li = dims[i];
    std::vector<std::vector<int>> cmp(li, std::vector<int>(li, 0));
    for (int a = 0; a < li; ++a)
      for (int b = a + 1; b < li; ++b) {
        bool up = false, down = false, seen = false;
        std::vector<int> wit_up, wit_down;
        for (const auto& [rest, members] : fibers) {
          int ka = -1, kb = -1;
          for (const auto& [lv, k] : members) {
            if (lv == a) ka = k;
            if (lv == b) kb = k;
          }
          if (ka < 0 || kb < 0) continue;
          const int s = pc.cmp(ka, kb);
          if (s == 2) continue;
          seen = true;
          auto with_level = [&](int lv) {
            auto c = rest;
            c.insert(c.begin() + i, lv);
            return c;
          };
          if (s > 0 && !up) { up = true; wit_up = with_level(a); }
          if (s < 0 && !down) { down = true; wit_down = with_level(a); }
        }
        if (up && down) {
          res.issues.push_back({"a2-violation", i, a, b, wit_up, wit_down});
          return res;
        }
        if (!seen) {
          res.issues.push_back({"undetermined", i, a, b, {}, {}});
          complete = false;
        } else if (!up && !down) {
          res.issues.push_back({"collapsed-points", i, a, b, {}, {}});
        } else {
          cmp[a][b] = up ? 1 : -1;
          cmp[b][a] = -cmp[a][b];
        }
      }
    order.height[i].assign(li, 0);
    for (int a = 0; a < li; ++a)
      for (int b = 0; b < li; ++b)
        if (cmp[a][b] > 0) ++order.height[i][a];
  }
  if (complete) res.order = std::move(order);
  return res;
}

MarginalResult marginal_order(const ProductModel& model,
                              const PreferenceStructure& prefs) {
  MarginalResult res;
  auto view = grid_ranking(model, prefs);
  if (!view) return marginal_order_partial(model, prefs);
  const int n = model.n();
  const auto dims = model.dims();
  MarginalOrder order;
  order.height.resize(n);

  for (int i = 0; i < n; ++i) {
    const int li = dims[i];
    // cmp_level[a][b]: +1 if a strictly above b on every fiber seen, etc.
    std::vector<std::vector<int>> cmp(li, std::vector<int>(li, 0));
    bool ok = true;
    for (int a = 0; a < li && ok; ++a) {
      for (int b = a + 1; b < li && ok; ++b) {
        bool up = false, down = false;
        std::vector<int> wit_up, wit_down;
        // scan all fibers x_{-i}
        for (std::uint64_t f = 0; f < view->size(); ++f) {
          const auto c = view->coords(f);
          if (c[i] != a) continue;
          auto cb = c;
          cb[i] = b;
          const int s = view->cmp(f, view->flat(cb));
          if (s > 0 && !up) { up = true; wit_up = c; }
          if (s < 0 && !down) { down = true; wit_down = c; }
          if (up && down) break;
        }
        if (up && down) {
          MarginalIssue iss{"a2-violation", i, a, b, wit_up, wit_down};
          res.issues.push_back(std::move(iss));
          ok = false;
        } else if (!up && !down) {
          res.issues.push_back({"collapsed-points", i, a, b, {}, {}});
          cmp[a][b] = 0;
          cmp[b][a] = 0;
        } else {
          cmp[a][b] = up ? 1 : -1;
          cmp[b][a] = -cmp[a][b];
        }
      }
    }
    if (!ok) return res;
    // heights: number of levels strictly below
    order.height[i].assign(li, 0);
    for (int a = 0; a < li; ++a)
      for (int b = 0; b < li; ++b)
        if (cmp[a][b] > 0) ++order.height[i][a];
  }
  res.order = std::move(order);
  return res;
}

}  // namespace chq
