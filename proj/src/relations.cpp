#include "chq/relations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chq {

bool RelationTable::complete_at(std::uint64_t z) const {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!R(z, i, j) && !R(z, j, i)) return false;
  return true;
}

std::uint64_t RelationTable::pattern_at(std::uint64_t z) const {
  std::uint64_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && R(z, i, j)) p |= std::uint64_t{1} << (i * n + j);
  return p;
}

std::vector<int> upper_levels(const MarginalOrder& mo, int crit, int level,
                              int dim) {
  std::vector<int> out;
  for (int x = 0; x < dim; ++x)
    if (mo.height[crit][x] >= mo.height[crit][level]) out.push_back(x);
  return out;
}

std::vector<int> lower_levels(const MarginalOrder& mo, int crit, int level,
                              int dim) {
  std::vector<int> out;
  for (int x = 0; x < dim; ++x)
    if (mo.height[crit][x] <= mo.height[crit][level]) out.push_back(x);
  return out;
}

namespace {

// Signs of all composite comparisons D[(a,b),(p,q)] = cmp(a p z, b q z),
// packed as per-row bitsets over column pairs (le / ge / lt of zero).
struct ConeSigns {
  int nu = 0, nv = 0;  // |us|, |vs|
  int cols = 0;        // nv * nv
  int words = 0;
  std::vector<std::uint64_t> le, ge, lt;  // [row * words + w]
};

ConeSigns cone_signs(const GridView& view, const std::vector<int>& z, int i,
                     int j, const std::vector<int>& us,
                     const std::vector<int>& vs) {
  ConeSigns s;
  s.nu = static_cast<int>(us.size());
  s.nv = static_cast<int>(vs.size());
  s.cols = s.nv * s.nv;
  s.words = (s.cols + 63) / 64;
  const int rows = s.nu * s.nu;
  s.le.assign(static_cast<std::size_t>(rows) * s.words, 0);
  s.ge.assign(static_cast<std::size_t>(rows) * s.words, 0);
  s.lt.assign(static_cast<std::size_t>(rows) * s.words, 0);

  std::vector<int> rank(static_cast<std::size_t>(s.nu) * s.nv);
  std::vector<int> w = z;
  for (int a = 0; a < s.nu; ++a) {
    w[i] = us[a];
    for (int p = 0; p < s.nv; ++p) {
      w[j] = vs[p];
      rank[a * s.nv + p] = view.rank[view.flat(w)];
    }
  }
  for (int a = 0; a < s.nu; ++a)
    for (int b = 0; b < s.nu; ++b) {
      const int row = a * s.nu + b;
      for (int p = 0; p < s.nv; ++p)
        for (int q = 0; q < s.nv; ++q) {
          const int col = p * s.nv + q;
          // d > 0 iff (a,p) is preferred to (b,q)
          const int d = rank[b * s.nv + q] - rank[a * s.nv + p];
          const std::uint64_t bit = std::uint64_t{1} << (col % 64);
          const std::size_t at = static_cast<std::size_t>(row) * s.words + col / 64;
          if (d <= 0) s.le[at] |= bit;
          if (d >= 0) s.ge[at] |= bit;
          if (d < 0) s.lt[at] |= bit;
        }
    }
  return s;
}

// Violation pattern: rows P1, P2 and columns Q1, Q2 with
// D[P1][Q1] <= 0, D[P1][Q2] >= 0, D[P2][Q1] >= 0, D[P2][Q2] < 0.
bool signs_violate(const ConeSigns& s, int* p1_out = nullptr,
                   int* p2_out = nullptr, int* q1_out = nullptr,
                   int* q2_out = nullptr) {
  const int rows = s.nu * s.nu;
  for (int p1 = 0; p1 < rows; ++p1)
    for (int p2 = 0; p2 < rows; ++p2) {
      bool has_q1 = false, has_q2 = false;
      int q1 = -1, q2 = -1;
      for (int w = 0; w < s.words; ++w) {
        const std::uint64_t m1 =
            s.le[static_cast<std::size_t>(p1) * s.words + w] &
            s.ge[static_cast<std::size_t>(p2) * s.words + w];
        if (m1 && !has_q1) {
          has_q1 = true;
          q1 = w * 64 + std::countr_zero(m1);
        }
        const std::uint64_t m2 =
            s.ge[static_cast<std::size_t>(p1) * s.words + w] &
            s.lt[static_cast<std::size_t>(p2) * s.words + w];
        if (m2 && !has_q2) {
          has_q2 = true;
          q2 = w * 64 + std::countr_zero(m2);
        }
      }
      if (has_q1 && has_q2) {
        if (p1_out) *p1_out = p1;
        if (p2_out) *p2_out = p2;
        if (q1_out) *q1_out = q1;
        if (q2_out) *q2_out = q2;
        return true;
      }
    }
  return false;
}

}  // namespace

bool three_c_holds(const GridView& view, const std::vector<int>& z, int i,
                   int j, const std::vector<int>& us,
                   const std::vector<int>& vs) {
  if (us.size() < 2 || vs.size() < 2) return true;  // degenerate rectangle
  const ConeSigns s = cone_signs(view, z, i, j, us, vs);
  return !signs_violate(s);
}

std::optional<std::array<int, 8>> three_c_violation(
    const GridView& view, const std::vector<int>& z, int i, int j,
    const std::vector<int>& us, const std::vector<int>& vs) {
  if (us.size() < 2 || vs.size() < 2) return std::nullopt;
  const ConeSigns s = cone_signs(view, z, i, j, us, vs);
  int p1, p2, q1, q2;
  if (!signs_violate(s, &p1, &p2, &q1, &q2)) return std::nullopt;
  const int nu = s.nu, nv = s.nv;
  // P1 = (a,b), P2 = (c,d), Q1 = (p,q), Q2 = (r,s)
  return std::array<int, 8>{us[p1 / nu], us[p1 % nu], us[p2 / nu], us[p2 % nu],
                            vs[q1 / nv], vs[q1 % nv], vs[q2 / nv], vs[q2 % nv]};
}

std::uint64_t relation_table_cost(const ProductModel& model) {
  const auto dims = model.dims();
  std::uint64_t grid = 1;
  for (int d : dims) grid *= static_cast<std::uint64_t>(d);
  std::uint64_t per_point = 0;
  const int n = model.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::uint64_t u = dims[i], v = dims[j];
      per_point += u * u * v * v;  // sign matrix; the pattern scan is similar
    }
  return grid * per_point * 2;
}

namespace {

struct TableBuilder {
  const ProductModel& model;
  const GridView& view;
  const MarginalOrder& mo;
  std::vector<int> dims;
  int n;
  RelationTable t;

  TableBuilder(const ProductModel& m, const GridView& v, const MarginalOrder& o)
      : model(m), view(v), mo(o), dims(m.dims()), n(m.n()) {
    t.n = n;
    t.dims = dims;
    t.grid = view.size();
    t.raw_bits.assign(t.grid * n * n, 0);
    t.mem_bits.assign(t.grid * n * n, 0);
  }

  bool raw_at(const std::vector<int>& z, int i, int j) const {
    return t.raw_bits[view.flat(z) * n * n + i * n + j] != 0;
  }

  void fill_raw() {
    std::vector<int> z(n, 0);
    for (std::uint64_t f = 0; f < t.grid; ++f) {
      z = view.coords(f);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto us = upper_levels(mo, i, z[i], dims[i]);
          const auto vs = lower_levels(mo, j, z[j], dims[j]);
          if (three_c_holds(view, z, i, j, us, vs))
            t.raw_bits[f * n * n + i * n + j] = 1;
        }
    }
  }

  // Stability clause for z_i maximal: no x_j above y_j (both below-or-equal
  // z_j, x_j informative) with [j R i at x_j z_-j] and not [j R i at y_j z_-j].
  bool stable_max_i(const std::vector<int>& z, int i, int j) const {
    std::vector<int> w = z;
    for (int xj : lower_levels(mo, j, z[j], dims[j])) {
      if (mo.is_max(j, xj)) continue;  // degenerate inner cone, no information
      w[j] = xj;
      if (!raw_at(w, j, i)) continue;
      for (int yj : lower_levels(mo, j, xj, dims[j])) {
        w[j] = yj;
        if (!raw_at(w, j, i)) return false;
      }
      w[j] = z[j];
    }
    return true;
  }

  // Stability clause for z_j minimal: no y_i above x_i (both above-or-equal
  // z_i, x_i informative) with [j R i at x_i z_-i] and not [j R i at y_i z_-i].
  bool stable_min_j(const std::vector<int>& z, int i, int j) const {
    std::vector<int> w = z;
    for (int xi : upper_levels(mo, i, z[i], dims[i])) {
      if (mo.is_min(i, xi)) continue;
      w[i] = xi;
      if (!raw_at(w, j, i)) continue;
      for (int yi : upper_levels(mo, i, xi, dims[i])) {
        w[i] = yi;
        if (!raw_at(w, j, i)) return false;
      }
      w[i] = z[i];
    }
    return true;
  }

  void fill_membership() {
    std::vector<int> z(n, 0);
    for (std::uint64_t f = 0; f < t.grid; ++f) {
      z = view.coords(f);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const bool zi_max = mo.is_max(i, z[i]);
          const bool zj_min = mo.is_min(j, z[j]);
          bool member = false;
          if (!zi_max && !zj_min) {
            member = raw_at(z, i, j);
          } else {
            if (zi_max && stable_max_i(z, i, j)) member = true;
            if (!member && zj_min && stable_min_j(z, i, j)) member = true;
          }
          if (member) t.mem_bits[f * n * n + i * n + j] = 1;
        }
    }
  }
};

}  // namespace

RelationTable build_relation_table(const ProductModel& model,
                                   const GridView& view,
                                   const MarginalOrder& marginal) {
  TableBuilder b(model, view, marginal);
  b.fill_raw();
  b.fill_membership();
  return std::move(b.t);
}

std::vector<PartitionCell> partition_cells(const RelationTable& table,
                                           const GridView& view) {
  std::map<std::uint64_t, PartitionCell> by_pattern;
  for (std::uint64_t z = 0; z < table.grid; ++z) {
    const std::uint64_t p = table.pattern_at(z);
    by_pattern.try_emplace(p).first->second.pattern = p;
  }
  for (auto& [p, cell] : by_pattern)
    for (std::uint64_t x = 0; x < table.grid; ++x)
      if ((table.pattern_at(x) & p) == p) cell.members.push_back(x);

  std::vector<PartitionCell> cells;
  cells.reserve(by_pattern.size());
  for (auto& [p, cell] : by_pattern) cells.push_back(std::move(cell));
  // Stable ids: larger cells first, then by pattern.
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (a.members.size() != b.members.size())
      return a.members.size() > b.members.size();
    return a.pattern < b.pattern;
  });
  for (std::size_t k = 0; k < cells.size(); ++k)
    cells[k].id = static_cast<int>(k);

  // Essential criteria per cell: a strict preference along some i-fiber
  // inside the member set.
  const int n = table.n;
  for (auto& cell : cells) {
    std::vector<char> in(table.grid, 0);
    for (auto m : cell.members) in[m] = 1;
    for (int i = 0; i < n; ++i) {
      bool essential = false;
      for (std::size_t a = 0; a < cell.members.size() && !essential; ++a) {
        const auto za = view.coords(cell.members[a]);
        auto zb = za;
        for (int lv = 0; lv < table.dims[i] && !essential; ++lv) {
          if (lv == za[i]) continue;
          zb[i] = lv;
          const std::uint64_t fb = view.flat(zb);
          if (in[fb] && view.cmp(cell.members[a], fb) != 0) essential = true;
        }
      }
      if (essential) cell.essential |= std::uint32_t{1} << i;
    }
  }
  return cells;
}

std::vector<std::vector<int>> interaction_cliques_from_prefs(
    const RelationTable& table) {
  const int n = table.n;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool interacting = false;
      for (std::uint64_t z = 0; z < table.grid && !interacting; ++z)
        if (table.S(z, i, j) || table.S(z, j, i)) interacting = true;
      if (interacting) parent[find(j)] = find(i);
    }
  std::vector<std::vector<int>> cells(n);
  for (int i = 0; i < n; ++i) cells[find(i)].push_back(i);
  std::erase_if(cells, [](const auto& v) { return v.empty(); });
  return cells;
}

}  // namespace chq
