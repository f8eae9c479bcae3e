#include "chq/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chq {

std::string subset_label(SubsetIndex a) {
  std::string out;
  for (int i : members_of(a)) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  }
  return out;
}

std::string ConstraintViolation::describe() const {
  if (constraint == "empty")
    return "v(empty)=0 violated: v() = " + std::to_string(lhs);
  if (constraint == "normalized")
    return "v(N)=1 violated: v(N) = " + std::to_string(lhs);
  if (constraint == "monotone")
    return "monotonicity violated: v({" + subset_label(b) + "}) = " +
           std::to_string(rhs) + " > v({" + subset_label(a) + "}) = " +
           std::to_string(lhs);
  return constraint;
}

static void check_size(int n, std::size_t size, const char* what) {
  if (n < 1 || n > kMaxCriteria)
    throw std::invalid_argument(std::string(what) + ": n must be in [1, " +
                                std::to_string(kMaxCriteria) + "]");
  if (size != (std::size_t{1} << n))
    throw std::invalid_argument(std::string(what) +
                                ": array length must be 2^n");
}

Capacity make_capacity(int n, std::vector<double> values) {
  check_size(n, values.size(), "capacity");
  return Capacity{n, std::move(values)};
}

MobiusRep make_mobius(int n, std::vector<double> coeffs) {
  check_size(n, coeffs.size(), "mobius");
  return MobiusRep{n, std::move(coeffs)};
}

std::vector<ConstraintViolation> validate_capacity(const Capacity& c,
                                                   double tol) {
  check_size(c.n, c.values.size(), "capacity");
  std::vector<ConstraintViolation> out;
  if (std::abs(c.values[0]) > tol)
    out.push_back({"empty", 0, 0, c.values[0], 0.0});
  if (std::abs(c.values[c.full()] - 1.0) > tol)
    out.push_back({"normalized", c.full(), 0, c.values[c.full()], 1.0});
  // Single-bit supersets cover all 2-chains by transitivity.
  const SubsetIndex size = SubsetIndex{1} << c.n;
  for (SubsetIndex a = 0; a < size; ++a) {
    for (int i = 0; i < c.n; ++i) {
      if (a >> i & 1) continue;
      const SubsetIndex b = a | (SubsetIndex{1} << i);
      if (c.values[a] > c.values[b] + tol)
        out.push_back({"monotone", b, a, c.values[b], c.values[a]});
    }
  }
  return out;
}

MobiusRep mobius_of(const Capacity& c) {
  check_size(c.n, c.values.size(), "capacity");
  std::vector<double> m = c.values;
  for (int i = 0; i < c.n; ++i)
    for (SubsetIndex a = 0; a < m.size(); ++a)
      if (a >> i & 1) m[a] -= m[a ^ (SubsetIndex{1} << i)];
  return MobiusRep{c.n, std::move(m)};
}

Capacity capacity_of(const MobiusRep& m) {
  check_size(m.n, m.coeffs.size(), "mobius");
  std::vector<double> v = m.coeffs;
  for (int i = 0; i < m.n; ++i)
    for (SubsetIndex a = 0; a < v.size(); ++a)
      if (a >> i & 1) v[a] += v[a ^ (SubsetIndex{1} << i)];
  return Capacity{m.n, std::move(v)};
}

double choquet_sorted(const Capacity& c, std::span<const double> f,
                      std::vector<int>* perm_out) {
  if (static_cast<int>(f.size()) != c.n)
    throw std::invalid_argument("choquet_sorted: score vector length != n");
  std::vector<int> perm(c.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return f[a] < f[b]; });
  if (perm_out) *perm_out = perm;

  double shift = 0.0;
  const double lo = f[perm.front()];
  if (lo < 0.0) shift = -lo;

  double total = 0.0;
  double prev = 0.0;
  SubsetIndex above = c.full();
  for (int k = 0; k < c.n; ++k) {
    const double fk = f[perm[k]] + shift;
    total += (fk - prev) * c.values[above];
    prev = fk;
    above &= ~(SubsetIndex{1} << perm[k]);
  }
  return total - shift;
}

double choquet_mobius(const MobiusRep& m, std::span<const double> f) {
  if (static_cast<int>(f.size()) != m.n)
    throw std::invalid_argument("choquet_mobius: score vector length != n");
  double total = 0.0;
  const SubsetIndex size = SubsetIndex{1} << m.n;
  for (SubsetIndex a = 1; a < size; ++a) {
    if (m.coeffs[a] == 0.0) continue;
    double lo = f[std::countr_zero(a)];
    for (SubsetIndex rest = a & (a - 1); rest != 0; rest &= rest - 1)
      lo = std::min(lo, f[std::countr_zero(rest)]);
    total += m.coeffs[a] * lo;
  }
  return total;
}

const char* to_string(SpecialKind k) {
  switch (k) {
    case SpecialKind::kMin: return "MIN";
    case SpecialKind::kMax: return "MAX";
    case SpecialKind::kAdditive: return "ADDITIVE";
    case SpecialKind::kGeneral: return "GENERAL";
  }
  return "GENERAL";
}

SpecialKind classify_special(const MobiusRep& m, double tol) {
  const SubsetIndex size = SubsetIndex{1} << m.n;
  const SubsetIndex full = full_set(m.n);
  bool is_min = std::abs(m.coeffs[full] - 1.0) <= tol;
  for (SubsetIndex a = 0; a < size && is_min; ++a)
    if (a != full && std::abs(m.coeffs[a]) > tol) is_min = false;
  if (is_min) return SpecialKind::kMin;

  bool additive = true;
  for (SubsetIndex a = 0; a < size && additive; ++a)
    if (popcount(a) >= 2 && std::abs(m.coeffs[a]) > tol) additive = false;
  if (additive) return SpecialKind::kAdditive;

  const Capacity c = capacity_of(m);
  bool is_max = true;
  for (SubsetIndex a = 1; a < size && is_max; ++a)
    if (std::abs(c.values[a] - 1.0) > tol) is_max = false;
  if (is_max) return SpecialKind::kMax;

  return SpecialKind::kGeneral;
}

bool is_comonotonic(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size())
    throw std::invalid_argument("is_comonotonic: length mismatch");
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[i] > f[j] && g[i] < g[j]) return false;
  return true;
}

std::vector<std::vector<int>> cliques_from_mobius(const MobiusRep& m,
                                                  double tol) {
  std::vector<int> parent(m.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const SubsetIndex size = SubsetIndex{1} << m.n;
  for (SubsetIndex a = 1; a < size; ++a) {
    if (std::abs(m.coeffs[a]) <= tol || popcount(a) < 2) continue;
    const int head = std::countr_zero(a);
    for (SubsetIndex rest = a & (a - 1); rest != 0; rest &= rest - 1)
      parent[find(std::countr_zero(rest))] = find(head);
  }
  std::vector<std::vector<int>> cells(m.n);
  for (int i = 0; i < m.n; ++i) cells[find(i)].push_back(i);
  std::erase_if(cells, [](const auto& v) { return v.empty(); });
  return cells;
}

std::vector<double> weights_for_ordering(const Capacity& c,
                                         std::span<const int> rank) {
  if (static_cast<int>(rank.size()) != c.n)
    throw std::invalid_argument("weights_for_ordering: rank length != n");
  std::vector<double> p(c.n);
  for (int i = 0; i < c.n; ++i) {
    SubsetIndex geq = 0, gt = 0;
    for (int j = 0; j < c.n; ++j) {
      if (rank[j] >= rank[i]) geq |= SubsetIndex{1} << j;
      if (rank[j] > rank[i]) gt |= SubsetIndex{1} << j;
    }
    p[i] = c.values[geq] - c.values[gt];
  }
  return p;
}

}  // namespace chq
