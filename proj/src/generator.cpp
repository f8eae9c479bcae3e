#include "chq/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chq {

std::uint64_t SplitMix::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix::uniform(double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
}

Capacity random_capacity(int n, SplitMix& rng) {
  const SubsetIndex size = SubsetIndex{1} << n;
  std::vector<double> v(size);
  for (auto& x : v) x = rng.uniform(0.0, 1.0);
  v[0] = 0.0;
  // monotone repair in popcount order, then renormalize
  std::vector<SubsetIndex> order(size);
  std::iota(order.begin(), order.end(), SubsetIndex{0});
  std::sort(order.begin(), order.end(), [](SubsetIndex a, SubsetIndex b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  for (SubsetIndex a : order)
    for (int i = 0; i < n; ++i)
      if (a >> i & 1)
        v[a] = std::max(v[a], v[a ^ (SubsetIndex{1} << i)]);
  const double top = v[size - 1];
  if (top <= 0.0) return min_capacity(n);
  for (auto& x : v) x /= top;
  v[0] = 0.0;
  v[size - 1] = 1.0;
  return make_capacity(n, std::move(v));
}

std::vector<double> random_scores(int n, SplitMix& rng, double hi) {
  std::vector<double> f(n);
  for (auto& x : f) x = rng.uniform(0.0, hi);
  return f;
}

Capacity min_capacity(int n) {
  std::vector<double> v(SubsetIndex{1} << n, 0.0);
  v.back() = 1.0;
  return make_capacity(n, std::move(v));
}

Capacity max_capacity(int n) {
  std::vector<double> v(SubsetIndex{1} << n, 1.0);
  v[0] = 0.0;
  return make_capacity(n, std::move(v));
}

Capacity additive_capacity(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<double> v(SubsetIndex{1} << n, 0.0);
  for (SubsetIndex a = 1; a < v.size(); ++a)
    for (int i : members_of(a)) v[a] += weights[i];
  return make_capacity(n, std::move(v));
}

GeneratedModel random_block_model(int n, int min_levels, int max_levels,
                                  std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_block_model: n >= 2");
  SplitMix rng(seed * 0x9e3779b97f4a7c15ULL + 0xc4a11eULL);

  // partition into cliques of size <= 2
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.range(0, i)]);
  std::vector<std::vector<int>> cliques;
  for (int i = 0; i < n;) {
    if (n - i >= 2 && rng.range(0, 2) != 0) {  // pair with prob 2/3
      std::vector<int> c{perm[i], perm[i + 1]};
      std::sort(c.begin(), c.end());
      cliques.push_back(std::move(c));
      i += 2;
    } else {
      cliques.push_back({perm[i]});
      i += 1;
    }
  }
  std::sort(cliques.begin(), cliques.end());

  // positive weights; pair blocks are min- or max-form
  std::vector<double> coeffs(SubsetIndex{1} << n, 0.0);
  double total = 0.0;
  std::vector<double> w(cliques.size());
  for (auto& x : w) {
    x = static_cast<double>(rng.range(1, 5));
    total += x;
  }
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    const double wk = w[k] / total;
    if (cliques[k].size() == 1) {
      coeffs[SubsetIndex{1} << cliques[k][0]] += wk;
    } else {
      const SubsetIndex i = SubsetIndex{1} << cliques[k][0];
      const SubsetIndex j = SubsetIndex{1} << cliques[k][1];
      if (rng.range(0, 1) == 0) {
        coeffs[i | j] += wk;  // min block
      } else {                // max block
        coeffs[i] += wk;
        coeffs[j] += wk;
        coeffs[i | j] -= wk;
      }
    }
  }

  // shared-endpoint integer ladder values
  const int top = std::max(max_levels, 5);
  ProductModel model;
  model.scales.resize(n);
  for (int i = 0; i < n; ++i) {
    const int d = rng.range(min_levels, max_levels);
    std::vector<int> interior(top - 1);
    std::iota(interior.begin(), interior.end(), 1);
    for (int k = static_cast<int>(interior.size()) - 1; k > 0; --k)
      std::swap(interior[k], interior[rng.range(0, k)]);
    interior.resize(d - 2);
    std::sort(interior.begin(), interior.end());
    std::vector<double> values{0.0};
    for (int r : interior) values.push_back(static_cast<double>(r));
    values.push_back(static_cast<double>(top));
    auto& scale = model.scales[i];
    scale.name = "c" + std::to_string(i + 1);
    for (int lv = 0; lv < d; ++lv) scale.levels.push_back("L" + std::to_string(lv));
    scale.values = std::move(values);
  }

  GeneratedModel out;
  out.model = std::move(model);
  out.mobius = make_mobius(n, std::move(coeffs));
  out.cliques = std::move(cliques);
  return out;
}

}  // namespace chq
