#pragma once

#include <cstdint>
#include <vector>

#include "chq/product_space.hpp"

namespace chq {

// Deterministic seeded RNG (splitmix64) used by every generator.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double uniform(double lo, double hi);
};

// Unrestricted random normalized monotone capacity: uniform raw values with a
// monotone repair pass and renormalization. Mobius coefficients are signed.
Capacity random_capacity(int n, SplitMix& rng);

// Random nonnegative score vector in [0, hi].
std::vector<double> random_scores(int n, SplitMix& rng, double hi = 1.0);

Capacity min_capacity(int n);
Capacity max_capacity(int n);
Capacity additive_capacity(const std::vector<double>& weights);

// A generated preference model whose interaction structure is identifiable
// from its finite induced order: interaction cliques of size <= 2 (min- or
// max-form pair blocks plus additive singletons) with positive block weights,
// and strictly increasing integer ladder values sharing their endpoints
// across criteria. Scales have between min_levels and max_levels levels.
struct GeneratedModel {
  ProductModel model;
  MobiusRep mobius;
  std::vector<std::vector<int>> cliques;
};

GeneratedModel random_block_model(int n, int min_levels, int max_levels,
                                  std::uint64_t seed);

}  // namespace chq
