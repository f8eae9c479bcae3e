#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chq/capacity.hpp"

namespace chq {

// One criterion: an ordered list of level labels, optionally carrying the
// value function f_i. When values are present they must be strictly
// increasing along the declared level order (no collapsed equivalent points).
struct CriterionScale {
  std::string name;
  std::vector<std::string> levels;
  std::optional<std::vector<double>> values;

  int size() const { return static_cast<int>(levels.size()); }
};

struct ProductModel {
  std::vector<CriterionScale> scales;

  int n() const { return static_cast<int>(scales.size()); }
  std::vector<int> dims() const;
  bool has_values() const;
  double value(int crit, int level) const { return (*scales[crit].values)[level]; }
  std::uint64_t grid_size() const;
};

struct ModelIssue {
  std::string what;
  int criterion = -1;
  bool fatal = false;  // fatal issues make the model unusable
};

// Structural audit: label uniqueness, strictly increasing values (collapsed
// points), n >= 2 and >= 2 levels per scale (advisory, required for axiom
// analysis).
std::vector<ModelIssue> validate_model(const ProductModel& model);

struct Alternative {
  std::vector<int> coords;
  bool operator==(const Alternative&) const = default;
};

enum class PrefKind { kRanked, kPairs };

struct PairStatement {
  int better = 0, worse = 0;  // indices into alternatives
  bool strict = true;
};

// A (partial or complete) weak order over a set of alternatives.
// RANKED: ranks[i] per alternative, 1 = best, equal rank = indifference.
// PAIRS: raw statements; may violate A1, which is what the checker audits.
struct PreferenceStructure {
  PrefKind kind = PrefKind::kRanked;
  std::vector<Alternative> alternatives;
  std::vector<int> ranks;
  std::vector<PairStatement> pairs;
};

inline constexpr std::uint64_t kGridCap = 1'000'000;

// All tuples in lexicographic order (first coordinate most significant).
std::vector<Alternative> enumerate_grid(const ProductModel& model,
                                        std::uint64_t cap = kGridCap);

// Ranks alternatives by descending Choquet value; values within tol share a
// rank (grouped by adjacent gaps on the sorted value list).
PreferenceStructure induced_order(const MobiusRep& m, const ProductModel& model,
                                  const std::vector<Alternative>& alts,
                                  double tol = kTolLin);

// Per-criterion weak order over levels, encoded as heights
// (larger height = more preferred); heights are dense from 0.
struct MarginalOrder {
  std::vector<std::vector<int>> height;

  int cmp(int crit, int a, int b) const {
    const int ha = height[crit][a], hb = height[crit][b];
    return (ha > hb) - (ha < hb);
  }
  bool is_max(int crit, int level) const;
  bool is_min(int crit, int level) const;
};

struct MarginalIssue {
  std::string kind;  // "a2-violation", "collapsed-points", "undetermined"
  int criterion = -1;
  int level_a = -1, level_b = -1;
  std::vector<int> fiber_x, fiber_y;  // witnessing x_{-i}, y_{-i} contexts
};

struct MarginalResult {
  std::optional<MarginalOrder> order;
  std::vector<MarginalIssue> issues;
};

// Full-grid ranking view used by the relation/axiom machinery.
// rank is per flat grid index (lexicographic), smaller = better.
struct GridView {
  std::vector<int> dims;
  std::vector<std::uint64_t> strides;
  std::vector<int> rank;

  int n() const { return static_cast<int>(dims.size()); }
  std::uint64_t size() const { return rank.size(); }
  std::uint64_t flat(const std::vector<int>& coords) const;
  std::vector<int> coords(std::uint64_t flat) const;
  // +1 if a is preferred to b, 0 if indifferent, -1 otherwise.
  int cmp(std::uint64_t a, std::uint64_t b) const {
    return (rank[b] > rank[a]) - (rank[b] < rank[a]);
  }
};

// Builds the full-grid view when prefs determine a complete weak order over
// the whole grid (RANKED over the full grid directly; PAIRS data is closed
// transitively and must be complete and consistent). nullopt otherwise.
std::optional<GridView> grid_ranking(const ProductModel& model,
                                     const PreferenceStructure& prefs);

// Comparison oracle over the listed alternatives, usable on partial data:
// +1 / 0 / -1, or 2 when the data does not determine the pair. PAIRS
// statements are closed transitively; contradictory strict statements leave
// the pair at the raw statement verdicts.
struct PrefComparisons {
  std::size_t na = 0;
  std::vector<std::int8_t> table;  // na * na
  int cmp(int a, int b) const { return table[a * na + b]; }
};
PrefComparisons pref_comparisons(const PreferenceStructure& prefs);

// Derives the marginal orders >=_i from preferences over the full grid.
// Failure cases are reported: A2 violations with the witnessing quadruple,
// collapsed-points ties, undetermined pairs on partial data.
MarginalResult marginal_order(const ProductModel& model,
                              const PreferenceStructure& prefs);

}  // namespace chq
