#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "chq/product_space.hpp"

namespace chq {

enum class ConeSide { kSE, kNW };

// Cone at z for the ordered pair (i, j). SE: levels of i above-or-equal z_i
// crossed with levels of j below-or-equal z_j (marginal order); NW mirrored.
struct ConeSpec {
  Alternative z;
  int i = 0, j = 0;
  ConeSide side = ConeSide::kSE;
};

// Per point z and ordered pair (i, j):
//   raw(z,i,j)  — ij-triple cancellation on the cone SE_ij^z as-is
//                 (degenerate cones hold vacuously);
//   R(z,i,j)    — membership of z in the set SE_ij per the three-part
//                 definition (extreme levels handled by relation stability
//                 along the one-sided neighborhoods).
// NW_ij = SE_ji both as a set and as a 3C test, so ordered pairs suffice.
struct RelationTable {
  int n = 0;
  std::vector<int> dims;
  std::uint64_t grid = 0;

  std::vector<std::uint8_t> raw_bits, mem_bits;

  bool raw(std::uint64_t z, int i, int j) const {
    return raw_bits[z * n * n + i * n + j] != 0;
  }
  bool R(std::uint64_t z, int i, int j) const {
    return mem_bits[z * n * n + i * n + j] != 0;
  }
  bool S(std::uint64_t z, int i, int j) const { return !R(z, j, i); }
  bool E(std::uint64_t z, int i, int j) const { return R(z, i, j) && R(z, j, i); }
  bool complete_at(std::uint64_t z) const;

  // R-pattern of z as a bitmask over ordered pairs (bit i*n+j).
  std::uint64_t pattern_at(std::uint64_t z) const;
};

// ij-3C on the rectangle {us on i} x {vs on j} with the rest of z fixed.
// When a violation exists, returns witnessing levels (a,b,c,d,p,q,r,s)
// for the quantifier, first in a fixed deterministic scan order.
bool three_c_holds(const GridView& view, const std::vector<int>& z, int i, int j,
                   const std::vector<int>& us, const std::vector<int>& vs);
std::optional<std::array<int, 8>> three_c_violation(const GridView& view,
                                                    const std::vector<int>& z,
                                                    int i, int j,
                                                    const std::vector<int>& us,
                                                    const std::vector<int>& vs);

std::vector<int> upper_levels(const MarginalOrder& mo, int crit, int level,
                              int dim);
std::vector<int> lower_levels(const MarginalOrder& mo, int crit, int level,
                              int dim);

// Estimated relation lookups to build the full table (budget guard).
std::uint64_t relation_table_cost(const ProductModel& model);

RelationTable build_relation_table(const ProductModel& model,
                                   const GridView& view,
                                   const MarginalOrder& marginal);

// One partial order S_a observed somewhere on the grid together with the set
// X^{S_a} = {x : x in SE_kj for every (k,j) with k R_a j}.
struct PartitionCell {
  int id = 0;
  std::uint64_t pattern = 0;          // R_a as ordered-pair bitmask
  std::vector<std::uint64_t> members; // flat grid indices, ascending
  std::uint32_t essential = 0;        // bitmask of criteria essential on the cell
};

std::vector<PartitionCell> partition_cells(const RelationTable& table,
                                           const GridView& view);

// Maximal groups of criteria chained by pairwise interaction
// (i, j interact iff i S^z j or j S^z i for some z).
std::vector<std::vector<int>> interaction_cliques_from_prefs(
    const RelationTable& table);

}  // namespace chq
