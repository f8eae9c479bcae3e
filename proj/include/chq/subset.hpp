#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace chq {

// A subset of the criterion set N = {0,...,n-1}, bit i set <=> i in A.
using SubsetIndex = std::uint32_t;

inline constexpr int kMaxCriteria = 20;

inline int popcount(SubsetIndex a) { return std::popcount(a); }

inline bool subset_of(SubsetIndex a, SubsetIndex b) { return (a & ~b) == 0; }

inline SubsetIndex full_set(int n) { return (SubsetIndex{1} << n) - 1; }

inline std::vector<int> members_of(SubsetIndex a) {
  std::vector<int> out;
  for (int i = 0; a != 0; ++i, a >>= 1)
    if (a & 1) out.push_back(i);
  return out;
}

inline SubsetIndex set_from_members(const std::vector<int>& members) {
  SubsetIndex a = 0;
  for (int i : members) a |= SubsetIndex{1} << i;
  return a;
}

// "{1,3}" rendered as "1,3" with 1-based criterion labels; empty set is "".
std::string subset_label(SubsetIndex a);

}  // namespace chq
