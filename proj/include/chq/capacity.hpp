#pragma once

#include <span>
#include <string>
#include <vector>

#include "chq/subset.hpp"

namespace chq {

// Default tolerance for equality and monotonicity checks on reals.
inline constexpr double kTolLin = 1e-9;
inline constexpr double kTolCap = 1e-9;

// Normalized capacity (fuzzy measure): a set function on 2^N with
// v(empty) = 0, v(N) = 1 and v(A) <= v(B) whenever A is a subset of B.
// values is indexed by SubsetIndex, length 2^n.
struct Capacity {
  int n = 0;
  std::vector<double> values;

  double at(SubsetIndex a) const { return values[a]; }
  SubsetIndex full() const { return full_set(n); }
};

// Mobius coefficients m(A); the linear dual of a capacity.
// coeffs[0] (the empty set) is stored and must be 0.
struct MobiusRep {
  int n = 0;
  std::vector<double> coeffs;

  double at(SubsetIndex a) const { return coeffs[a]; }
};

struct ConstraintViolation {
  std::string constraint;  // "empty", "normalized", "monotone", "structure"
  SubsetIndex a = 0;       // offending subset (superset for "monotone")
  SubsetIndex b = 0;       // subset side for "monotone"
  double lhs = 0.0, rhs = 0.0;
  std::string describe() const;
};

Capacity make_capacity(int n, std::vector<double> values);
MobiusRep make_mobius(int n, std::vector<double> coeffs);

// Empty report <=> the three capacity invariants hold within tol.
std::vector<ConstraintViolation> validate_capacity(const Capacity& c,
                                                   double tol = kTolCap);

// m(A) = sum_{B subset A} (-1)^{|A\B|} v(B), computed by the in-place
// O(n 2^n) transform over the subset lattice.
MobiusRep mobius_of(const Capacity& c);

// Inverse (zeta) transform: v(A) = sum_{B subset A} m(B).
Capacity capacity_of(const MobiusRep& m);

// Choquet integral, sorted (Definition) form:
//   sum_i (f_(i) - f_(i-1)) v({j : f_j >= f_(i)}),  f_(0) = 0.
// The discrete form assumes nonnegative scores; negative inputs are handled
// by shifting all scores so the minimum is 0 and shifting the result back,
// which is exact because v(N) = 1 makes the integral translation-equivariant.
// If perm_out is non-null it receives the ascending permutation used
// (ties broken by coordinate index; the value is tie-invariant).
double choquet_sorted(const Capacity& c, std::span<const double> f,
                      std::vector<int>* perm_out = nullptr);

// Choquet integral in Mobius form: sum over nonempty A of m(A) min_{i in A} f_i.
double choquet_mobius(const MobiusRep& m, std::span<const double> f);

enum class SpecialKind { kMin, kMax, kAdditive, kGeneral };
const char* to_string(SpecialKind k);

// MIN      iff m(N) = 1 and all other coefficients vanish;
// ADDITIVE iff m vanishes on every A with |A| >= 2;
// MAX      iff the induced capacity is 1 on every nonempty set;
// checked in that order (for n = 1 all three coincide and MIN is reported).
SpecialKind classify_special(const MobiusRep& m, double tol = kTolLin);

// No strictly reversed coordinate pair between f and g.
bool is_comonotonic(std::span<const double> f, std::span<const double> g);

// Finest partition of N such that every straddling subset has |m| <= tol;
// union-find over the supports of the nonzero coefficients.
// Cells are sorted internally and by smallest member.
std::vector<std::vector<int>> cliques_from_mobius(const MobiusRep& m,
                                                  double tol = kTolLin);

// Choquet weights p for a fixed coordinate weak ordering. rank[i] is the
// height of coordinate i (larger rank = larger value):
//   p_i = v({j : rank_j >= rank_i}) - v({j : rank_j > rank_i}).
std::vector<double> weights_for_ordering(const Capacity& c,
                                         std::span<const int> rank);

}  // namespace chq
