#pragma once

// Exact formal-duality verification for subsets S of G and T of the dual group.
//
// Condition checked, per character y, in cleared-denominator form:
//     |T| * |sum_{v in S} <v, y>|^2  ==  |S|^2 * nu_T(y)
// where nu_T(y) counts ordered pairs (w, w') in T x T with w - w' = y.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fdk/cyclotomic.hpp"
#include "fdk/group.hpp"

namespace fdk {

class DifferenceMultiset {
 public:
  DifferenceMultiset(FiniteAbelianGroup group, std::vector<std::int64_t> counts);

  const FiniteAbelianGroup& group() const { return group_; }
  std::int64_t count(Index g) const { return counts_[static_cast<std::size_t>(g)]; }
  std::int64_t count(const GroupElement& g) const { return count(g.index()); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const;

  friend bool operator==(const DifferenceMultiset& a, const DifferenceMultiset& b) {
    return a.group_ == b.group_ && a.counts_ == b.counts_;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::int64_t> counts_;
};

DifferenceMultiset difference_multiset(const SubsetConfig& s);

// |sum_{v in S} <v, y>|^2 as an element of Z[zeta_L], L the group exponent.
CyclotomicInteger character_sum_squared(const SubsetConfig& s, const GroupElement& y);

enum class Verdict { Dual, NotDual, SizeObstruction };
std::string to_string(Verdict v);

struct DualityCertificate {
  Verdict verdict = Verdict::NotDual;
  // NotDual: first failing character in lexicographic order, with
  // lhs = |sum_{v in S} <v,y>|^2 and rhs = |S|^2 nu_T(y) / |T|.
  std::optional<GroupElement> witness;
  std::optional<CyclotomicInteger> lhs;
  std::optional<RationalNumber> rhs;
  // SizeObstruction: the failing product |S| |T| against |G|.
  std::int64_t s_size = 0;
  std::int64_t t_size = 0;
  std::int64_t group_size = 0;

  bool is_dual() const { return verdict == Verdict::Dual; }
};

// jobs <= 0 selects the default worker count; jobs == 1 runs the serial kernel.
DualityCertificate check_formal_dual(const SubsetConfig& s, const SubsetConfig& t, int jobs = 1);

using ComplexFunction = std::function<std::complex<double>(const GroupElement&)>;

// Floating-point check of
//   |S|^{-3/2} sum_{v,v'} f(v - v') == |T|^{-3/2} sum_{w,w'} fhat(w - w')
// with fhat(y) = |G|^{-1/2} sum_x f(x) conj(<x, y>).
bool check_condition2_numeric(const SubsetConfig& s, const SubsetConfig& t, const ComplexFunction& f,
                              double tolerance);
// Both sides of the identity above, for diagnostics.
std::pair<std::complex<double>, std::complex<double>> condition2_sides(const SubsetConfig& s, const SubsetConfig& t,
                                                                       const ComplexFunction& f);

// S is not contained in a coset of a proper subgroup.
bool is_primitive(const SubsetConfig& s);

struct RequiredDiffs {
  std::optional<DifferenceMultiset> counts;  // the forced nu_T when every value is a nonnegative integer
  std::optional<GroupElement> failing;       // first character where integrality fails
};

// The difference multiset any dual of size M would be forced to have.
std::optional<DifferenceMultiset> required_dual_diffs(const SubsetConfig& s, std::int64_t m);
RequiredDiffs required_dual_diffs_detailed(const SubsetConfig& s, std::int64_t m);

}  // namespace fdk
