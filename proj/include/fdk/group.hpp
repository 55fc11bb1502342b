#pragma once

// Finite abelian groups presented as products of cyclic groups Z/n_1 x ... x Z/n_k.
//
// The character group is represented by the same orders list; an element y of
// the dual acts on x through the canonical pairing
//     <x, y> = exp(2 pi i e / L),  e = sum_j x_j y_j (L / n_j) mod L,
// where L is the exponent lcm(n_1, ..., n_k).
//
// Elements are addressed by a mixed-radix index with the first coordinate most
// significant, so index order coincides with lexicographic order on residue
// vectors. Subsets and subgroups store sorted index lists.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fdk {

using Index = std::int64_t;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup();  // trivial group, orders {1}
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return data_->orders; }
  std::size_t rank() const { return data_->orders.size(); }
  std::int64_t size() const { return data_->size; }
  std::int64_t exponent() const { return data_->exponent; }
  std::int64_t order(std::size_t j) const { return data_->orders[j]; }

  // Residues are reduced modulo the orders.
  Index index_of(std::span<const std::int64_t> residues) const;
  std::vector<std::int64_t> residues_of(Index idx) const;

  // Index arithmetic. Inputs must be valid indices of this group.
  Index add(Index a, Index b) const;
  Index neg(Index a) const;
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index scale(Index a, std::int64_t k) const;

  // Pairing exponent e in [0, L) between index x of G and index y of the dual.
  std::int64_t pairing_exponent(Index x, Index y) const;

  // Order of the element with the given index.
  std::int64_t element_order(Index a) const;

  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.data_ == b.data_ || a.data_->orders == b.data_->orders;
  }

 private:
  struct Data {
    std::vector<std::int64_t> orders;
    std::vector<std::int64_t> strides;    // mixed-radix place values
    std::vector<std::int64_t> pair_scale; // L / n_j
    std::int64_t size = 1;
    std::int64_t exponent = 1;
  };
  std::shared_ptr<const Data> data_;
};

class GroupElement {
 public:
  GroupElement(FiniteAbelianGroup group, std::vector<std::int64_t> residues);
  GroupElement(FiniteAbelianGroup group, Index idx);
  static GroupElement zero(const FiniteAbelianGroup& group) { return {group, Index{0}}; }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::int64_t>& residues() const { return residues_; }
  Index index() const { return index_; }
  bool is_zero() const { return index_ == 0; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.index_ == b.index_;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.index_ < b.index_; }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::int64_t> residues_;
  Index index_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement sub(const GroupElement& a, const GroupElement& b);

// Pairing exponent of x in G against y in the dual group. Throws on orders mismatch.
std::int64_t pairing_exponent(const GroupElement& x, const GroupElement& y);

class Subgroup {
 public:
  Subgroup(FiniteAbelianGroup group, std::vector<GroupElement> generators, std::vector<Index> elements);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  const std::vector<Index>& elements() const { return elements_; }
  std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
  bool contains(Index idx) const;
  bool is_whole_group() const { return size() == group_.size(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_ == b.group_ && a.elements_ == b.elements_;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<GroupElement> generators_;
  std::vector<Index> elements_;
};

Subgroup subgroup_closure(const FiniteAbelianGroup& group, const std::vector<GroupElement>& gens);
// Closure of raw indices; returns the sorted element list.
std::vector<Index> closure_indices(const FiniteAbelianGroup& group, std::span<const Index> gens);

// {y in dual : <x, y> = 1 for all x in H}.
Subgroup annihilator(const Subgroup& h);

// A nonempty set of distinct elements. Duplicates are rejected.
class SubsetConfig {
 public:
  SubsetConfig(FiniteAbelianGroup group, const std::vector<GroupElement>& points);
  SubsetConfig(FiniteAbelianGroup group, std::vector<Index> indices);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Index>& indices() const { return indices_; }
  std::vector<GroupElement> points() const;
  std::int64_t size() const { return static_cast<std::int64_t>(indices_.size()); }
  bool contains(Index idx) const;

  SubsetConfig translated(Index by) const;

  friend bool operator==(const SubsetConfig& a, const SubsetConfig& b) {
    return a.group_ == b.group_ && a.indices_ == b.indices_;
  }
  friend bool operator<(const SubsetConfig& a, const SubsetConfig& b) { return a.indices_ < b.indices_; }

 private:
  FiniteAbelianGroup group_;
  std::vector<Index> indices_;
};

// Dense difference and pairing tables for the inner loops of search and scans.
class GroupTables {
 public:
  static constexpr std::int64_t kMaxOrder = 4096;

  explicit GroupTables(FiniteAbelianGroup group);

  const FiniteAbelianGroup& group() const { return group_; }
  std::int64_t size() const { return n_; }
  std::int32_t sub(Index a, Index b) const { return sub_[static_cast<std::size_t>(a * n_ + b)]; }
  std::int32_t add(Index a, Index b) const { return add_[static_cast<std::size_t>(a * n_ + b)]; }
  std::int32_t pairing(Index x, Index y) const { return pair_[static_cast<std::size_t>(x * n_ + y)]; }

 private:
  FiniteAbelianGroup group_;
  std::int64_t n_;
  std::vector<std::int32_t> sub_;
  std::vector<std::int32_t> add_;
  std::vector<std::int32_t> pair_;
};

}  // namespace fdk
