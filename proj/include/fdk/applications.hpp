#pragma once

// Case studies: Barlow packings, the Best packing divisibility obstruction,
// and the Z/p^2 non-existence results.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdk/group.hpp"
#include "fdk/search.hpp"

namespace fdk {

// Layer offsets a_0, ..., a_{k-1} in {0,1,2} with cyclically adjacent entries distinct.
class BarlowSequence {
 public:
  explicit BarlowSequence(std::vector<int> offsets);

  std::int64_t layers() const { return static_cast<std::int64_t>(offsets_.size()); }
  const std::vector<int>& offsets() const { return offsets_; }
  bool is_normalized() const { return offsets_[0] == 0 && offsets_[1] == 1; }
  // 3 | k, a_j = a_{j mod 3}, {a_0, a_1, a_2} = {0, 1, 2}.
  bool is_fcc() const;
  std::string to_string() const;

 private:
  std::vector<int> offsets_;
};

// Z/3 x Z/k with S = {(a_j, j)}.
SubsetConfig barlow_subset(const BarlowSequence& seq);

enum class BarlowReason { NotMultipleOf3, IntegralityFail, NoDualSubset, DualFound };
std::string to_string(BarlowReason r);

struct BarlowVerdict {
  BarlowSequence sequence;
  bool has_dual = false;
  BarlowReason reason = BarlowReason::NotMultipleOf3;
  std::optional<GroupElement> failing_character{};  // IntegralityFail: (r, s)
  std::optional<SubsetConfig> dual{};             // DualFound
};

BarlowVerdict barlow_check(const BarlowSequence& seq);

// Normalized sequences (a_0 = 0, a_1 = 1) with k layers, lexicographic order.
std::vector<BarlowSequence> normalized_barlow_sequences(std::int64_t k);

struct BarlowScan {
  std::int64_t k_max = 0;
  std::vector<BarlowVerdict> verdicts;
  // Sequences whose verdict disagrees with "dual iff fcc".
  std::vector<std::string> anomalies;
  bool consistent() const { return anomalies.empty(); }
};

BarlowScan barlow_scan(std::int64_t k_max, int jobs = 1);

struct DivisibilityObstruction {
  std::int64_t subset_size = 0;
  std::int64_t group_size = 0;
  bool obstructed = false;  // subset_size does not divide group_size
};

DivisibilityObstruction divisibility_obstruction(std::int64_t subset_size, std::int64_t group_size);
// (Z/2)^10 with a 40-point code.
DivisibilityObstruction best_packing_obstruction();
// One binary word of length 10 per line; blank lines and '#' comments ignored.
SubsetConfig load_binary_code(const std::string& path, std::int64_t length = 10);

// Nonzero differences of S in Z/n are exactly the units, each once.
bool differences_are_units(std::int64_t modulus, const std::vector<std::int64_t>& subset);

// True when no subset of Z/p^2 has nonzero difference set equal to the units.
bool psquared_difference_scan(std::int64_t p, int jobs = 1);

// classify(Z/p^2, p).
SearchReport cyclic_psquared_scan(std::int64_t p, int jobs = 1);

}  // namespace fdk
