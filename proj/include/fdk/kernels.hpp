#pragma once

// Inner loops shared by the public API. Each data-parallel kernel has a serial
// reference (`*_serial`) and an OpenMP variant (`*_omp`) that must produce
// identical results for every worker count.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdk/group.hpp"

namespace fdk::kernels {

// Support of a difference multiset: distinct differences with their counts.
struct SparseCounts {
  std::vector<Index> elements;
  std::vector<std::int64_t> counts;
};

SparseCounts sparse_differences(const FiniteAbelianGroup& g, std::span<const Index> subset);
std::vector<std::int64_t> dense_differences(const FiniteAbelianGroup& g, std::span<const Index> subset);

// First character y (in index order) where
//   t_size * |sum_{v in S} <v,y>|^2 != s_size^2 * nu_t[y],
// or -1 if there is none.
Index first_failing_character_serial(const FiniteAbelianGroup& g, const SparseCounts& nu_s,
                                     std::span<const std::int64_t> nu_t, std::int64_t s_size,
                                     std::int64_t t_size);
Index first_failing_character_omp(const FiniteAbelianGroup& g, const SparseCounts& nu_s,
                                  std::span<const std::int64_t> nu_t, std::int64_t s_size, std::int64_t t_size,
                                  int jobs);

// ---- search ----------------------------------------------------------------

struct ForcedResult {
  std::optional<std::vector<std::int64_t>> counts;  // dense forced nu_T
  Index failing = -1;                               // first non-integral character
};

// The difference multiset forced on any dual of size m (dense over the dual group).
ForcedResult forced_differences(const GroupTables& tables, std::span<const Index> subset, std::int64_t m);

bool is_primitive(const GroupTables& tables, std::span<const Index> subset);

// All T with 0 in T, |T| = m and nu_T == forced, in lexicographic order.
// Stops after `limit` solutions when limit > 0.
std::vector<std::vector<Index>> realize_differences(const GroupTables& tables, std::span<const std::int64_t> forced,
                                                    std::int64_t m, std::size_t limit = 0);

struct EnumerationStats {
  std::uint64_t subsets_scanned = 0;
  std::uint64_t primitive_subsets = 0;
  std::uint64_t passed_integrality = 0;
  std::uint64_t duals_found = 0;
  std::uint64_t primitive_pairs = 0;

  EnumerationStats& operator+=(const EnumerationStats& o);
  friend bool operator==(const EnumerationStats&, const EnumerationStats&) = default;
};

struct PairHit {
  std::vector<Index> s;
  std::vector<Index> t;
  friend auto operator<=>(const PairHit&, const PairHit&) = default;
};

struct EnumerationResult {
  std::vector<PairHit> pairs;  // sorted
  EnumerationStats stats;
};

// Every primitive formally dual pair (S, T) with 0 in S, 0 in T, |S| = n_size.
EnumerationResult enumerate_primitive_pairs_serial(const GroupTables& tables, std::int64_t n_size);
EnumerationResult enumerate_primitive_pairs_omp(const GroupTables& tables, std::int64_t n_size, int jobs);

}  // namespace fdk::kernels
