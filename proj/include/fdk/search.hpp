#pragma once

// Exhaustive search and classification of primitive formally dual pairs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdk/group.hpp"
#include "fdk/kernels.hpp"

namespace fdk {

// An automorphism psi of G as a permutation of element indices, together with
// the inverse adjoint (psi*)^{-1} acting on the dual. Pairs transform as
// (S, T) -> (psi(S), (psi*)^{-1}(T)).
struct Automorphism {
  std::vector<Index> forward;
  std::vector<Index> dual_inverse;
};

// Brute force over generator images. Throws CapacityError beyond `cap`
// automorphisms or an oversized candidate space.
std::vector<Automorphism> enumerate_automorphisms(const FiniteAbelianGroup& g, std::size_t cap = 100000);

// Lexicographically least sorted(X - x) over x in X.
std::vector<Index> translation_canonical(const FiniteAbelianGroup& g, std::span<const Index> x);

// Least representative of S under translations composed with automorphisms.
SubsetConfig canonical_form(const SubsetConfig& s);
SubsetConfig canonical_form(const SubsetConfig& s, const std::vector<Automorphism>& autos);

// Least (S, T) in the orbit under independent translations and simultaneous
// automorphisms.
std::pair<SubsetConfig, SubsetConfig> canonical_pair(const SubsetConfig& s, const SubsetConfig& t,
                                                     const std::vector<Automorphism>& autos);

// Lexicographically least T with 0 in T, |T| = m, formally dual to S.
std::optional<SubsetConfig> search_dual_for(const SubsetConfig& s, std::int64_t m);
// Every such T, in lexicographic order.
std::vector<SubsetConfig> search_all_duals_for(const SubsetConfig& s, std::int64_t m);

struct OrbitRepresentative {
  SubsetConfig s;
  SubsetConfig t;
};

struct SearchReport {
  FiniteAbelianGroup group;
  std::int64_t n = 0;
  std::int64_t m = 0;
  // Primitive dual pairs with 0 in S and 0 in T.
  std::uint64_t pair_count = 0;
  std::vector<OrbitRepresentative> orbits{};  // canonical forms, sorted
  kernels::EnumerationStats stats{};
  std::size_t automorphism_count = 0;
  double elapsed_ms = 0;
  std::vector<kernels::PairHit> pairs{};  // filled only with keep_pairs
};

struct ClassifyOptions {
  int jobs = 1;
  bool keep_pairs = false;
  std::function<void(const std::string&)> progress;
};

// Throws std::invalid_argument unless n divides |G|, CapacityError when the
// instance is beyond desk scale.
SearchReport classify(const FiniteAbelianGroup& g, std::int64_t n, const ClassifyOptions& options = {});

}  // namespace fdk
