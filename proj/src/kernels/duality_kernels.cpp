#include <omp.h>

#include <algorithm>
#include <limits>

#include "fdk/cyclotomic.hpp"
#include "fdk/kernels.hpp"

namespace fdk::kernels {

namespace {

bool character_matches(const FiniteAbelianGroup& g, const SparseCounts& nu_s, std::int64_t nu_t_y,
                       std::int64_t s_size, std::int64_t t_size, Index y, std::vector<std::int64_t>& hist) {
  std::fill(hist.begin(), hist.end(), 0);
  for (std::size_t i = 0; i < nu_s.elements.size(); ++i) {
    hist[static_cast<std::size_t>(g.pairing_exponent(nu_s.elements[i], y))] += nu_s.counts[i];
  }
  const auto value = rational_value_of_counts(g.exponent(), hist);
  if (!value) return false;
  const mpz_class lhs = *value * static_cast<long>(t_size);
  const mpz_class rhs = mpz_class(static_cast<long>(s_size)) * static_cast<long>(s_size) * static_cast<long>(nu_t_y);
  return lhs == rhs;
}

}  // namespace

SparseCounts sparse_differences(const FiniteAbelianGroup& g, std::span<const Index> subset) {
  const auto dense = dense_differences(g, subset);
  SparseCounts out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) {
      out.elements.push_back(static_cast<Index>(i));
      out.counts.push_back(dense[i]);
    }
  }
  return out;
}

std::vector<std::int64_t> dense_differences(const FiniteAbelianGroup& g, std::span<const Index> subset) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(g.size()), 0);
  for (auto a : subset) {
    for (auto b : subset) ++counts[static_cast<std::size_t>(g.sub(a, b))];
  }
  return counts;
}

Index first_failing_character_serial(const FiniteAbelianGroup& g, const SparseCounts& nu_s,
                                     std::span<const std::int64_t> nu_t, std::int64_t s_size,
                                     std::int64_t t_size) {
  std::vector<std::int64_t> hist(static_cast<std::size_t>(g.exponent()));
  for (Index y = 0; y < g.size(); ++y) {
    if (!character_matches(g, nu_s, nu_t[static_cast<std::size_t>(y)], s_size, t_size, y, hist)) return y;
  }
  return -1;
}

Index first_failing_character_omp(const FiniteAbelianGroup& g, const SparseCounts& nu_s,
                                  std::span<const std::int64_t> nu_t, std::int64_t s_size, std::int64_t t_size,
                                  int jobs) {
  const Index n = g.size();
  Index best = std::numeric_limits<Index>::max();
#pragma omp parallel num_threads(jobs)
  {
    std::vector<std::int64_t> hist(static_cast<std::size_t>(g.exponent()));
    Index local = std::numeric_limits<Index>::max();
#pragma omp for schedule(static)
    for (Index y = 0; y < n; ++y) {
      if (y >= local) continue;
      if (!character_matches(g, nu_s, nu_t[static_cast<std::size_t>(y)], s_size, t_size, y, hist)) local = y;
    }
#pragma omp critical
    best = std::min(best, local);
  }
  return best == std::numeric_limits<Index>::max() ? -1 : best;
}

}  // namespace fdk::kernels
