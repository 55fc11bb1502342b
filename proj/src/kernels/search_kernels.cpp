#include <omp.h>

#include <algorithm>
#include <numeric>

#include "fdk/cyclotomic.hpp"
#include "fdk/kernels.hpp"

namespace fdk::kernels {

EnumerationStats& EnumerationStats::operator+=(const EnumerationStats& o) {
  subsets_scanned += o.subsets_scanned;
  primitive_subsets += o.primitive_subsets;
  passed_integrality += o.passed_integrality;
  duals_found += o.duals_found;
  primitive_pairs += o.primitive_pairs;
  return *this;
}

ForcedResult forced_differences(const GroupTables& tables, std::span<const Index> subset, std::int64_t m) {
  const auto& g = tables.group();
  const auto n = tables.size();
  const auto L = g.exponent();
  std::vector<std::int64_t> nu(static_cast<std::size_t>(n), 0);
  for (auto a : subset) {
    for (auto b : subset) ++nu[static_cast<std::size_t>(tables.sub(a, b))];
  }
  std::vector<Index> support;
  std::vector<std::int64_t> weight;
  for (Index i = 0; i < n; ++i) {
    if (nu[static_cast<std::size_t>(i)]) {
      support.push_back(i);
      weight.push_back(nu[static_cast<std::size_t>(i)]);
    }
  }
  const auto size = static_cast<std::int64_t>(subset.size());
  const mpz_class n2 = mpz_class(static_cast<long>(size)) * static_cast<long>(size);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(L));
  std::vector<std::int64_t> forced(static_cast<std::size_t>(n), 0);
  ForcedResult out;
  std::int64_t total = 0;
  for (Index y = 0; y < n; ++y) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t i = 0; i < support.size(); ++i) hist[static_cast<std::size_t>(tables.pairing(support[i], y))] += weight[i];
    const auto value = rational_value_of_counts(L, hist);
    if (!value) {
      out.failing = y;
      return out;
    }
    const mpz_class scaled = *value * static_cast<long>(m);
    if (scaled < 0 || !mpz_divisible_p(scaled.get_mpz_t(), n2.get_mpz_t())) {
      out.failing = y;
      return out;
    }
    const mpz_class q = scaled / n2;
    forced[static_cast<std::size_t>(y)] = q.get_si();
    total += forced[static_cast<std::size_t>(y)];
  }
  if (forced[0] != m || total != m * m) {
    out.failing = 0;
    return out;
  }
  out.counts = std::move(forced);
  return out;
}

bool is_primitive(const GroupTables& tables, std::span<const Index> subset) {
  const auto n = tables.size();
  const Index base = subset.front();
  std::vector<Index> gens;
  for (auto v : subset) {
    if (v != base) gens.push_back(tables.sub(v, base));
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::int64_t count = 1;
  while (!stack.empty()) {
    const auto a = stack.back();
    stack.pop_back();
    for (auto g : gens) {
      const auto c = tables.add(a, g);
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        ++count;
        stack.push_back(c);
      }
    }
  }
  return count == n;
}

namespace {

class Realizer {
 public:
  Realizer(const GroupTables& tables, std::span<const std::int64_t> forced, std::int64_t m, std::size_t limit)
      : tables_(tables), forced_(forced), m_(m), limit_(limit), current_(static_cast<std::size_t>(tables.size()), 0) {
    for (Index c = 1; c < tables.size(); ++c) {
      if (forced_[static_cast<std::size_t>(c)] > 0) candidates_.push_back(c);
    }
  }

  std::vector<std::vector<Index>> run() {
    if (m_ < 1 || forced_[0] != m_) return {};
    chosen_.push_back(0);
    current_[0] = 1;
    descend(0);
    return std::move(found_);
  }

 private:
  bool full() const { return limit_ > 0 && found_.size() >= limit_; }

  // Adds t; returns false (with counts rolled back) if some difference overshoots.
  bool place(Index t) {
    std::size_t done = 0;
    bool ok = true;
    for (; done < chosen_.size(); ++done) {
      const auto w = chosen_[done];
      const auto d1 = static_cast<std::size_t>(tables_.sub(t, w));
      const auto d2 = static_cast<std::size_t>(tables_.sub(w, t));
      ++current_[d1];
      ++current_[d2];
      if (current_[d1] > forced_[d1] || current_[d2] > forced_[d2]) {
        ++done;
        ok = false;
        break;
      }
    }
    if (ok) {
      ++current_[0];
      if (current_[0] > forced_[0]) ok = false;
      else {
        chosen_.push_back(t);
        return true;
      }
      --current_[0];
    }
    for (std::size_t i = 0; i < done; ++i) {
      const auto w = chosen_[i];
      --current_[static_cast<std::size_t>(tables_.sub(t, w))];
      --current_[static_cast<std::size_t>(tables_.sub(w, t))];
    }
    return false;
  }

  void unplace() {
    const auto t = chosen_.back();
    chosen_.pop_back();
    --current_[0];
    for (auto w : chosen_) {
      --current_[static_cast<std::size_t>(tables_.sub(t, w))];
      --current_[static_cast<std::size_t>(tables_.sub(w, t))];
    }
  }

  void descend(std::size_t from) {
    if (static_cast<std::int64_t>(chosen_.size()) == m_) {
      // No overshoot and total count m^2 on both sides means exact equality.
      found_.push_back(chosen_);
      return;
    }
    const auto need = static_cast<std::size_t>(m_) - chosen_.size();
    for (std::size_t i = from; i + need <= candidates_.size(); ++i) {
      if (place(candidates_[i])) {
        descend(i + 1);
        unplace();
        if (full()) return;
      }
    }
  }

  const GroupTables& tables_;
  std::span<const std::int64_t> forced_;
  std::int64_t m_;
  std::size_t limit_;
  std::vector<std::int64_t> current_;
  std::vector<Index> candidates_;
  std::vector<Index> chosen_;
  std::vector<std::vector<Index>> found_;
};

void process_subset(const GroupTables& tables, std::span<const Index> s, std::int64_t m, EnumerationResult& out) {
  ++out.stats.subsets_scanned;
  if (!is_primitive(tables, s)) return;
  ++out.stats.primitive_subsets;
  const auto forced = forced_differences(tables, s, m);
  if (!forced.counts) return;
  ++out.stats.passed_integrality;
  for (auto& t : realize_differences(tables, *forced.counts, m)) {
    ++out.stats.duals_found;
    if (!is_primitive(tables, t)) continue;
    ++out.stats.primitive_pairs;
    out.pairs.push_back({std::vector<Index>(s.begin(), s.end()), std::move(t)});
  }
}

// Next k-combination of {1, ..., hi} in colexicographic order.
bool next_colex(std::vector<Index>& c, Index hi) {
  const auto k = c.size();
  for (std::size_t j = 0; j < k; ++j) {
    const Index limit = j + 1 < k ? c[j + 1] : hi + 1;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t i = 0; i < j; ++i) c[i] = static_cast<Index>(i) + 1;
      return true;
    }
  }
  return false;
}

void enumerate_with_max(const GroupTables& tables, std::int64_t n_size, std::int64_t m, Index top,
                        EnumerationResult& out) {
  // Subsets {0} + comb + {top}, comb a (n_size - 2)-subset of {1, ..., top - 1}.
  const auto k = static_cast<std::size_t>(n_size - 2);
  std::vector<Index> comb(k);
  std::iota(comb.begin(), comb.end(), Index{1});
  std::vector<Index> s(static_cast<std::size_t>(n_size));
  do {
    s[0] = 0;
    std::copy(comb.begin(), comb.end(), s.begin() + 1);
    s.back() = top;
    process_subset(tables, s, m, out);
  } while (k > 0 && next_colex(comb, top - 1));
}

}  // namespace

std::vector<std::vector<Index>> realize_differences(const GroupTables& tables, std::span<const std::int64_t> forced,
                                                    std::int64_t m, std::size_t limit) {
  return Realizer(tables, forced, m, limit).run();
}

EnumerationResult enumerate_primitive_pairs_serial(const GroupTables& tables, std::int64_t n_size) {
  const auto n = tables.size();
  const auto m = n / n_size;
  EnumerationResult out;
  const auto k = static_cast<std::size_t>(n_size - 1);
  std::vector<Index> comb(k);
  std::iota(comb.begin(), comb.end(), Index{1});
  std::vector<Index> s(static_cast<std::size_t>(n_size));
  if (static_cast<Index>(k) <= n - 1) {
    do {
      s[0] = 0;
      std::copy(comb.begin(), comb.end(), s.begin() + 1);
      process_subset(tables, s, m, out);
    } while (k > 0 && next_colex(comb, n - 1));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

EnumerationResult enumerate_primitive_pairs_omp(const GroupTables& tables, std::int64_t n_size, int jobs) {
  const auto n = tables.size();
  const auto m = n / n_size;
  if (n_size < 2) return enumerate_primitive_pairs_serial(tables, n_size);
  // One work item per largest element; items are merged in order.
  const Index first_top = n_size - 1;
  const Index items = n - first_top;
  std::vector<EnumerationResult> partial(static_cast<std::size_t>(std::max<Index>(items, 0)));
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (Index i = 0; i < items; ++i) {
    enumerate_with_max(tables, n_size, m, first_top + i, partial[static_cast<std::size_t>(i)]);
  }
  EnumerationResult out;
  for (auto& p : partial) {
    out.stats += p.stats;
    out.pairs.insert(out.pairs.end(), std::make_move_iterator(p.pairs.begin()), std::make_move_iterator(p.pairs.end()));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace fdk::kernels
