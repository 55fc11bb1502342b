#include "fdk/applications.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fdk/constructions.hpp"
#include "fdk/duality.hpp"
#include "fdk/errors.hpp"
#include "fdk/parallel.hpp"

namespace fdk {

BarlowSequence::BarlowSequence(std::vector<int> offsets) : offsets_(std::move(offsets)) {
  const auto k = offsets_.size();
  if (k < 2) throw std::invalid_argument("Barlow sequence needs at least two layers");
  for (std::size_t j = 0; j < k; ++j) {
    if (offsets_[j] < 0 || offsets_[j] > 2) throw std::invalid_argument("Barlow offsets must be 0, 1 or 2");
    if (offsets_[j] == offsets_[(j + 1) % k]) {
      throw std::invalid_argument("Barlow sequence " + to_string() + " repeats a layer at position " +
                                  std::to_string(j));
    }
  }
}

bool BarlowSequence::is_fcc() const {
  const auto k = offsets_.size();
  if (k % 3 != 0) return false;
  if (std::set<int>(offsets_.begin(), offsets_.begin() + 3).size() != 3) return false;
  for (std::size_t j = 3; j < k; ++j) {
    if (offsets_[j] != offsets_[j % 3]) return false;
  }
  return true;
}

std::string BarlowSequence::to_string() const {
  std::string out;
  for (auto a : offsets_) out += static_cast<char>('0' + a);
  return out;
}

SubsetConfig barlow_subset(const BarlowSequence& seq) {
  const auto k = seq.layers();
  FiniteAbelianGroup g({3, k});
  std::vector<GroupElement> pts;
  for (std::int64_t j = 0; j < k; ++j) pts.emplace_back(g, std::vector<std::int64_t>{seq.offsets()[static_cast<std::size_t>(j)], j});
  return {g, pts};
}

std::string to_string(BarlowReason r) {
  switch (r) {
    case BarlowReason::NotMultipleOf3:
      return "not_multiple_of_3";
    case BarlowReason::IntegralityFail:
      return "integrality_fail";
    case BarlowReason::NoDualSubset:
      return "no_dual_subset";
    case BarlowReason::DualFound:
      return "dual_found";
  }
  return "unknown";
}

BarlowVerdict barlow_check(const BarlowSequence& seq) {
  BarlowVerdict v{seq};
  const auto k = seq.layers();
  if (k % 3 != 0) {
    v.reason = BarlowReason::NotMultipleOf3;
    return v;
  }
  const auto s = barlow_subset(seq);
  // |S| = k and |G| = 3k, so a dual has exactly 3 points.
  const auto forced = required_dual_diffs_detailed(s, 3);
  if (!forced.counts) {
    v.reason = BarlowReason::IntegralityFail;
    v.failing_character = forced.failing;
    return v;
  }
  auto t = search_dual_for(s, 3);
  if (!t) {
    v.reason = BarlowReason::NoDualSubset;
    return v;
  }
  v.has_dual = true;
  v.reason = BarlowReason::DualFound;
  v.dual = std::move(t);
  return v;
}

std::vector<BarlowSequence> normalized_barlow_sequences(std::int64_t k) {
  if (k < 2) return {};
  std::vector<BarlowSequence> out;
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  a[1] = 1;
  // Depth-first over positions 2..k-1 in increasing value order gives lexicographic output.
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == a.size()) {
      if (a.back() != a.front()) out.emplace_back(a);
      return;
    }
    for (int v = 0; v < 3; ++v) {
      if (v == a[j - 1]) continue;
      a[j] = v;
      self(self, j + 1);
    }
  };
  if (k == 2) {
    out.emplace_back(a);
  } else {
    rec(rec, 2);
  }
  return out;
}

BarlowScan barlow_scan(std::int64_t k_max, int jobs) {
  if (k_max < 2) throw std::invalid_argument("barlow_scan: k_max must be at least 2");
  std::vector<BarlowSequence> all;
  for (std::int64_t k = 2; k <= k_max; ++k) {
    auto seqs = normalized_barlow_sequences(k);
    all.insert(all.end(), seqs.begin(), seqs.end());
  }
  std::vector<std::optional<BarlowVerdict>> slots(all.size());
  jobs = resolve_jobs(jobs);
  const auto count = static_cast<std::int64_t>(all.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (std::int64_t i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = barlow_check(all[static_cast<std::size_t>(i)]);

  BarlowScan scan;
  scan.k_max = k_max;
  for (auto& v : slots) {
    if (v->has_dual != v->sequence.is_fcc()) {
      scan.anomalies.push_back(v->sequence.to_string() + ": " + to_string(v->reason));
    }
    if (v->sequence.layers() % 3 != 0 && v->reason != BarlowReason::NotMultipleOf3) {
      scan.anomalies.push_back(v->sequence.to_string() + ": expected not_multiple_of_3");
    }
    scan.verdicts.push_back(std::move(*v));
  }
  return scan;
}

DivisibilityObstruction divisibility_obstruction(std::int64_t subset_size, std::int64_t group_size) {
  if (subset_size < 1 || group_size < 1) throw std::invalid_argument("sizes must be positive");
  return {subset_size, group_size, group_size % subset_size != 0};
}

DivisibilityObstruction best_packing_obstruction() { return divisibility_obstruction(40, 1024); }

SubsetConfig load_binary_code(const std::string& path, std::int64_t length) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open codeword file " + path);
  FiniteAbelianGroup g(std::vector<std::int64_t>(static_cast<std::size_t>(length), 2));
  std::vector<GroupElement> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word;
    for (char c : line) {
      if (c == '#') break;
      if (c == '0' || c == '1') word += c;
      else if (!std::isspace(static_cast<unsigned char>(c))) throw std::invalid_argument("bad codeword character in " + path);
    }
    if (word.empty()) continue;
    if (static_cast<std::int64_t>(word.size()) != length) {
      throw std::invalid_argument("codeword '" + word + "' does not have length " + std::to_string(length));
    }
    std::vector<std::int64_t> r;
    for (char c : word) r.push_back(c - '0');
    words.emplace_back(g, r);
  }
  return {g, words};
}

bool differences_are_units(std::int64_t modulus, const std::vector<std::int64_t>& subset) {
  std::vector<char> hit(static_cast<std::size_t>(modulus), 0);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (i == j) continue;
      const auto d = (((subset[i] - subset[j]) % modulus) + modulus) % modulus;
      if (std::gcd(d, modulus) != 1 || hit[static_cast<std::size_t>(d)]) return false;
      hit[static_cast<std::size_t>(d)] = 1;
      ++count;
    }
  }
  std::int64_t units = 0;
  for (std::int64_t d = 1; d < modulus; ++d) units += std::gcd(d, modulus) == 1;
  return count == units;
}

bool psquared_difference_scan(std::int64_t p, int jobs) {
  if (!is_odd_prime(p)) throw std::invalid_argument("psquared_difference_scan: p must be an odd prime");
  if (p > 7) throw CapacityError("psquared_difference_scan: p > 7 is beyond desk scale");
  const auto n = p * p;
  // x_0 = 0 and x_i = i + a_i p; work items are the choices of a_1.
  bool found = false;
  jobs = resolve_jobs(jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) reduction(|| : found)
  for (std::int64_t a1 = 0; a1 < p; ++a1) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(p - 1), 0);
    digits[0] = a1;
    std::vector<std::int64_t> s(static_cast<std::size_t>(p));
    while (true) {
      s[0] = 0;
      for (std::int64_t i = 1; i < p; ++i) s[static_cast<std::size_t>(i)] = (i + digits[static_cast<std::size_t>(i - 1)] * p) % n;
      if (differences_are_units(n, s)) found = true;
      std::size_t pos = 1;
      while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
  return !found;
}

SearchReport cyclic_psquared_scan(std::int64_t p, int jobs) {
  if (!is_odd_prime(p)) throw std::invalid_argument("cyclic_psquared_scan: p must be an odd prime");
  if (p > 5) throw CapacityError("cyclic_psquared_scan: only p in {3, 5} is at desk scale");
  ClassifyOptions opts;
  opts.jobs = jobs;
  return classify(FiniteAbelianGroup({p * p}), p, opts);
}

}  // namespace fdk
