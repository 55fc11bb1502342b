#include "fdk/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fdk/constructions.hpp"
#include "fdk/duality.hpp"
#include "fdk/errors.hpp"
#include "fdk/parallel.hpp"

namespace fdk {

namespace {

constexpr double kMaxImageTuples = 5e7;
constexpr double kMaxSubsets = 2e8;

class AutomorphismEnumerator {
 public:
  AutomorphismEnumerator(const FiniteAbelianGroup& g, std::size_t cap)
      : g_(g), cap_(cap), stamp_(static_cast<std::size_t>(g.size()), 0) {
    double tuples = 1;
    for (std::size_t j = 0; j < g.rank(); ++j) {
      std::vector<Index> c;
      for (Index x = 0; x < g.size(); ++x) {
        if (g.scale(x, g.order(j)) == 0) c.push_back(x);
      }
      tuples *= static_cast<double>(c.size());
      candidates_.push_back(std::move(c));
    }
    if (tuples > kMaxImageTuples) {
      throw CapacityError("automorphism enumeration of " + g.to_string() + " needs " + std::to_string(tuples) +
                          " generator-image tuples");
    }
  }

  std::vector<std::vector<Index>> run() {
    std::vector<Index> partial{0};
    images_.clear();
    descend(0, partial);
    return std::move(found_);
  }

 private:
  void descend(std::size_t j, const std::vector<Index>& partial) {
    if (j == g_.rank()) {
      if (found_.size() >= cap_) {
        throw CapacityError("more than " + std::to_string(cap_) + " automorphisms of " + g_.to_string());
      }
      found_.push_back(images_);
      return;
    }
    const auto order = g_.order(j);
    for (auto c : candidates_[j]) {
      ++epoch_;
      std::vector<Index> next;
      next.reserve(partial.size() * static_cast<std::size_t>(order));
      bool injective = true;
      Index shift = 0;
      for (std::int64_t t = 0; t < order && injective; ++t) {
        for (auto p : partial) {
          const auto v = g_.add(p, shift);
          auto& s = stamp_[static_cast<std::size_t>(v)];
          if (s == epoch_) {
            injective = false;
            break;
          }
          s = epoch_;
          next.push_back(v);
        }
        shift = g_.add(shift, c);
      }
      if (!injective) continue;
      images_.push_back(c);
      descend(j + 1, next);
      images_.pop_back();
    }
  }

  const FiniteAbelianGroup& g_;
  std::size_t cap_;
  std::vector<std::vector<Index>> candidates_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<Index> images_;
  std::vector<std::vector<Index>> found_;
};

std::vector<Index> mapped(std::span<const Index> x, const std::vector<Index>& table) {
  std::vector<Index> out;
  out.reserve(x.size());
  for (auto v : x) out.push_back(table[static_cast<std::size_t>(v)]);
  return out;
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                  std::lgamma(static_cast<double>(n - k) + 1));
}

}  // namespace

std::vector<Automorphism> enumerate_automorphisms(const FiniteAbelianGroup& g, std::size_t cap) {
  const auto tuples = AutomorphismEnumerator(g, cap).run();
  std::vector<Automorphism> out;
  out.reserve(tuples.size());
  for (const auto& images : tuples) {
    std::vector<GroupElement> elems;
    for (auto i : images) elems.emplace_back(g, i);
    const Homomorphism psi(g, g, std::move(elems));
    Automorphism a;
    a.forward = psi.image_table();
    const auto adj = adjoint_table(psi);
    a.dual_inverse.assign(adj.size(), 0);
    for (std::size_t y = 0; y < adj.size(); ++y) a.dual_inverse[static_cast<std::size_t>(adj[y])] = static_cast<Index>(y);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Index> translation_canonical(const FiniteAbelianGroup& g, std::span<const Index> x) {
  std::vector<Index> best;
  std::vector<Index> cur(x.size());
  for (auto base : x) {
    for (std::size_t i = 0; i < x.size(); ++i) cur[i] = g.sub(x[i], base);
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

SubsetConfig canonical_form(const SubsetConfig& s, const std::vector<Automorphism>& autos) {
  std::vector<Index> best = translation_canonical(s.group(), s.indices());
  for (const auto& a : autos) {
    auto c = translation_canonical(s.group(), mapped(s.indices(), a.forward));
    if (c < best) best = std::move(c);
  }
  return {s.group(), std::move(best)};
}

SubsetConfig canonical_form(const SubsetConfig& s) { return canonical_form(s, enumerate_automorphisms(s.group())); }

std::pair<SubsetConfig, SubsetConfig> canonical_pair(const SubsetConfig& s, const SubsetConfig& t,
                                                     const std::vector<Automorphism>& autos) {
  const auto& g = s.group();
  std::vector<Index> best_s = translation_canonical(g, s.indices());
  std::vector<Index> best_t = translation_canonical(g, t.indices());
  for (const auto& a : autos) {
    auto cs = translation_canonical(g, mapped(s.indices(), a.forward));
    if (cs > best_s) continue;
    auto ct = translation_canonical(g, mapped(t.indices(), a.dual_inverse));
    if (cs < best_s || ct < best_t) {
      best_s = std::move(cs);
      best_t = std::move(ct);
    }
  }
  return {SubsetConfig(g, std::move(best_s)), SubsetConfig(g, std::move(best_t))};
}

std::vector<SubsetConfig> search_all_duals_for(const SubsetConfig& s, std::int64_t m) {
  const auto& g = s.group();
  if (g.size() > GroupTables::kMaxOrder) throw CapacityError("search_dual_for: group too large for tables");
  const auto forced = required_dual_diffs(s, m);
  if (!forced) return {};
  const GroupTables tables(g);
  std::vector<SubsetConfig> out;
  for (auto& t : kernels::realize_differences(tables, forced->counts(), m)) out.emplace_back(g, std::move(t));
  return out;
}

std::optional<SubsetConfig> search_dual_for(const SubsetConfig& s, std::int64_t m) {
  const auto& g = s.group();
  if (g.size() > GroupTables::kMaxOrder) throw CapacityError("search_dual_for: group too large for tables");
  const auto forced = required_dual_diffs(s, m);
  if (!forced) return std::nullopt;
  const GroupTables tables(g);
  auto sols = kernels::realize_differences(tables, forced->counts(), m, 1);
  if (sols.empty()) return std::nullopt;
  return SubsetConfig(g, std::move(sols.front()));
}

SearchReport classify(const FiniteAbelianGroup& g, std::int64_t n, const ClassifyOptions& options) {
  if (n < 1 || g.size() % n != 0) throw std::invalid_argument("classify: subset size must divide the group order");
  if (g.size() > GroupTables::kMaxOrder) {
    throw CapacityError("classify: group of order " + std::to_string(g.size()) + " is beyond desk scale");
  }
  const double subsets = binomial(g.size() - 1, n - 1);
  if (subsets > kMaxSubsets) {
    throw CapacityError("classify: " + std::to_string(subsets) + " candidate subsets exceed the enumeration budget");
  }
  const auto start = std::chrono::steady_clock::now();
  auto progress = [&](const std::string& msg) {
    if (options.progress) options.progress(msg);
  };

  SearchReport report{g, n, g.size() / n};
  const auto autos = enumerate_automorphisms(g);
  report.automorphism_count = autos.size();
  progress("group " + g.to_string() + ": " + std::to_string(autos.size()) + " automorphisms, " +
           std::to_string(static_cast<long long>(subsets)) + " candidate subsets");

  const GroupTables tables(g);
  const int jobs = resolve_jobs(options.jobs);
  auto raw = jobs == 1 ? kernels::enumerate_primitive_pairs_serial(tables, n)
                       : kernels::enumerate_primitive_pairs_omp(tables, n, jobs);
  report.stats = raw.stats;
  report.pair_count = raw.pairs.size();
  progress("enumeration done: " + std::to_string(raw.pairs.size()) + " primitive pairs");

  std::set<std::pair<std::vector<Index>, std::vector<Index>>> orbits;
  for (const auto& hit : raw.pairs) {
    auto [cs, ct] = canonical_pair(SubsetConfig(g, hit.s), SubsetConfig(g, hit.t), autos);
    orbits.emplace(cs.indices(), ct.indices());
  }
  for (const auto& [s_idx, t_idx] : orbits) {
    SubsetConfig s(g, s_idx);
    SubsetConfig t(g, t_idx);
    if (!check_formal_dual(s, t).is_dual() || !is_primitive(s) || !is_primitive(t)) {
      throw std::logic_error("classify: orbit representative failed re-verification");
    }
    report.orbits.push_back({std::move(s), std::move(t)});
  }
  if (options.keep_pairs) report.pairs = std::move(raw.pairs);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  progress("classified into " + std::to_string(report.orbits.size()) + " orbits");
  return report;
}

}  // namespace fdk
