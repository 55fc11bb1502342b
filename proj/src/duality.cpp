#include "fdk/duality.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fdk/kernels.hpp"
#include "fdk/parallel.hpp"

namespace fdk {

namespace {

void require_compatible(const SubsetConfig& s, const SubsetConfig& t) {
  if (!(s.group() == t.group())) {
    throw std::invalid_argument("S lives in " + s.group().to_string() + " but T lives in " + t.group().to_string());
  }
}

}  // namespace

DifferenceMultiset::DifferenceMultiset(FiniteAbelianGroup group, std::vector<std::int64_t> counts)
    : group_(std::move(group)), counts_(std::move(counts)) {
  if (static_cast<std::int64_t>(counts_.size()) != group_.size()) {
    throw std::invalid_argument("difference multiset must have one count per group element");
  }
}

std::int64_t DifferenceMultiset::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

DifferenceMultiset difference_multiset(const SubsetConfig& s) {
  return {s.group(), kernels::dense_differences(s.group(), s.indices())};
}

CyclotomicInteger character_sum_squared(const SubsetConfig& s, const GroupElement& y) {
  const auto& g = s.group();
  if (!(g == y.group())) throw std::invalid_argument("character_sum_squared: character from another group");
  const auto nu = kernels::sparse_differences(g, s.indices());
  std::vector<std::int64_t> hist(static_cast<std::size_t>(g.exponent()), 0);
  for (std::size_t i = 0; i < nu.elements.size(); ++i) {
    hist[static_cast<std::size_t>(g.pairing_exponent(nu.elements[i], y.index()))] += nu.counts[i];
  }
  return CyclotomicInteger::from_counts(g.exponent(), hist);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Dual:
      return "dual";
    case Verdict::NotDual:
      return "not_dual";
    case Verdict::SizeObstruction:
      return "size_obstruction";
  }
  return "unknown";
}

DualityCertificate check_formal_dual(const SubsetConfig& s, const SubsetConfig& t, int jobs) {
  require_compatible(s, t);
  const auto& g = s.group();
  DualityCertificate cert;
  cert.s_size = s.size();
  cert.t_size = t.size();
  cert.group_size = g.size();
  if (s.size() * t.size() != g.size()) {
    cert.verdict = Verdict::SizeObstruction;
    return cert;
  }
  const auto nu_s = kernels::sparse_differences(g, s.indices());
  const auto nu_t = kernels::dense_differences(g, t.indices());
  jobs = resolve_jobs(jobs);
  const Index y = jobs == 1 ? kernels::first_failing_character_serial(g, nu_s, nu_t, s.size(), t.size())
                            : kernels::first_failing_character_omp(g, nu_s, nu_t, s.size(), t.size(), jobs);
  if (y < 0) {
    cert.verdict = Verdict::Dual;
    return cert;
  }
  cert.verdict = Verdict::NotDual;
  cert.witness = GroupElement(g, y);
  cert.lhs = character_sum_squared(s, *cert.witness);
  cert.rhs = RationalNumber(mpz_class(static_cast<long>(s.size() * s.size() * nu_t[static_cast<std::size_t>(y)])),
                            mpz_class(static_cast<long>(t.size())));
  return cert;
}

std::pair<std::complex<double>, std::complex<double>> condition2_sides(const SubsetConfig& s, const SubsetConfig& t,
                                                                       const ComplexFunction& f) {
  require_compatible(s, t);
  const auto& g = s.group();
  const auto n = g.size();
  std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) values[static_cast<std::size_t>(x)] = f(GroupElement(g, x));

  const auto nu_s = kernels::sparse_differences(g, s.indices());
  const auto nu_t = kernels::sparse_differences(g, t.indices());
  std::complex<double> lhs = 0;
  for (std::size_t i = 0; i < nu_s.elements.size(); ++i) {
    lhs += static_cast<double>(nu_s.counts[i]) * values[static_cast<std::size_t>(nu_s.elements[i])];
  }
  lhs /= std::pow(static_cast<double>(s.size()), 1.5);

  // fhat only needs evaluating on the support of nu_T.
  const double L = static_cast<double>(g.exponent());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::complex<double> rhs = 0;
  for (std::size_t i = 0; i < nu_t.elements.size(); ++i) {
    const Index y = nu_t.elements[i];
    std::complex<double> fhat = 0;
    for (Index x = 0; x < n; ++x) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(g.pairing_exponent(x, y)) / L;
      fhat += values[static_cast<std::size_t>(x)] * std::polar(1.0, angle);
    }
    rhs += static_cast<double>(nu_t.counts[i]) * norm * fhat;
  }
  rhs /= std::pow(static_cast<double>(t.size()), 1.5);
  return {lhs, rhs};
}

bool check_condition2_numeric(const SubsetConfig& s, const SubsetConfig& t, const ComplexFunction& f,
                              double tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (s.size() * t.size() != s.group().size()) {
    throw std::invalid_argument("condition (2) check requires |S| |T| = |G|");
  }
  const auto [lhs, rhs] = condition2_sides(s, t, f);
  return std::abs(lhs - rhs) <= tolerance;
}

bool is_primitive(const SubsetConfig& s) {
  const auto& g = s.group();
  const Index base = s.indices().front();
  std::vector<Index> diffs;
  diffs.reserve(s.indices().size());
  for (auto v : s.indices()) {
    if (v != base) diffs.push_back(g.sub(v, base));
  }
  return static_cast<std::int64_t>(closure_indices(g, diffs).size()) == g.size();
}

RequiredDiffs required_dual_diffs_detailed(const SubsetConfig& s, std::int64_t m) {
  const auto& g = s.group();
  if (m < 1 || s.size() * m != g.size()) {
    throw std::invalid_argument("required_dual_diffs: |S| * M must equal |G|");
  }
  const auto nu_s = kernels::sparse_differences(g, s.indices());
  const mpz_class n2 = mpz_class(static_cast<long>(s.size())) * static_cast<long>(s.size());
  std::vector<std::int64_t> hist(static_cast<std::size_t>(g.exponent()));
  std::vector<std::int64_t> forced(static_cast<std::size_t>(g.size()), 0);
  RequiredDiffs out;
  for (Index y = 0; y < g.size(); ++y) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t i = 0; i < nu_s.elements.size(); ++i) {
      hist[static_cast<std::size_t>(g.pairing_exponent(nu_s.elements[i], y))] += nu_s.counts[i];
    }
    const auto value = rational_value_of_counts(g.exponent(), hist);
    if (!value) {
      out.failing = GroupElement(g, y);
      return out;
    }
    const mpz_class scaled = *value * static_cast<long>(m);
    if (scaled < 0 || !mpz_divisible_p(scaled.get_mpz_t(), n2.get_mpz_t())) {
      out.failing = GroupElement(g, y);
      return out;
    }
    const mpz_class q = scaled / n2;
    forced[static_cast<std::size_t>(y)] = q.get_si();
  }
  const auto total = std::accumulate(forced.begin(), forced.end(), std::int64_t{0});
  if (forced[0] != m || total != m * m) {
    out.failing = GroupElement(g, Index{0});
    return out;
  }
  out.counts = DifferenceMultiset(g, std::move(forced));
  return out;
}

std::optional<DifferenceMultiset> required_dual_diffs(const SubsetConfig& s, std::int64_t m) {
  return required_dual_diffs_detailed(s, m).counts;
}

}  // namespace fdk
