// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fdk/applications.hpp"
#include "fdk/constructions.hpp"
#include "fdk/duality.hpp"
#include "fdk/euclid.hpp"
#include "fdk/search.hpp"
#include "oracles.hpp"

using namespace fdk;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool is_dual(const SubsetConfig& s, const SubsetConfig& t) { return check_formal_dual(s, t).is_dual(); }

// 1: TITO verifies within a millisecond.
void tito_check(Outcome& o) {
  const auto pair = tito();
  const auto t0 = Clock::now();
  const auto cert = check_formal_dual(pair.s(), pair.t());
  const double elapsed = seconds_since(t0);
  o.require(cert.verdict == Verdict::Dual, "TITO not dual");
  o.require(elapsed < 1e-3, "TITO check took " + std::to_string(elapsed) + " s");
  o.detail << "check " << elapsed * 1e6 << " us";
}

// 2: every Gauss pair for p in {3,5,7,11} verifies within 30 s.
void gauss_grid(Outcome& o) {
  const auto t0 = Clock::now();
  int count = 0;
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (std::int64_t a = 1; a < p; ++a) {
      for (std::int64_t b = 1; b < p; ++b) {
        const auto pair = gauss_pair(p, a, b);
        o.require(is_dual(pair.s(), pair.t()), "gauss " + std::to_string(p) + "," + std::to_string(a) + "," +
                                                   std::to_string(b) + " not dual");
        ++count;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30, "grid took " + std::to_string(elapsed) + " s");
  o.detail << count << " pairs in " << elapsed << " s";
}

// 3: no primitive pairs with |S| = p in Z/9 and Z/25.
void cyclic_nonexistence(Outcome& o) {
  for (std::int64_t p : {3, 5}) {
    const auto r = classify(FiniteAbelianGroup({p * p}), p);
    o.require(r.pair_count == 0 && r.orbits.empty(), "primitive pair found in Z/" + std::to_string(p * p));
    o.detail << "Z/" << p * p << ": " << r.stats.subsets_scanned << " subsets, 0 pairs; ";
  }
}

// 4: no subset of Z/p^2 has the units as its difference set, p in {3,5,7}.
void psquared(Outcome& o) {
  for (std::int64_t p : {3, 5, 7}) {
    o.require(psquared_difference_scan(p, 0), "unit-difference subset found for p = " + std::to_string(p));
  }
  o.detail << "p = 3, 5, 7 scanned";
}

// 5: among Barlow sequences with k <= 12 only fcc has a dual, and 3 not dividing k
// is reported as such.
void barlow(Outcome& o) {
  const auto scan = barlow_scan(12, 0);
  o.require(scan.consistent(), "anomalies in the Barlow scan");
  int duals = 0;
  for (const auto& v : scan.verdicts) {
    o.require(v.has_dual == v.sequence.is_fcc(), "verdict mismatch for " + v.sequence.to_string());
    o.require(v.has_dual == (v.reason == BarlowReason::DualFound), "reason mismatch for " + v.sequence.to_string());
    if (v.sequence.layers() % 3 != 0) {
      o.require(v.reason == BarlowReason::NotMultipleOf3, "wrong stage for " + v.sequence.to_string());
    }
    if (v.has_dual) o.require(is_dual(barlow_subset(v.sequence), *v.dual), "bad dual for " + v.sequence.to_string());
    duals += v.has_dual;
  }
  o.detail << scan.verdicts.size() << " sequences, " << duals << " with duals (all fcc)";
}

// 6: 40 does not divide 1024.
void best_packing(Outcome& o) {
  const auto r = best_packing_obstruction();
  o.require(r.subset_size == 40 && r.group_size == 1024 && r.obstructed, "obstruction not reported");
  o.detail << "40 does not divide 1024";
}

// 7: numeric pair-sum identity at 1e-8, and a mismatched pair fails clearly.
void euclid(Outcome& o) {
  const double tol = 1e-8;
  const auto [tp, tq] = realize(tito());
  const auto [gp, gq] = realize(gauss_pair(3, 1, 1));
  const PeriodicConfiguration z2(Lattice::integer(2), {Eigen::VectorXd::Zero(2)});
  double worst = 0;
  for (const auto& [p, q] : std::vector<std::pair<PeriodicConfiguration, PeriodicConfiguration>>{
           {tp, tq}, {gp, gq}, {z2, z2}}) {
    const auto report = verify_duality_numeric(p, q, standard_tests(p.dimension()), tol, std::nullopt, 0);
    o.require(report.passed && report.results.size() == 6, "dual pair failed the numeric check");
    worst = std::max(worst, report.max_residual);
  }
  FiniteAbelianGroup z8({8});
  const auto [np, nq] = realize(SubsetConfig(z8, std::vector<Index>{0, 1}), SubsetConfig(z8, std::vector<Index>{0, 1, 2, 3}));
  const auto bad = verify_duality_numeric(np, nq, standard_tests(1), tol, std::nullopt, 0);
  o.require(!bad.passed && bad.max_residual >= 10 * tol, "mismatched pair was not rejected");
  Eigen::MatrixXd two = 2 * Eigen::MatrixXd::Identity(2, 2);
  const PeriodicConfiguration z2_scaled(Lattice(two), {Eigen::VectorXd::Zero(2)});
  const auto bad2 = verify_duality_numeric(z2, z2_scaled, standard_tests(2), tol, std::nullopt, 0);
  o.require(!bad2.passed && bad2.max_residual >= 10 * tol, "Z^2 against 2Z^2 was not rejected");
  o.detail << "max dual residual " << worst << ", mismatched residuals " << bad.max_residual << " and "
           << bad2.max_residual;
}

// 8: property suites.
void properties(Outcome& o) {
  std::mt19937_64 rng(20240601);
  const std::vector<DualPair> pairs{tito(), gauss_pair(3, 1, 1), gauss_pair(5, 2, 3), gauss_pair(7, 3, 1),
                                    subgroup_pair(FiniteAbelianGroup({4, 4}), {GroupElement(FiniteAbelianGroup({4, 4}), std::vector<std::int64_t>{2, 2})}),
                                    product(tito(), gauss_pair(3, 2, 2))};
  std::uniform_real_distribution<double> u(-1, 1);
  int functions = 0;
  for (const auto& pair : pairs) {
    const auto& g = pair.group();
    // Condition (2) on random test functions.
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::complex<double>> values(static_cast<std::size_t>(g.size()));
      for (auto& v : values) v = {u(rng), u(rng)};
      const ComplexFunction f = [&values](const GroupElement& x) { return values[static_cast<std::size_t>(x.index())]; };
      o.require(check_condition2_numeric(pair.s(), pair.t(), f, 1e-9), "condition (2) failed");
      ++functions;
    }
    // Parseval.
    CyclotomicInteger total(g.exponent());
    for (Index y = 0; y < g.size(); ++y) total = total + character_sum_squared(pair.s(), GroupElement(g, y));
    const auto v = total.rational_value();
    o.require(v && *v == pair.s().size() * g.size(), "Parseval failed");
    // Symmetry and translation invariance.
    o.require(is_dual(pair.t(), pair.s()), "symmetry failed");
    const auto x = static_cast<Index>(rng() % static_cast<std::uint64_t>(g.size()));
    const auto y = static_cast<Index>(rng() % static_cast<std::uint64_t>(g.size()));
    o.require(is_dual(pair.s().translated(x), pair.t().translated(y)), "translation invariance failed");
    // Automorphism equivariance.
    if (g.size() <= 64) {
      const auto autos = enumerate_automorphisms(g);
      for (std::size_t i = 0; i < autos.size(); i += 1 + autos.size() / 10) {
        std::vector<Index> s2, t2;
        for (auto a : pair.s().indices()) s2.push_back(autos[i].forward[static_cast<std::size_t>(a)]);
        for (auto b : pair.t().indices()) t2.push_back(autos[i].dual_inverse[static_cast<std::size_t>(b)]);
        o.require(is_dual(SubsetConfig(g, s2), SubsetConfig(g, t2)), "automorphism equivariance failed");
      }
    }
  }
  // Products.
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      if (a.group().size() * b.group().size() > 2000) continue;
      const auto p = product(a, b);
      o.require(is_dual(p.s(), p.t()), "product failed");
    }
  }
  // Lift and project.
  FiniteAbelianGroup big({8, 3});
  const Homomorphism emb(FiniteAbelianGroup({4}), big, {GroupElement(big, std::vector<std::int64_t>{2, 0})});
  const auto lifted = lift(tito(), emb);
  o.require(is_dual(lifted.s(), lifted.t()), "lift failed");
  o.require(project(lifted, emb) == tito(), "project did not invert lift");
  o.detail << functions << " random test functions, " << pairs.size() << " pairs";
}

// 9: the filtered classifier matches a filter-free census on every small group.
void micro_completeness(Outcome& o) {
  const auto t0 = Clock::now();
  int instances = 0;
  std::size_t total_pairs = 0;
  for (const auto& orders : oracle::small_groups()) {
    FiniteAbelianGroup g(orders);
    for (std::int64_t n = 1; n <= g.size(); ++n) {
      if (g.size() % n) continue;
      ClassifyOptions opts;
      opts.keep_pairs = true;
      opts.jobs = 0;
      const auto r = classify(g, n, opts);
      const auto census = oracle::census(oracle::Group(orders), n);
      std::set<oracle::Pair> pairs, orbits;
      for (const auto& h : r.pairs) pairs.emplace(h.s, h.t);
      for (const auto& orb : r.orbits) orbits.emplace(orb.s.indices(), orb.t.indices());
      o.require(pairs == census.pairs, "pair sets differ for " + g.to_string() + ", N = " + std::to_string(n));
      o.require(orbits == census.orbits, "orbit sets differ for " + g.to_string() + ", N = " + std::to_string(n));
      o.require(r.pair_count == census.pairs.size(), "pair count differs for " + g.to_string());
      total_pairs += census.pairs.size();
      ++instances;
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 120, "census took " + std::to_string(elapsed) + " s");
  o.detail << instances << " (group, N) instances, " << total_pairs << " pairs, " << elapsed << " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"TITO certificate", tito_check},
      {"Gauss pair grid", gauss_grid},
      {"no primitive pairs in Z/9 and Z/25", cyclic_nonexistence},
      {"Z/p^2 unit-difference scan", psquared},
      {"Barlow packings", barlow},
      {"Best packing divisibility", best_packing},
      {"Euclidean pair-sum identity", euclid},
      {"property suites", properties},
      {"micro-completeness against the census", micro_completeness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " exception: " << e.what();
    }
    const double elapsed = seconds_since(t0);
    std::printf("%s criterion %zu: %s (%.3f s) %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                elapsed, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
