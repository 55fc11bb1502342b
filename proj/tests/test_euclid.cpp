#include <doctest.h>

#include <random>

#include "fdk/constructions.hpp"
#include "fdk/euclid.hpp"

using namespace fdk;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// The same point set described with the sublattice 2 * Lambda.
PeriodicConfiguration refine(const PeriodicConfiguration& p) {
  const int n = p.dimension();
  const Eigen::MatrixXd b = p.lattice().basis();
  std::vector<Eigen::VectorXd> ts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) c(i) = (mask >> i) & 1;
    for (const auto& v : p.translates()) ts.push_back(v + b * c);
  }
  return {Lattice(2 * b), ts};
}

Eigen::MatrixXd random_basis(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) += u(rng);
  }
  return b;
}

}  // namespace

TEST_CASE("lattice duality") {
  std::mt19937_64 rng(1);
  for (int n : {1, 2, 3, 4}) {
    const Lattice l(random_basis(n, rng));
    const auto d = l.dual();
    CHECK(l.covolume() * d.covolume() == doctest::Approx(1));
    CHECK((d.dual().basis() - l.basis()).norm() < 1e-12);
    // Dual basis pairs integrally with the original.
    CHECK((l.basis().transpose() * d.basis() - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(Lattice(Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
  CHECK(Lattice::integer(3).covolume() == doctest::Approx(1));
  CHECK(Lattice::integer(2).contains(vec({3, -2})));
  CHECK_FALSE(Lattice::integer(2).contains(vec({0.5, 0})));
}

TEST_CASE("periodic configurations reject repeated translates") {
  CHECK_THROWS_AS(PeriodicConfiguration(Lattice::integer(1), {vec({0}), vec({1})}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicConfiguration(Lattice::integer(2), {vec({0})}), std::invalid_argument);
  const PeriodicConfiguration p(Lattice(Eigen::MatrixXd::Identity(1, 1) * 4), {vec({0}), vec({1})});
  CHECK(p.density() == doctest::Approx(0.5));
}

TEST_CASE("Gaussian tests") {
  const GaussianTest f(2, vec({0.3, 0}));
  CHECK(f.value(vec({0.3, 0})) == doctest::Approx(1));
  CHECK(f.value(vec({1.3, 0})) == doctest::Approx(std::exp(-2 * std::numbers::pi)));
  CHECK(std::abs(f.fourier(vec({0, 0})) - std::complex<double>(0.5, 0)) < 1e-15);
  CHECK_THROWS_AS(GaussianTest(0, vec({0})), std::invalid_argument);
  const auto tests = standard_tests(3);
  CHECK(tests.size() == 6);
  for (const auto& t : tests) CHECK(t.dimension() == 3);
}

TEST_CASE("the Jacobi theta value on Z") {
  const PeriodicConfiguration z(Lattice::integer(1), {vec({0})});
  const auto s = pair_sum(z, GaussianTest(1, vec({0})));
  // theta_3(e^{-pi}) = pi^{1/4} / Gamma(3/4)
  const double theta = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
  CHECK(std::abs(s.value - theta) < 1e-13);
  CHECK(s.tail_bound <= 1e-12);
}

TEST_CASE("realized dual pairs have reciprocal densities") {
  for (const auto& pair : {tito(), gauss_pair(3, 1, 2), gauss_pair(5, 2, 2)}) {
    const auto [p, q] = realize(pair);
    CHECK(p.density() * q.density() == doctest::Approx(1));
    CHECK(p.size() == pair.s().size());
    CHECK(q.size() == pair.t().size());
  }
}

TEST_CASE("D_n^+ and P6") {
  for (int n : {3, 4, 5, 6}) {
    const auto p = dn_plus(n, 1);
    CHECK(p.size() == 2);
    CHECK(p.density() == doctest::Approx(1));
    CHECK(p.translates()[1].isApproxToConstant(0.5));
    const double alpha = 1.7;
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    d(n - 1) = alpha;
    const auto scaled = apply_linear(p, d.asDiagonal().toDenseMatrix());
    const auto direct = dn_plus(n, alpha);
    CHECK((scaled.lattice().basis() - direct.lattice().basis()).norm() < 1e-12);
    CHECK((scaled.translates()[1] - direct.translates()[1]).norm() < 1e-12);
    CHECK(direct.density() == doctest::Approx(1 / alpha));
  }
  CHECK(is_lattice(dn_plus(4, 1)));
  CHECK(as_lattice(dn_plus(4, 1)).covolume() == doctest::Approx(1));
  CHECK_FALSE(is_lattice(dn_plus(5, 1)));
  CHECK_THROWS_AS(as_lattice(dn_plus(5, 1)), std::invalid_argument);
  CHECK_THROWS_AS(dn_plus(2, 1), std::invalid_argument);

  const auto q = p6(1);
  CHECK(q.size() == 4);
  CHECK(q.dimension() == 6);
  CHECK(q.density() == doctest::Approx(1));
  CHECK_FALSE(is_lattice(q));
}

TEST_CASE("linear images scale the density") {
  std::mt19937_64 rng(4);
  const auto p = dn_plus(3, 1.3);
  const Eigen::MatrixXd phi = random_basis(3, rng);
  const auto image = apply_linear(p, phi);
  CHECK(image.density() == doctest::Approx(p.density() / std::abs(phi.determinant())));
  CHECK(dual_transform(p, phi).density() == doctest::Approx(p.density() * std::abs(phi.determinant())));
  CHECK_THROWS_AS(apply_linear(p, Eigen::MatrixXd::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("pair sums do not depend on the choice of sublattice") {
  for (const auto& p : {realize(tito()).first, realize(gauss_pair(3, 1, 1)).first, dn_plus(3, 1.2)}) {
    const auto fine = refine(p);
    for (const auto& f : standard_tests(p.dimension())) {
      const auto a = pair_sum(p, f);
      const auto b = pair_sum(fine, f);
      CHECK(std::abs(a.value - b.value) < 1e-12);
      const auto af = pair_sum_fourier(p, f);
      const auto bf = pair_sum_fourier(fine, f);
      CHECK(std::abs(p.density() * af.value - fine.density() * bf.value) < 1e-12);
    }
  }
}

TEST_CASE("Poisson summation on random lattices") {
  std::mt19937_64 rng(17);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      const Lattice l(random_basis(n, rng));
      const PeriodicConfiguration p(l, {Eigen::VectorXd::Zero(n)});
      const PeriodicConfiguration q(l.dual(), {Eigen::VectorXd::Zero(n)});
      const auto report = verify_duality_numeric(p, q, standard_tests(n), 1e-9);
      CHECK(report.passed);
      CHECK(report.max_residual < 1e-10);
    }
  }
}

TEST_CASE("group-level dual pairs become Euclidean duals") {
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t a = 1; a < p; ++a) {
      const auto [pp, qq] = realize(gauss_pair(p, a, 1));
      CHECK(verify_duality_numeric(pp, qq, standard_tests(2), 1e-8).passed);
    }
  }
  const auto [tp, tq] = realize(tito());
  const auto report = verify_duality_numeric(tp, tq, standard_tests(1), 1e-8);
  CHECK(report.passed);
  CHECK(report.results.size() == 6);
  for (const auto& r : report.results) CHECK(r.imaginary < 1e-12);
}

TEST_CASE("non-dual configurations fail the numeric check") {
  FiniteAbelianGroup g({8});
  const auto [p, q] = realize(SubsetConfig(g, std::vector<Index>{0, 1}), SubsetConfig(g, std::vector<Index>{0, 1, 2, 3}));
  const auto report = verify_duality_numeric(p, q, standard_tests(1), 1e-8);
  CHECK_FALSE(report.passed);
  CHECK(report.max_residual >= 1e-7);
}

TEST_CASE("truncation is certified") {
  const auto [p, q] = realize(gauss_pair(3, 1, 1));
  const GaussianTest f(0.5, Eigen::VectorXd::Zero(2));
  PairSumOptions tight;
  tight.radius = 0.5;
  CHECK_THROWS_AS(pair_sum(p, f, tight), std::invalid_argument);
  const auto loose = pair_sum(p, f, {1e-6, std::nullopt, 1});
  const auto exact = pair_sum(p, f, {1e-14, std::nullopt, 1});
  CHECK(loose.radius < exact.radius);
  CHECK(std::abs(loose.value - exact.value) <= loose.tail_bound + exact.tail_bound);
  CHECK_THROWS_AS(verify_duality_numeric(p, q, {}, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(verify_duality_numeric(p, q, standard_tests(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_duality_numeric(p, q, standard_tests(3), 1e-8), std::invalid_argument);
}

TEST_CASE("parallel pair sums are bit-identical to serial ones") {
  const auto p = dn_plus(4, 1.1);
  for (const auto& f : standard_tests(4)) {
    const auto serial = pair_sum(p, f, {1e-12, std::nullopt, 1});
    for (int jobs : {2, 3, 4}) {
      const auto par = pair_sum(p, f, {1e-12, std::nullopt, jobs});
      CHECK(par.value == serial.value);
      CHECK(par.terms == serial.terms);
    }
  }
}

TEST_CASE("group presentations") {
  const auto [p, q] = realize(tito());
  const auto pres = to_group_presentation(p);
  CHECK(pres.group.size() == 4);
  CHECK(pres.subset.size() == 2);
  // phi carries the residues back to the translates modulo the lattice.
  for (auto x : pres.subset.indices()) {
    const auto r = pres.group.residues_of(x);
    Eigen::VectorXd c(static_cast<Eigen::Index>(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) c(static_cast<Eigen::Index>(i)) = static_cast<double>(r[i]);
    const Eigen::VectorXd v = pres.map * c + p.translates().front();
    bool found = false;
    for (const auto& t : p.translates()) found = found || p.lattice().contains(v - t);
    CHECK(found);
  }
  const auto d5 = to_group_presentation(dn_plus(5, 1));
  CHECK(d5.group.size() == 4);
  CHECK(d5.subset.size() == 2);
  const PeriodicConfiguration irrational(Lattice::integer(1), {vec({0}), vec({std::sqrt(2.0) - 1})});
  CHECK_THROWS_AS(to_group_presentation(irrational), std::invalid_argument);
}

TEST_CASE("formal duals of D_5^+ and P6") {
  for (double alpha : {1.0, 2.0}) {
    const auto p = dn_plus(5, alpha);
    const auto q = formal_dual_of(p);
    REQUIRE(q);
    CHECK(p.density() * q->density() == doctest::Approx(1));
    CHECK(verify_duality_numeric(p, *q, standard_tests(5), 1e-7, std::nullopt, 4).passed);
  }
  const auto p = p6(1.5);
  const auto q = formal_dual_of(p);
  REQUIRE(q);
  CHECK(verify_duality_numeric(p, *q, standard_tests(6), 1e-7, std::nullopt, 4).passed);
}
