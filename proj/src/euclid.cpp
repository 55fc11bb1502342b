#include "fdk/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fdk/errors.hpp"
#include "fdk/lattice_kernels.hpp"
#include "fdk/parallel.hpp"
#include "fdk/search.hpp"

namespace fdk {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kIntegerTol = 1e-8;
constexpr std::int64_t kMaxDenominator = 100000;

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

void check_dimension(const Eigen::MatrixXd& phi, int n) {
  if (phi.rows() != n || phi.cols() != n) throw std::invalid_argument("linear map has the wrong shape");
}

double ball_volume(int n) { return std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1); }

// Bound on the sum of |term| over the points of one coset outside the ball of
// the given radius. The shell [R+s, R+s+1) holds at most
// vol(B(R+s+1+diam)) / covol points, diam bounding the fundamental cell.
double coset_tail(const Lattice& lattice, double width, double prefactor, double radius) {
  const int n = lattice.dimension();
  double diam = 0;
  for (int i = 0; i < n; ++i) diam += lattice.basis().col(i).norm();
  const double vn = ball_volume(n);
  double total = 0;
  for (int s = 0;; ++s) {
    const double r = radius + s;
    const double expo = pi * width * r * r;
    if (expo > 745) break;
    total += vn * std::pow(r + 1 + diam, n) / lattice.covolume() * std::exp(-expo);
  }
  return prefactor * total;
}

PairSum gaussian_pair_sum(const PeriodicConfiguration& p, const kernels::GaussianTerm& term,
                          const PairSumOptions& options) {
  if (options.tolerance <= 0) throw std::invalid_argument("pair sum tolerance must be positive");
  const auto n_translates = static_cast<double>(p.size());
  // (1/N) * N^2 coset pairs, each with the same tail bound.
  auto bound = [&](double r) { return n_translates * coset_tail(p.lattice(), term.width, term.prefactor, r); };
  PairSum out;
  if (options.radius) {
    if (*options.radius <= 0) throw std::invalid_argument("truncation radius must be positive");
    out.radius = *options.radius;
    out.tail_bound = bound(out.radius);
    if (out.tail_bound > options.tolerance) {
      throw std::invalid_argument("truncation radius " + std::to_string(out.radius) + " leaves a tail bound of " +
                                  std::to_string(out.tail_bound) + ", above the tolerance");
    }
  } else {
    out.radius = 0.5;
    while ((out.tail_bound = bound(out.radius)) > options.tolerance) out.radius += 0.25;
  }
  const int jobs = resolve_jobs(options.jobs);
  const auto& l = p.lattice();
  const auto sums = jobs == 1 ? kernels::coset_pair_sums_serial(l.basis(), l.inverse(), p.translates(), term, out.radius)
                              : kernels::coset_pair_sums_omp(l.basis(), l.inverse(), p.translates(), term, out.radius, jobs);
  out.value = kernels::pairwise_total(sums) / n_translates;
  for (const auto& s : sums) out.terms += s.terms;
  return out;
}

// ---- exact integer linear algebra for group presentations ------------------

using IntMatrix = std::vector<std::vector<std::int64_t>>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in lattice reduction");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw CapacityError("integer overflow in lattice reduction");
  return r;
}

// col_a -= q * col_b
void column_axpy(IntMatrix& m, std::size_t a, std::size_t b, std::int64_t q) {
  for (auto& row : m) row[a] = checked_sub(row[a], checked_mul(q, row[b]));
}

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// Lower-triangular basis (first n columns) of the column lattice of a full-rank n x m matrix.
IntMatrix column_hermite(IntMatrix m) {
  const auto n = m.size();
  const auto cols = m.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < cols; ++k) {
      while (m[i][k] != 0) {
        column_axpy(m, i, k, m[i][i] / m[i][k]);
        swap_columns(m, i, k);
      }
    }
    if (m[i][i] == 0) throw std::logic_error("lattice reduction: rank deficient");
    if (m[i][i] < 0) {
      for (auto& row : m) row[i] = -row[i];
    }
  }
  IntMatrix w(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r) std::copy_n(m[r].begin(), n, w[r].begin());
  return w;
}

// X with W X = d I for lower-triangular W; exact.
IntMatrix scaled_inverse(const IntMatrix& w, std::int64_t d) {
  const auto n = w.size();
  IntMatrix x(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      std::int64_t acc = r == c ? d : 0;
      for (std::size_t k = 0; k < r; ++k) acc = checked_sub(acc, checked_mul(w[r][k], x[k][c]));
      if (acc % w[r][r] != 0) throw std::logic_error("lattice reduction: inexact inverse");
      x[r][c] = acc / w[r][r];
    }
  }
  return x;
}

// Diagonalizes a nonsingular integer matrix by unimodular row and column
// operations, U A V = diag. Returns the diagonal and U^{-1}.
std::pair<std::vector<std::int64_t>, IntMatrix> diagonalize(IntMatrix a) {
  const auto n = a.size();
  IntMatrix uinv(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) uinv[i][i] = 1;

  auto row_axpy = [&](std::size_t i, std::size_t j, std::int64_t q) {  // row_i -= q row_j
    for (std::size_t c = 0; c < n; ++c) a[i][c] = checked_sub(a[i][c], checked_mul(q, a[j][c]));
    for (std::size_t r = 0; r < n; ++r) uinv[r][j] = uinv[r][j] + checked_mul(q, uinv[r][i]);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    swap_columns(uinv, i, j);
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r) {
        for (std::size_t c = t; c < n; ++c) {
          if (a[r][c] != 0 && (pr == n || std::abs(a[r][c]) < std::abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == n) throw std::logic_error("lattice reduction: singular matrix");
      if (pr != t) row_swap(t, pr);
      if (pc != t) swap_columns(a, t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        if (a[r][t] != 0) {
          row_axpy(r, t, a[r][t] / a[t][t]);
          clean = clean && a[r][t] == 0;
        }
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (a[t][c] != 0) {
          column_axpy(a, c, t, a[t][c] / a[t][t]);
          clean = clean && a[t][c] == 0;
        }
      }
      if (clean) break;
    }
    if (a[t][t] < 0) {
      for (auto& v : a[t]) v = -v;
      for (auto& row : uinv) row[t] = -row[t];
    }
  }
  std::vector<std::int64_t> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i][i];
  return {diag, uinv};
}

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.front().size()));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(m[r][c]);
  }
  return out;
}

// Lattice L generated by Lambda and the translate differences: returns W and D
// with L = B W / D Z^n.
std::pair<IntMatrix, std::int64_t> generated_lattice(const PeriodicConfiguration& p) {
  const auto n = static_cast<std::size_t>(p.dimension());
  std::vector<Eigen::VectorXd> coords;
  for (std::size_t j = 1; j < p.translates().size(); ++j) {
    coords.push_back(p.lattice().inverse() * (p.translates()[j] - p.translates()[0]));
  }
  std::int64_t d = 1;
  for (;; ++d) {
    if (d > kMaxDenominator) {
      throw std::invalid_argument("translates are not rational (denominator <= " + std::to_string(kMaxDenominator) +
                                  ") relative to the lattice");
    }
    bool ok = true;
    for (const auto& c : coords) {
      for (Eigen::Index i = 0; i < c.size() && ok; ++i) ok = near_integer(c(i) * static_cast<double>(d), kIntegerTol);
    }
    if (ok) break;
  }
  IntMatrix gens(n, std::vector<std::int64_t>(n + coords.size(), 0));
  for (std::size_t i = 0; i < n; ++i) gens[i][i] = d;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      gens[i][n + j] = std::llround(coords[j](static_cast<Eigen::Index>(i)) * static_cast<double>(d));
    }
  }
  return {column_hermite(std::move(gens)), d};
}

}  // namespace

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols()) throw std::invalid_argument("lattice basis must be square");
  const double det = basis_.determinant();
  const double scale = basis_.colwise().norm().prod();
  if (!(std::abs(det) > 1e-12 * std::max(scale, 1e-300))) throw std::invalid_argument("lattice basis is singular");
  covolume_ = std::abs(det);
  inverse_ = basis_.inverse();
}

Lattice Lattice::integer(int n) { return Lattice(Eigen::MatrixXd::Identity(n, n)); }

Lattice Lattice::dual() const { return Lattice(inverse_.transpose()); }

bool Lattice::contains(const Eigen::VectorXd& v, double tol) const {
  const Eigen::VectorXd c = inverse_ * v;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!near_integer(c(i), tol)) return false;
  }
  return true;
}

PeriodicConfiguration::PeriodicConfiguration(Lattice lattice, std::vector<Eigen::VectorXd> translates)
    : lattice_(std::move(lattice)), translates_(std::move(translates)) {
  if (translates_.empty()) throw std::invalid_argument("periodic configuration needs at least one translate");
  for (const auto& v : translates_) {
    if (v.size() != lattice_.dimension()) throw std::invalid_argument("translate has the wrong dimension");
  }
  for (std::size_t j = 0; j < translates_.size(); ++j) {
    for (std::size_t k = j + 1; k < translates_.size(); ++k) {
      if (lattice_.contains(translates_[j] - translates_[k])) {
        throw std::invalid_argument("translates " + std::to_string(j) + " and " + std::to_string(k) +
                                    " coincide modulo the lattice");
      }
    }
  }
}

GaussianTest::GaussianTest(double width, Eigen::VectorXd shift_vector) : c(width), shift(std::move(shift_vector)) {
  if (!(c > 0)) throw std::invalid_argument("Gaussian width must be positive");
}

double GaussianTest::value(const Eigen::VectorXd& x) const { return std::exp(-pi * c * (x - shift).squaredNorm()); }

std::complex<double> GaussianTest::fourier(const Eigen::VectorXd& xi) const {
  const double mag = std::pow(c, -dimension() / 2.0) * std::exp(-pi * xi.squaredNorm() / c);
  return std::polar(mag, -2 * pi * shift.dot(xi));
}

std::vector<GaussianTest> standard_tests(int dimension) {
  std::vector<GaussianTest> out;
  Eigen::VectorXd shifted = Eigen::VectorXd::Zero(dimension);
  shifted(0) = 0.3;
  for (double c : {0.5, 1.0, 2.0}) {
    out.emplace_back(c, Eigen::VectorXd::Zero(dimension));
    out.emplace_back(c, shifted);
  }
  return out;
}

PairSum pair_sum(const PeriodicConfiguration& p, const GaussianTest& f, const PairSumOptions& options) {
  if (f.dimension() != p.dimension()) throw std::invalid_argument("test function dimension mismatch");
  kernels::GaussianTerm term;
  term.center = f.shift;
  term.width = f.c;
  return gaussian_pair_sum(p, term, options);
}

PairSum pair_sum_fourier(const PeriodicConfiguration& q, const GaussianTest& f, const PairSumOptions& options) {
  if (f.dimension() != q.dimension()) throw std::invalid_argument("test function dimension mismatch");
  kernels::GaussianTerm term;
  term.center = Eigen::VectorXd::Zero(q.dimension());
  term.width = 1 / f.c;
  term.phase = f.shift;
  term.prefactor = std::pow(f.c, -q.dimension() / 2.0);
  return gaussian_pair_sum(q, term, options);
}

NumericReport verify_duality_numeric(const PeriodicConfiguration& p, const PeriodicConfiguration& q,
                                     const std::vector<GaussianTest>& tests, double tol, std::optional<double> tail,
                                     int jobs) {
  if (tests.empty()) throw std::invalid_argument("verify_duality_numeric: no test functions");
  if (!(tol > 0)) throw std::invalid_argument("verify_duality_numeric: tolerance must be positive");
  if (p.dimension() != q.dimension()) throw std::invalid_argument("verify_duality_numeric: dimension mismatch");
  PairSumOptions opts;
  opts.tolerance = tail.value_or(tol / 100);
  opts.jobs = jobs;
  NumericReport report;
  report.tolerance = tol;
  report.passed = true;
  for (const auto& f : tests) {
    const auto lhs = pair_sum(p, f, opts);
    const auto rhs = pair_sum_fourier(q, f, opts);
    TestResidual r{f};
    r.lhs = lhs.value;
    r.rhs = p.density() * rhs.value;
    r.residual = std::abs(r.lhs - r.rhs);
    r.imaginary = std::abs(rhs.value.imag());
    r.tail_bound = lhs.tail_bound + p.density() * rhs.tail_bound;
    r.passed = r.residual <= tol && r.imaginary <= tol;
    report.passed = report.passed && r.passed;
    report.max_residual = std::max(report.max_residual, r.residual);
    report.results.push_back(std::move(r));
  }
  return report;
}

std::pair<PeriodicConfiguration, PeriodicConfiguration> realize(const DualPair& pair) {
  return realize(pair.s(), pair.t());
}

std::pair<PeriodicConfiguration, PeriodicConfiguration> realize(const SubsetConfig& s, const SubsetConfig& t) {
  const auto& g = s.group();
  if (!(t.group() == g)) throw std::invalid_argument("realize: S and T live in different groups");
  const auto k = static_cast<int>(g.rank());
  Eigen::VectorXd orders(k);
  for (int j = 0; j < k; ++j) orders(j) = static_cast<double>(g.order(static_cast<std::size_t>(j)));

  std::vector<Eigen::VectorXd> ps, qs;
  for (auto x : s.indices()) {
    const auto r = g.residues_of(x);
    Eigen::VectorXd v(k);
    for (int j = 0; j < k; ++j) v(j) = static_cast<double>(r[static_cast<std::size_t>(j)]);
    ps.push_back(std::move(v));
  }
  for (auto y : t.indices()) {
    const auto r = g.residues_of(y);
    Eigen::VectorXd w(k);
    for (int j = 0; j < k; ++j) w(j) = static_cast<double>(r[static_cast<std::size_t>(j)]) / orders(j);
    qs.push_back(std::move(w));
  }
  return {PeriodicConfiguration(Lattice(orders.asDiagonal().toDenseMatrix()), std::move(ps)),
          PeriodicConfiguration(Lattice::integer(k), std::move(qs))};
}

PeriodicConfiguration dn_plus(int n, double alpha) {
  if (n < 3) throw std::invalid_argument("dn_plus: n must be at least 3");
  if (!(alpha > 0)) throw std::invalid_argument("dn_plus: alpha must be positive");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    b(i, i) = 1;
    b(i + 1, i) = -1;
  }
  b(n - 2, n - 1) = 1;
  b(n - 1, n - 1) = 1;
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  scale(n - 1) = alpha;
  const Eigen::MatrixXd s = scale.asDiagonal();
  const Eigen::VectorXd halves = Eigen::VectorXd::Constant(n, 0.5);
  return {Lattice(s * b), {Eigen::VectorXd::Zero(n), s * halves}};
}

PeriodicConfiguration p6(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("p6: alpha must be positive");
  Eigen::Matrix3d d3;
  d3 << 1, 0, 1,  //
      -1, 1, 1,   //
      0, -1, 0;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 6);
  b.topLeftCorner(3, 3) = d3;
  b.bottomRightCorner(3, 3) = d3;
  Eigen::VectorXd scale(6);
  scale << alpha, alpha, alpha, 1 / alpha, 1 / alpha, 1 / alpha;
  const Eigen::MatrixXd s = scale.asDiagonal();
  Eigen::VectorXd v1(6), v2(6);
  v1 << -0.5, -0.5, -0.5, 1, 1, 1;
  v2 << 1, 1, 1, -0.5, -0.5, -0.5;
  return {Lattice(s * b), {Eigen::VectorXd::Zero(6), s * v1, s * v2, s * (v1 + v2)}};
}

PeriodicConfiguration apply_linear(const PeriodicConfiguration& p, const Eigen::MatrixXd& phi) {
  check_dimension(phi, p.dimension());
  Lattice l(phi * p.lattice().basis());  // throws if phi is singular
  std::vector<Eigen::VectorXd> vs;
  for (const auto& v : p.translates()) vs.push_back(phi * v);
  return {std::move(l), std::move(vs)};
}

PeriodicConfiguration dual_transform(const PeriodicConfiguration& q, const Eigen::MatrixXd& phi) {
  check_dimension(phi, q.dimension());
  const Lattice probe(phi);  // singularity check
  return apply_linear(q, probe.inverse().transpose());
}

GroupPresentation to_group_presentation(const PeriodicConfiguration& p) {
  const auto [w, d] = generated_lattice(p);
  const auto a = scaled_inverse(w, d);
  const auto [orders, uinv] = diagonalize(a);
  const Eigen::MatrixXd phi = p.lattice().basis() * to_double(w) / static_cast<double>(d) * to_double(uinv);
  const Eigen::MatrixXd phi_inv = phi.inverse();

  FiniteAbelianGroup g(orders);
  std::vector<GroupElement> pts;
  for (const auto& v : p.translates()) {
    const Eigen::VectorXd c = phi_inv * (v - p.translates().front());
    std::vector<std::int64_t> r(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const double x = c(static_cast<Eigen::Index>(i));
      if (!near_integer(x, 1e-6)) throw std::logic_error("group presentation: translate off the generated lattice");
      r[i] = ((std::llround(x) % orders[i]) + orders[i]) % orders[i];
    }
    pts.emplace_back(g, std::move(r));
  }
  return {g, SubsetConfig(g, pts), phi};
}

bool is_lattice(const PeriodicConfiguration& p) {
  const auto pres = to_group_presentation(p);
  return pres.subset.size() == pres.group.size();
}

Lattice as_lattice(const PeriodicConfiguration& p) {
  if (!is_lattice(p)) throw std::invalid_argument("configuration is not a lattice");
  if (!p.lattice().contains(p.translates().front())) {
    throw std::invalid_argument("configuration is a translated lattice, not a lattice");
  }
  const auto [w, d] = generated_lattice(p);
  return Lattice(p.lattice().basis() * to_double(w) / static_cast<double>(d));
}

std::optional<PeriodicConfiguration> formal_dual_of(const PeriodicConfiguration& p) {
  const auto pres = to_group_presentation(p);
  const auto& g = pres.group;
  if (g.size() % pres.subset.size() != 0) return std::nullopt;
  const auto t = search_dual_for(pres.subset, g.size() / pres.subset.size());
  if (!t) return std::nullopt;
  const DualPair pair(pres.subset, *t, {"custom", {}});
  return dual_transform(realize(pair).second, pres.map);
}

}  // namespace fdk
