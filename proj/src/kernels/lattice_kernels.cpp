#include <omp.h>

#include <cmath>
#include <numbers>

#include "fdk/lattice_kernels.hpp"

namespace fdk::kernels {

CosetSum coset_sum(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse, const Eigen::VectorXd& offset,
                   const GaussianTerm& term, double radius) {
  const auto n = static_cast<int>(basis.rows());
  const Eigen::VectorXd z = inverse * (term.center - offset);
  std::vector<std::int64_t> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double spread = radius * inverse.row(i).norm();
    lo[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(z(i) - spread));
    hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(z(i) + spread));
    if (lo[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)]) return {};
  }
  const bool has_phase = term.phase.size() == n;
  const double r2 = radius * radius;
  constexpr double pi = std::numbers::pi;

  // d = basis * m + offset - center, updated incrementally as the odometer advances.
  std::vector<std::int64_t> m(lo);
  Eigen::VectorXd d = offset - term.center;
  for (int i = 0; i < n; ++i) d += basis.col(i) * static_cast<double>(m[static_cast<std::size_t>(i)]);

  CosetSum out;
  double re = 0, im = 0;
  while (true) {
    const double dist2 = d.squaredNorm();
    if (dist2 <= r2) {
      const double g = term.prefactor * std::exp(-pi * term.width * dist2);
      if (has_phase) {
        const double angle = -2 * pi * term.phase.dot(d + term.center);
        re += g * std::cos(angle);
        im += g * std::sin(angle);
      } else {
        re += g;
      }
      ++out.terms;
    }
    int i = n - 1;
    for (; i >= 0; --i) {
      auto& mi = m[static_cast<std::size_t>(i)];
      if (mi < hi[static_cast<std::size_t>(i)]) {
        ++mi;
        d += basis.col(i);
        break;
      }
      d -= basis.col(i) * static_cast<double>(mi - lo[static_cast<std::size_t>(i)]);
      mi = lo[static_cast<std::size_t>(i)];
    }
    if (i < 0) break;
  }
  out.value = {re, im};
  return out;
}

std::vector<CosetSum> coset_pair_sums_serial(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse,
                                             const std::vector<Eigen::VectorXd>& translates,
                                             const GaussianTerm& term, double radius) {
  const auto n = translates.size();
  std::vector<CosetSum> out(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      out[j * n + k] = coset_sum(basis, inverse, translates[j] - translates[k], term, radius);
    }
  }
  return out;
}

std::vector<CosetSum> coset_pair_sums_omp(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse,
                                          const std::vector<Eigen::VectorXd>& translates, const GaussianTerm& term,
                                          double radius, int jobs) {
  const auto n = static_cast<std::int64_t>(translates.size());
  std::vector<CosetSum> out(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::int64_t p = 0; p < n * n; ++p) {
    const auto j = static_cast<std::size_t>(p / n);
    const auto k = static_cast<std::size_t>(p % n);
    out[static_cast<std::size_t>(p)] = coset_sum(basis, inverse, translates[j] - translates[k], term, radius);
  }
  return out;
}

namespace {

std::complex<double> pairwise(const std::vector<CosetSum>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo].value;
  const auto mid = lo + (hi - lo) / 2;
  return pairwise(v, lo, mid) + pairwise(v, mid, hi);
}

}  // namespace

std::complex<double> pairwise_total(const std::vector<CosetSum>& sums) {
  if (sums.empty()) return {};
  return pairwise(sums, 0, sums.size());
}

}  // namespace fdk::kernels
