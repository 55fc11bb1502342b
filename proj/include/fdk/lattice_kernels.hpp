#pragma once

// Gaussian sums over cosets of a lattice. Serial reference and an OpenMP
// variant that parallelizes over coset pairs; both return per-pair values in
// the same order, so a fixed reduction makes the total independent of the
// worker count.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace fdk::kernels {

// prefactor * exp(-pi * width * |x - center|^2) * exp(-2 pi i <phase, x>)
struct GaussianTerm {
  Eigen::VectorXd center;
  double width = 1;
  Eigen::VectorXd phase;  // empty for a real Gaussian
  double prefactor = 1;
};

struct CosetSum {
  std::complex<double> value;
  std::uint64_t terms = 0;
};

// Sum of the term over x in basis * Z^n + offset with |x - center| <= radius.
CosetSum coset_sum(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse, const Eigen::VectorXd& offset,
                   const GaussianTerm& term, double radius);

// Entry j * N + k is the coset sum over Lambda + v_j - v_k.
std::vector<CosetSum> coset_pair_sums_serial(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse,
                                             const std::vector<Eigen::VectorXd>& translates,
                                             const GaussianTerm& term, double radius);
std::vector<CosetSum> coset_pair_sums_omp(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& inverse,
                                          const std::vector<Eigen::VectorXd>& translates, const GaussianTerm& term,
                                          double radius, int jobs);

// Pairwise (recursive halving) sum of the values.
std::complex<double> pairwise_total(const std::vector<CosetSum>& sums);

}  // namespace fdk::kernels
