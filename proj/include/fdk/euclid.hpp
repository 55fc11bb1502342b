#pragma once

// Periodic configurations in R^n, Gaussian pair sums, and the bridge from
// group-level dual pairs to Euclidean ones.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fdk/constructions.hpp"
#include "fdk/group.hpp"

namespace fdk {

class Lattice {
 public:
  // Columns of `basis` are the basis vectors. Throws if the basis is singular.
  explicit Lattice(Eigen::MatrixXd basis);
  static Lattice integer(int n);

  int dimension() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double covolume() const { return covolume_; }
  // Basis = inverse-transpose.
  Lattice dual() const;
  // Coordinates of v in the basis are all within tol of integers.
  bool contains(const Eigen::VectorXd& v, double tol = 1e-9) const;

 private:
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd inverse_;
  double covolume_ = 0;
};

// P = union over j of (lattice + v_j), translates pairwise distinct mod the lattice.
class PeriodicConfiguration {
 public:
  PeriodicConfiguration(Lattice lattice, std::vector<Eigen::VectorXd> translates);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Eigen::VectorXd>& translates() const { return translates_; }
  int dimension() const { return lattice_.dimension(); }
  std::int64_t size() const { return static_cast<std::int64_t>(translates_.size()); }
  double density() const { return static_cast<double>(translates_.size()) / lattice_.covolume(); }

 private:
  Lattice lattice_;
  std::vector<Eigen::VectorXd> translates_;
};

// f(x) = exp(-pi c |x - shift|^2), with closed-form transform
// f^(xi) = c^{-n/2} exp(-pi |xi|^2 / c) exp(-2 pi i <shift, xi>).
struct GaussianTest {
  double c = 1;
  Eigen::VectorXd shift;

  GaussianTest(double width, Eigen::VectorXd shift_vector);
  int dimension() const { return static_cast<int>(shift.size()); }
  double value(const Eigen::VectorXd& x) const;
  std::complex<double> fourier(const Eigen::VectorXd& xi) const;
};

// c in {1/2, 1, 2} crossed with shifts {0, 0.3 e_1}.
std::vector<GaussianTest> standard_tests(int dimension);

struct PairSumOptions {
  double tolerance = 1e-12;       // bound on the neglected tail
  std::optional<double> radius;   // fixed truncation radius; otherwise chosen from the tolerance
  int jobs = 1;
};

struct PairSum {
  std::complex<double> value;
  double radius = 0;
  double tail_bound = 0;  // certified bound on |exact - value|
  std::uint64_t terms = 0;
};

// Sigma_f(P) = (1/N) sum_{j,k} sum_{x in Lambda} f(x + v_j - v_k).
// Throws std::invalid_argument if a fixed radius cannot meet the tolerance.
PairSum pair_sum(const PeriodicConfiguration& p, const GaussianTest& f, const PairSumOptions& options = {});
// Sigma_{f^}(Q).
PairSum pair_sum_fourier(const PeriodicConfiguration& q, const GaussianTest& f, const PairSumOptions& options = {});

struct TestResidual {
  GaussianTest test;
  std::complex<double> lhs{};  // Sigma_f(P)
  std::complex<double> rhs{};  // delta(P) Sigma_{f^}(Q)
  double residual = 0;
  double imaginary = 0;      // |Im Sigma_{f^}(Q)|
  double tail_bound = 0;
  bool passed = false;
};

struct NumericReport {
  double tolerance = 0;
  std::vector<TestResidual> results;
  double max_residual = 0;
  bool passed = false;
};

// Throws std::invalid_argument on empty tests, tol <= 0 or dimension mismatch.
// Tails are truncated to `tail` (default tol / 100) on each side.
NumericReport verify_duality_numeric(const PeriodicConfiguration& p, const PeriodicConfiguration& q,
                                     const std::vector<GaussianTest>& tests, double tol,
                                     std::optional<double> tail = std::nullopt, int jobs = 1);

// Lambda = diag(n_j) Z^k with integer translates, Gamma = Z^k with translates w_j / n_j.
std::pair<PeriodicConfiguration, PeriodicConfiguration> realize(const DualPair& pair);
// Same construction without requiring duality (negative controls).
std::pair<PeriodicConfiguration, PeriodicConfiguration> realize(const SubsetConfig& s, const SubsetConfig& t);

// D_n together with D_n + (1/2, ..., 1/2), last coordinate scaled by alpha.
PeriodicConfiguration dn_plus(int n, double alpha);
// D_3 + D_3 with translates 0, v_1, v_2, v_1 + v_2; first block scaled by alpha, second by 1/alpha.
PeriodicConfiguration p6(double alpha);

// phi(P). Throws on singular phi.
PeriodicConfiguration apply_linear(const PeriodicConfiguration& p, const Eigen::MatrixXd& phi);
// (phi^t)^{-1}(Q).
PeriodicConfiguration dual_transform(const PeriodicConfiguration& q, const Eigen::MatrixXd& phi);

// P - v_0 = phi(realization of S), where S lives in G = L / Lambda and L is the
// lattice generated by Lambda and the differences of the translates.
struct GroupPresentation {
  FiniteAbelianGroup group;
  SubsetConfig subset;
  Eigen::MatrixXd map;  // phi, sending Z^k onto L and diag(n_j) Z^k onto Lambda
};

// Throws std::invalid_argument when the translates are not rational relative to the lattice.
GroupPresentation to_group_presentation(const PeriodicConfiguration& p);
// The translates form a group modulo the lattice.
bool is_lattice(const PeriodicConfiguration& p);
// The single lattice equal to P as a point set. Throws unless is_lattice(p).
Lattice as_lattice(const PeriodicConfiguration& p);

// A formal dual obtained from a dual of the group presentation, or nullopt if the
// presentation has none.
std::optional<PeriodicConfiguration> formal_dual_of(const PeriodicConfiguration& p);

}  // namespace fdk
