#pragma once

// Exact arithmetic in Z[zeta_L].
//
// Values are kept as length-L coefficient vectors in Z[x]/(x^L - 1); the map to
// Z[zeta_L] is not injective, so equality is decided only after reduction
// modulo the cyclotomic polynomial Phi_L.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fdk {

class RationalNumber {
 public:
  RationalNumber() = default;
  RationalNumber(std::int64_t num, std::int64_t den = 1);
  RationalNumber(mpz_class num, mpz_class den);
  static RationalNumber parse(const std::string& text);  // "p/q" or "p"

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_integer() const { return value_.get_den() == 1; }
  const mpq_class& value() const { return value_; }
  std::string to_string() const;  // always "p/q"

  friend bool operator==(const RationalNumber& a, const RationalNumber& b) { return a.value_ == b.value_; }

 private:
  explicit RationalNumber(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  mpq_class value_{0};
};

class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(std::int64_t level);  // zero
  // Coefficients are folded modulo the level, so any length is accepted.
  CyclotomicInteger(std::int64_t level, std::vector<mpz_class> coeffs);
  static CyclotomicInteger from_counts(std::int64_t level, std::span<const std::int64_t> counts);
  static CyclotomicInteger integer(std::int64_t level, const mpz_class& value);
  static CyclotomicInteger root_of_unity(std::int64_t level, std::int64_t k);

  std::int64_t level() const { return level_; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  CyclotomicInteger conj() const;
  CyclotomicInteger operator-() const;

  friend CyclotomicInteger operator+(const CyclotomicInteger& a, const CyclotomicInteger& b);
  friend CyclotomicInteger operator-(const CyclotomicInteger& a, const CyclotomicInteger& b);
  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b);

  // Remainder of sum c_k x^k modulo Phi_L; length phi(L), low degree first.
  std::vector<mpz_class> reduced() const;
  // The rational integer this value equals, if it is rational.
  std::optional<mpz_class> rational_value() const;
  bool is_zero() const;

  std::complex<double> evaluate() const;

 private:
  std::int64_t level_;
  std::vector<mpz_class> coeffs_;
};

// Phi_L, low degree first, by exact division of x^L - 1 by Phi_d for d | L, d < L.
// Results are memoized.
const std::vector<mpz_class>& cyclotomic_polynomial(std::int64_t level);

std::int64_t euler_phi(std::int64_t n);

// True iff a equals q in Q(zeta_L).
bool is_equal_rational(const CyclotomicInteger& a, const RationalNumber& q);

// Rational value of sum_k counts[k] zeta_L^k when it is rational. Runs in
// checked 64-bit arithmetic and falls back to GMP on overflow.
std::optional<mpz_class> rational_value_of_counts(std::int64_t level, std::span<const std::int64_t> counts);

}  // namespace fdk
