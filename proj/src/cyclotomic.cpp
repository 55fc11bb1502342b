#include "fdk/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>

namespace fdk {

namespace {

void require_level(std::int64_t level) {
  if (level < 1) throw std::invalid_argument("cyclotomic level must be >= 1");
}

void require_same_level(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  if (a.level() != b.level()) {
    throw std::invalid_argument("cyclotomic level mismatch: " + std::to_string(a.level()) + " vs " +
                                std::to_string(b.level()));
  }
}

struct PolyEntry {
  std::vector<mpz_class> big;
  std::optional<std::vector<std::int64_t>> small;  // present when every coefficient fits
};

std::shared_mutex g_cache_mutex;
std::map<std::int64_t, std::unique_ptr<PolyEntry>> g_cache;

std::vector<mpz_class> compute_cyclotomic(std::int64_t level) {
  // num = x^L - 1
  std::vector<mpz_class> num(static_cast<std::size_t>(level + 1), 0);
  num[0] = -1;
  num[static_cast<std::size_t>(level)] = 1;
  for (std::int64_t d = 1; d < level; ++d) {
    if (level % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    // Exact division by a monic polynomial.
    const std::size_t dn = den.size() - 1;
    std::vector<mpz_class> quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      const mpz_class c = num[i];
      quot[i - dn] = c;
      if (c == 0) continue;
      for (std::size_t t = 0; t <= dn; ++t) num[i - dn + t] -= c * den[t];
    }
    for (std::size_t i = 0; i < dn; ++i) {
      if (num[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
    }
    num = std::move(quot);
  }
  return num;
}

const PolyEntry& cyclotomic_entry(std::int64_t level) {
  require_level(level);
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find(level);
    if (it != g_cache.end()) return *it->second;
  }
  auto entry = std::make_unique<PolyEntry>();
  entry->big = compute_cyclotomic(level);
  std::vector<std::int64_t> small;
  bool fits = true;
  for (const auto& c : entry->big) {
    if (!c.fits_slong_p()) {
      fits = false;
      break;
    }
    small.push_back(c.get_si());
  }
  if (fits) entry->small = std::move(small);
  std::unique_lock lock(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(level, std::move(entry));
  return *it->second;
}

// In-place reduction of a degree < L polynomial modulo the monic Phi_L.
void reduce_big(std::vector<mpz_class>& a, const std::vector<mpz_class>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    if (a[i] == 0) continue;
    const mpz_class c = a[i];
    for (std::size_t t = 0; t <= deg; ++t) a[i - deg + t] -= c * phi[t];
  }
  a.resize(deg);
}

bool reduce_small(std::vector<std::int64_t>& a, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    const auto c = a[i];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= deg; ++t) {
      std::int64_t prod;
      if (__builtin_mul_overflow(c, phi[t], &prod)) return false;
      if (__builtin_sub_overflow(a[i - deg + t], prod, &a[i - deg + t])) return false;
    }
  }
  a.resize(deg);
  return true;
}

std::optional<mpz_class> constant_of(const std::vector<mpz_class>& rem) {
  for (std::size_t i = 1; i < rem.size(); ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return rem.empty() ? mpz_class(0) : rem[0];
}

}  // namespace

RationalNumber::RationalNumber(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

RationalNumber::RationalNumber(mpz_class num, mpz_class den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

RationalNumber RationalNumber::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return RationalNumber(mpz_class(text), mpz_class(1));
    return RationalNumber(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

std::string RationalNumber::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<mpz_class>& cyclotomic_polynomial(std::int64_t level) { return cyclotomic_entry(level).big; }

CyclotomicInteger::CyclotomicInteger(std::int64_t level) : level_(level) {
  require_level(level);
  coeffs_.assign(static_cast<std::size_t>(level), 0);
}

CyclotomicInteger::CyclotomicInteger(std::int64_t level, std::vector<mpz_class> coeffs) : CyclotomicInteger(level) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i % static_cast<std::size_t>(level)] += coeffs[i];
}

CyclotomicInteger CyclotomicInteger::from_counts(std::int64_t level, std::span<const std::int64_t> counts) {
  CyclotomicInteger out(level);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.coeffs_[i % static_cast<std::size_t>(level)] += static_cast<long>(counts[i]);
  }
  return out;
}

CyclotomicInteger CyclotomicInteger::integer(std::int64_t level, const mpz_class& value) {
  CyclotomicInteger out(level);
  out.coeffs_[0] = value;
  return out;
}

CyclotomicInteger CyclotomicInteger::root_of_unity(std::int64_t level, std::int64_t k) {
  CyclotomicInteger out(level);
  out.coeffs_[static_cast<std::size_t>(((k % level) + level) % level)] = 1;
  return out;
}

CyclotomicInteger CyclotomicInteger::conj() const {
  CyclotomicInteger out(level_);
  const auto L = static_cast<std::size_t>(level_);
  for (std::size_t k = 0; k < L; ++k) out.coeffs_[(L - k) % L] = coeffs_[k];
  return out;
}

CyclotomicInteger CyclotomicInteger::operator-() const {
  CyclotomicInteger out(level_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = -coeffs_[k];
  return out;
}

CyclotomicInteger operator+(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  require_same_level(a, b);
  CyclotomicInteger out(a.level_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
  return out;
}

CyclotomicInteger operator-(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  require_same_level(a, b);
  CyclotomicInteger out(a.level_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
  return out;
}

CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  require_same_level(a, b);
  const auto L = static_cast<std::size_t>(a.level_);
  CyclotomicInteger out(a.level_);
  for (std::size_t i = 0; i < L; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < L; ++j) {
      if (b.coeffs_[j] == 0) continue;
      out.coeffs_[(i + j) % L] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

std::vector<mpz_class> CyclotomicInteger::reduced() const {
  auto a = coeffs_;
  reduce_big(a, cyclotomic_polynomial(level_));
  return a;
}

std::optional<mpz_class> CyclotomicInteger::rational_value() const { return constant_of(reduced()); }

bool CyclotomicInteger::is_zero() const {
  for (const auto& c : reduced()) {
    if (c != 0) return false;
  }
  return true;
}

std::complex<double> CyclotomicInteger::evaluate() const {
  std::complex<double> sum = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(level_);
    sum += coeffs_[k].get_d() * std::polar(1.0, angle);
  }
  return sum;
}

bool is_equal_rational(const CyclotomicInteger& a, const RationalNumber& q) {
  // a is an algebraic integer; a non-integral rational can never equal it.
  if (!q.is_integer()) return false;
  auto diff = a.coeffs();
  diff[0] -= q.numerator();
  reduce_big(diff, cyclotomic_polynomial(a.level()));
  for (const auto& c : diff) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<mpz_class> rational_value_of_counts(std::int64_t level, std::span<const std::int64_t> counts) {
  const auto& entry = cyclotomic_entry(level);
  if (entry.small) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(level), 0);
    bool ok = true;
    for (std::size_t i = 0; i < counts.size() && ok; ++i) {
      ok = !__builtin_add_overflow(a[i % a.size()], counts[i], &a[i % a.size()]);
    }
    if (ok && reduce_small(a, *entry.small)) {
      for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i] != 0) return std::nullopt;
      }
      return mpz_class(static_cast<long>(a.empty() ? 0 : a[0]));
    }
  }
  return CyclotomicInteger::from_counts(level, counts).rational_value();
}

}  // namespace fdk
