#pragma once

// Exact arithmetic in the p-local integers Z_(p) and in Q.
//
// Elements are reduced fractions carrying the prime they are localized at.
// Membership in Z_(p) is a query, not an invariant: rational Chern data uses
// the same type.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiefel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_odd_prime(std::int64_t n) { return n != 2 && is_prime(n); }

inline void require_odd_prime(std::int64_t p) {
  if (!is_odd_prime(p))
    throw DomainError("p = " + std::to_string(p) + " is not an odd prime");
}

/// Odd primes in [lo, hi], ascending.
inline std::vector<std::int64_t> odd_primes_between(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = std::max<std::int64_t>(lo, 3); q <= hi; ++q)
    if (is_odd_prime(q)) out.push_back(q);
  return out;
}

/// p-adic valuation with a +infinity sentinel for zero, ordered above every
/// finite value.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::int64_t v) : value_(v) {}
  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  std::int64_t value() const {
    if (infinite_) throw DomainError("valuation of zero is infinite");
    return value_;
  }

  constexpr Valuation operator+(Valuation o) const {
    if (infinite_ || o.infinite_) return infinity();
    return Valuation(value_ + o.value_);
  }

  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Valuation& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

inline std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

/// v_p of an integer; +inf for zero.
inline Valuation valuation(const BigInt& a, std::int64_t p) {
  if (a == 0) return Valuation::infinity();
  BigInt q = abs(a);
  std::int64_t v = 0;
  const BigInt bp = p;
  while (q % bp == 0) {
    q /= bp;
    ++v;
  }
  return Valuation(v);
}

/// Strip every factor of p from a nonzero integer.
inline BigInt p_free_part(const BigInt& a, std::int64_t p) {
  BigInt q = a;
  const BigInt bp = p;
  if (q == 0) return q;
  while (q % bp == 0) q /= bp;
  return q;
}

inline BigInt ipow(const BigInt& base, std::int64_t e) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

/// An exact rational a/b in lowest terms, tagged with the odd prime p at
/// which it is localized.
class LocalScalar {
 public:
  LocalScalar() = default;
  LocalScalar(BigInt numerator, std::int64_t p) : LocalScalar(std::move(numerator), 1, p) {}
  LocalScalar(BigInt numerator, BigInt denominator, std::int64_t p)
      : num_(std::move(numerator)), den_(std::move(denominator)), p_(p) {
    if (den_ == 0) throw DomainError("zero denominator");
    normalize();
  }
  static LocalScalar from_rational(const Rational& q, std::int64_t p) {
    return LocalScalar(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q), p);
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  std::int64_t prime() const { return p_; }

  bool is_zero() const { return num_ == 0; }
  /// True iff the element lies in Z_(p), i.e. p does not divide the denominator.
  bool is_local() const { return den_ % p_ != 0; }
  /// True iff the element is a unit of Z_(p).
  bool is_unit() const { return num_ != 0 && num_ % p_ != 0 && den_ % p_ != 0; }

  Valuation valuation() const {
    if (num_ == 0) return Valuation::infinity();
    return Valuation(stiefel::valuation(num_, p_).value() - stiefel::valuation(den_, p_).value());
  }

  Rational to_rational() const { return Rational(num_, den_); }

  LocalScalar operator-() const { return LocalScalar(-num_, den_, p_, Reduced{}); }
  LocalScalar operator+(const LocalScalar& o) const {
    check(o);
    return LocalScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_, p_);
  }
  LocalScalar operator-(const LocalScalar& o) const { return *this + (-o); }
  LocalScalar operator*(const LocalScalar& o) const {
    check(o);
    return LocalScalar(num_ * o.num_, den_ * o.den_, p_);
  }
  LocalScalar operator/(const LocalScalar& o) const {
    check(o);
    if (o.num_ == 0) throw DomainError("division by zero");
    return LocalScalar(num_ * o.den_, den_ * o.num_, p_);
  }
  LocalScalar& operator+=(const LocalScalar& o) { return *this = *this + o; }
  LocalScalar& operator-=(const LocalScalar& o) { return *this = *this - o; }
  LocalScalar& operator*=(const LocalScalar& o) { return *this = *this * o; }

  bool operator==(const LocalScalar& o) const {
    return p_ == o.p_ && num_ == o.num_ && den_ == o.den_;
  }

  std::string to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

 private:
  struct Reduced {};
  LocalScalar(BigInt n, BigInt d, std::int64_t p, Reduced) : num_(std::move(n)), den_(std::move(d)), p_(p) {}

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    BigInt g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
  void check(const LocalScalar& o) const {
    if (p_ != o.p_) throw DomainError("scalars localized at different primes");
  }

  BigInt num_ = 0;
  BigInt den_ = 1;
  std::int64_t p_ = 3;
};

inline std::ostream& operator<<(std::ostream& os, const LocalScalar& s) { return os << s.to_string(); }

inline Valuation p_valuation(const LocalScalar& s) { return s.valuation(); }

/// Exact binomial coefficient C(n, j).
inline BigInt binomial(std::int64_t n, std::int64_t j) {
  if (n < 0 || j < 0 || j > n)
    throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(j) + ") requires 0 <= j <= n");
  j = std::min(j, n - j);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= j; ++i) {
    r *= n - j + i;
    r /= i;
  }
  return r;
}

/// Complete homogeneous symmetric sum h_j(l) = sum over multi-indices I >= 0
/// with |I| = j of l^I, read off the generating function prod 1/(1 - l_i t).
inline BigInt complete_symmetric_sum(std::span<const std::int64_t> l, std::int64_t j) {
  if (l.empty()) throw DomainError("complete_symmetric_sum needs a non-empty tuple");
  if (j < 0) throw DomainError("complete_symmetric_sum needs j >= 0");
  // h[d] after processing a prefix of l; multiplying by 1/(1 - a t) is the
  // running recurrence h[d] += a * h[d-1].
  std::vector<BigInt> h(static_cast<std::size_t>(j) + 1, BigInt(0));
  h[0] = 1;
  for (std::int64_t a : l)
    for (std::int64_t d = 1; d <= j; ++d) h[d] += a * h[d - 1];
  return h[static_cast<std::size_t>(j)];
}

/// v_p(m(r)) for Adams' denominator function: floor(r / (p - 1)).
inline std::int64_t adams_m_valuation(std::int64_t r, std::int64_t p) {
  require_odd_prime(p);
  if (r < 0) throw DomainError("adams_m_valuation needs r >= 0");
  return r / (p - 1);
}

/// Legendre's formula for v_p(i!).
inline std::int64_t factorial_valuation(std::int64_t i, std::int64_t p) {
  std::int64_t v = 0;
  for (std::int64_t q = p; q <= i; q *= p) v += i / q;
  return v;
}

inline BigInt factorial(std::int64_t i) {
  BigInt r = 1;
  for (std::int64_t t = 2; t <= i; ++t) r *= t;
  return r;
}

inline std::int64_t gcd_of(std::span<const std::int64_t> l) {
  std::int64_t g = 0;
  for (auto a : l) {
    std::int64_t x = a < 0 ? -a : a;
    while (x != 0) {
      std::int64_t t = g % x;
      g = x;
      x = t;
    }
  }
  return g;
}

}  // namespace stiefel
