#ifndef PCROT_RATIONAL_HPP
#define PCROT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "pcrot/errors.hpp"

namespace pcrot {

/// Exact rational scalar. Canonical form (den > 0, gcd(num, den) = 1) is
/// maintained by GMP after every operation; equality and order are exact.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q", integer, or plain decimal strings ("0.8" -> 4/5).
  static Rational parse(const std::string& s);

  static Rational pow2(long e);  ///< 2^e, e may be negative

  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Component of the exact floor; throws if it does not fit a long long.
  long long floor_ll() const;
  mpz_class floor_z() const;
  Rational frac() const;  ///< x - floor(x), in [0,1)

  /// Total bit size of numerator plus denominator (exact-orbit growth cap).
  std::size_t bit_size() const;

  double to_double() const { return v_.get_d(); }

  /// Canonical "p" or "p/q" string.
  std::string str() const;

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& x) { return x.abs(); }

}  // namespace pcrot

#endif
