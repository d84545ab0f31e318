#include "pcrot/rational.hpp"

#include <cctype>

namespace pcrot {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw parse_error("Rational: zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  v_ = std::move(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw parse_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow2(long e) {
  mpq_class r;
  if (e >= 0) {
    mpz_class n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    r = mpq_class(n);
  } else {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r = mpq_class(1) / mpq_class(d);
  }
  return Rational(r);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    mpz_class n, d;
    if (n.set_str(ns, 10) != 0 || d.set_str(ds, 10) != 0)
      throw parse_error("bad rational string: " + s);
    if (d == 0) throw parse_error("zero denominator: " + s);
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }
  // integer or decimal
  std::string t = s;
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
    neg = (t[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c == '.') {
      if (seen_dot) throw parse_error("bad decimal string: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw parse_error("bad rational string: " + s);
    }
  }
  if (!seen_digit) throw parse_error("bad rational string: " + s);
  mpz_class n;
  if (n.set_str(digits, 10) != 0) throw parse_error("bad rational string: " + s);
  if (neg) n = -n;
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

mpz_class Rational::floor_z() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

long long Rational::floor_ll() const {
  mpz_class q = floor_z();
  if (!q.fits_slong_p()) throw parse_error("floor does not fit a machine integer");
  return static_cast<long long>(q.get_si());
}

Rational Rational::frac() const {
  mpq_class f = v_ - mpq_class(floor_z());
  return Rational(f);
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace pcrot
