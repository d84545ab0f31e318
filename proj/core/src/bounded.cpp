#include "pcrot/bounded.hpp"

#include "pcrot/errors.hpp"

namespace pcrot {
namespace {

// Nearest multiple of 2^-bits, ties round up:
// round(a/b * 2^bits) = floor((2*a*2^bits + b) / (2b)) for b > 0.
mpz_class round_scaled(const Rational& x, int bits) {
  const mpq_class& q = x.raw();
  mpz_class num2 = q.get_num();
  mpz_mul_2exp(num2.get_mpz_t(), num2.get_mpz_t(), static_cast<mp_bitcnt_t>(bits + 1));
  num2 += q.get_den();
  mpz_class den2 = q.get_den() * 2;
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
  return r;
}

Rational dyadic_value(const mpz_class& n, int bits) {
  return Rational(mpq_class(n)) * Rational::pow2(-bits);
}

}  // namespace

RVector BoundedFloatState::point() const {
  RVector p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = dyadic_value(num[static_cast<std::size_t>(i)], precision_bits);
  return p;
}

Rational rounding_unit(int precision_bits) { return Rational::pow2(-(precision_bits + 1)); }

Rational round_up_dyadic(const Rational& x, int bits) {
  const mpq_class& q = x.raw();
  mpz_class num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return Rational(mpq_class(r)) * Rational::pow2(-bits);
}

BoundedFloatState round_to_dyadic(const RVector& x, int precision_bits,
                                  const Rational& incoming_radius) {
  BoundedFloatState s;
  s.precision_bits = precision_bits;
  s.num.reserve(static_cast<std::size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) s.num.push_back(round_scaled(x[i], precision_bits));
  s.error_radius = incoming_radius + rounding_unit(precision_bits);
  return s;
}

BoundedFloatState step_bounded(const BoundedFloatState& state, const RMatrix& A,
                               const RVector& t, const Rational& a_norm,
                               const Rational* ceiling) {
  RVector p = state.point();
  RVector w = mat_vec(A, p) + t;
  BoundedFloatState next;
  next.precision_bits = state.precision_bits;
  next.num.reserve(static_cast<std::size_t>(w.dim()));
  for (int i = 0; i < w.dim(); ++i) next.num.push_back(round_scaled(w[i], state.precision_bits));
  next.error_radius = round_up_dyadic(a_norm * state.error_radius + rounding_unit(state.precision_bits),
                                      state.precision_bits + 16);
  if (ceiling != nullptr && next.error_radius > *ceiling)
    throw precision_exhausted("step_bounded: error radius above ceiling");
  return next;
}

int choose_precision_bits(const Rational& a_norm, const Rational& target, int min_bits) {
  Rational one_minus(Rational(1) - a_norm);
  int bits = min_bits;
  while (rounding_unit(bits) / one_minus >= target && bits < 1 << 20) bits *= 2;
  return bits;
}

}  // namespace pcrot
