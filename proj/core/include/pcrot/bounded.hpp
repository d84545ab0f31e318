#ifndef PCROT_BOUNDED_HPP
#define PCROT_BOUNDED_HPP

#include <vector>

#include "pcrot/linalg.hpp"

namespace pcrot {

/// Fixed-precision orbit state: point coordinates are dyadic numbers
/// num[i] / 2^precision_bits, and error_radius is a sound inf-norm bound on
/// the distance to the exact orbit this state shadows.
struct BoundedFloatState {
  int precision_bits = 64;
  std::vector<mpz_class> num;
  Rational error_radius;

  int dim() const { return static_cast<int>(num.size()); }
  RVector point() const;
};

/// Worst-case per-step rounding error at the given precision: 2^-(bits+1)
/// (round-to-nearest onto the dyadic grid).
Rational rounding_unit(int precision_bits);

/// Smallest multiple of 2^-bits that is >= x. Keeps radius recurrences from
/// accumulating denominator bits; always a sound over-approximation.
Rational round_up_dyadic(const Rational& x, int bits);

/// Rounds an exact point onto the dyadic grid; the returned radius accounts
/// for the rounding plus any incoming radius.
BoundedFloatState round_to_dyadic(const RVector& x, int precision_bits,
                                  const Rational& incoming_radius = Rational(0));

/// One shadowed step of y -> Ay + t. New radius = ||A||*radius + rounding_unit.
/// If ceiling is non-null and the new radius exceeds it, throws
/// precision_exhausted.
BoundedFloatState step_bounded(const BoundedFloatState& state, const RMatrix& A,
                               const RVector& t, const Rational& a_norm,
                               const Rational* ceiling = nullptr);

/// Smallest precision >= min_bits whose steady-state radius
/// rounding_unit/(1-||A||) stays below the target bound.
int choose_precision_bits(const Rational& a_norm, const Rational& target, int min_bits = 64);

}  // namespace pcrot

#endif
