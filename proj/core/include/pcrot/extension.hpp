#ifndef PCROT_EXTENSION_HPP
#define PCROT_EXTENSION_HPP

#include "pcrot/conjugation.hpp"

namespace pcrot {

/// The piecewise-affine contraction G_mu on the closed ball X of radius 2r,
/// with branches phi_p(y) = Ay - (k+p) selected by the label map.
struct ExtendedSystem {
  int d = 0;
  RMatrix A;
  IntVector k;
  Rational a_norm;
  Rational r;          // (1+||A||)(1+||k||)/(1-||A||)^2
  LabelArrangement arr;

  static ExtendedSystem make(RMatrix A, IntVector k, RVector mu);
};

/// r = (1+||A||)(1+||k||)/(1-||A||)^2. Rejects ||A|| >= 1.
Rational radius_r(const RMatrix& A, const IntVector& k);

/// Builds the extension of g_b: k = chi(b), mu = rho(b) (Lemma 2.10 choice).
ExtendedSystem extended_from(const ContractedRotation& sys);

bool in_ball(const ExtendedSystem& sysX, const RVector& y);

/// phi_p(y) = Ay - (k+p), affine on all of R^d.
RVector apply_phi(const ExtendedSystem& sysX, const Letter& p, const RVector& y);

struct GResult {
  RVector y;
  Label label;
  bool regular;  // true iff y lies in the open cell of its label
};

/// G_mu(y) = phi_{sigma_mu(y)}(y). Total on X; rejects y outside the ball.
GResult apply_G(const ExtendedSystem& sysX, const RVector& y);

}  // namespace pcrot

#endif
