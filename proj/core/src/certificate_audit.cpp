// Independent soundness audit for periodic-orbit certificates. Kept apart
// from the search path in dynamics.cpp: labels and margins are evaluated
// through the public arrangement interface (unit rows v^(j) against mu_j),
// and the attraction claim is re-established by a fresh orbit walk.

#include <string>

#include "pcrot/dynamics.hpp"
#include "pcrot/errors.hpp"

namespace pcrot {

namespace {

Rational dot(const RVector& a, const RVector& b) {
  Rational s;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

bool fail(std::string* why, const std::string& msg) {
  if (why != nullptr) *why = msg;
  return false;
}

}  // namespace

bool recheck_certificate(const ExtendedSystem& sx, const PeriodicOrbitCertificate& cert,
                         const RVector& y0, const Budget& budget, std::string* why) {
  const int d = sx.d;
  const Rational one(1);
  const Rational two_r = Rational(2) * sx.r;

  if (cert.q < 1 || static_cast<int>(cert.word.size()) != cert.q)
    return fail(why, "word length does not match the period");
  for (const Letter& p : cert.word) {
    if (static_cast<int>(p.size()) != d) return fail(why, "bad letter dimension");
    for (uint8_t pj : p)
      if (pj > 1) return fail(why, "letter outside {0,1}^d");
  }
  if (cert.point.dim() != d) return fail(why, "bad point dimension");
  if (!(cert.margin > Rational(0))) return fail(why, "margin not positive");
  if (cert.enclosure.sign() < 0) return fail(why, "negative enclosure");
  Rational need = cert.margin * (one - sx.a_norm);
  if (!(cert.enclosure < need)) return fail(why, "enclosure does not beat margin*(1-||A||)");
  if (!(cert.enclosure * sx.a_norm < cert.margin)) return fail(why, "contraction chain does not close");

  // cycle walk: point is fixed by the word, labels match, margins hold
  RVector w = cert.point;
  for (int t = 0; t < cert.q; ++t) {
    if (!(inf_norm(w) <= two_r)) return fail(why, "cycle leaves the ball X");
    if (!on_hyperplane(sx.arr, w).empty()) return fail(why, "cycle point on a hyperplane");
    Label expected = p_to_label(cert.word[static_cast<std::size_t>(t)]);
    if (label_sigma(sx.arr, w) != expected) return fail(why, "cycle label differs from the word");
    for (int j = 0; j < d; ++j) {
      Rational gap = (dot(sx.arr.v[static_cast<std::size_t>(j)], w) - sx.arr.mu[j]).abs();
      if (gap < cert.margin) return fail(why, "margin violated on the cycle");
    }
    w = apply_phi(sx, cert.word[static_cast<std::size_t>(t)], w);
  }
  if (!(w == cert.point)) return fail(why, "point is not fixed by the word");

  // attraction claim: the orbit of y0 enters the margin basin of the cycle.
  // Walk exactly while the bit budget lasts, then in dyadic arithmetic at a
  // precision tied to the certified margin.
  const long horizon = cert.witness_step + 4L * cert.q + 8;
  RVector y = y0;
  bool bounded = false;
  BoundedFloatState st;
  int precision = choose_precision_bits(sx.a_norm, need / Rational(8), budget.min_precision_bits);

  for (long t = 0; t <= horizon && t <= budget.max_steps; ++t) {
    RVector center = bounded ? st.point() : y;
    Rational radius = bounded ? st.error_radius : Rational(0);
    Rational dist = inf_norm(center - cert.point) + radius;
    if (dist < need) return true;

    // step: label from the center, soundness of the branch choice from the
    // radius (|<v_j, c> - mu_j| > radius decides the side of the true point)
    Label lab(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      Rational diff = dot(sx.arr.v[static_cast<std::size_t>(j)], center) - sx.arr.mu[j];
      if (bounded && !(diff.abs() > radius))
        return fail(why, "audit walk hit an ambiguous label");
      lab[static_cast<std::size_t>(j)] = (diff.sign() < 0) ? 1 : -1;
    }
    Letter p = label_to_p(lab);
    if (!bounded) {
      y = apply_phi(sx, p, y);
      if (max_bit_size(y) > static_cast<std::size_t>(budget.bits_cap)) {
        st = round_to_dyadic(y, precision);
        bounded = true;
      }
    } else {
      RVector img = apply_phi(sx, p, center);
      BoundedFloatState nst = round_to_dyadic(img, st.precision_bits);
      nst.error_radius = round_up_dyadic(
          sx.a_norm * st.error_radius + rounding_unit(st.precision_bits), st.precision_bits + 16);
      st = std::move(nst);
    }
  }
  return fail(why, "orbit did not reach the margin basin within the audit horizon");
}

}  // namespace pcrot
