#include "pcrot/extension.hpp"

#include "pcrot/errors.hpp"

namespace pcrot {

Rational radius_r(const RMatrix& A, const IntVector& k) {
  Rational nrm = inf_norm(A);
  if (!(nrm < Rational(1))) throw invalid_system("radius_r: ||A|| >= 1");
  Rational one(1);
  Rational den = (one - nrm) * (one - nrm);
  return (one + nrm) * (one + inf_norm_int(k)) / den;
}

ExtendedSystem ExtendedSystem::make(RMatrix A, IntVector k, RVector mu) {
  if (A.n < 1 || A.n != mu.dim() || static_cast<std::size_t>(A.n) != k.size())
    throw invalid_system("ExtendedSystem: dimension mismatch");
  ExtendedSystem sx;
  sx.d = A.n;
  sx.a_norm = inf_norm(A);
  if (!(sx.a_norm < Rational(1))) throw invalid_system("ExtendedSystem: ||A|| >= 1");
  sx.r = radius_r(A, k);
  sx.arr = make_arrangement(A, std::move(mu));
  sx.A = std::move(A);
  sx.k = std::move(k);
  return sx;
}

ExtendedSystem extended_from(const ContractedRotation& sys) {
  return ExtendedSystem::make(sys.A, chi(sys), rho(sys));
}

bool in_ball(const ExtendedSystem& sysX, const RVector& y) {
  return inf_norm(y) <= Rational(2) * sysX.r;
}

RVector apply_phi(const ExtendedSystem& sysX, const Letter& p, const RVector& y) {
  RVector out = mat_vec(sysX.A, y);
  for (int j = 0; j < sysX.d; ++j)
    out[j] -= Rational(sysX.k[static_cast<std::size_t>(j)] + p[static_cast<std::size_t>(j)], 1);
  return out;
}

GResult apply_G(const ExtendedSystem& sysX, const RVector& y) {
  if (!in_ball(sysX, y)) throw domain_error("apply_G: y outside the ball X");
  GResult res;
  res.label = label_sigma(sysX.arr, y);
  res.regular = on_hyperplane(sysX.arr, y).empty();
  res.y = apply_phi(sysX, label_to_p(res.label), y);
  return res;
}

}  // namespace pcrot
