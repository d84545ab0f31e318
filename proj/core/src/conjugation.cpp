#include "pcrot/conjugation.hpp"

#include "pcrot/errors.hpp"

namespace pcrot {

Letter label_to_p(const Label& s) {
  Letter p(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) p[j] = (s[j] > 0 ? 0 : 1);
  return p;
}

Label p_to_label(const Letter& p) {
  Label s(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) s[j] = (p[j] == 0 ? 1 : -1);
  return s;
}

TranslatedCube make_translated_cube(const ContractedRotation& sys) {
  return TranslatedCube{solve_resolvent(sys.A, sys.b)};
}

RVector h_apply(const TranslatedCube& t, const RVector& y) { return y + t.offset; }

RVector h_inverse(const TranslatedCube& t, const RVector& x) { return x - t.offset; }

bool in_translated_cube(const TranslatedCube& t, const RVector& y) {
  return in_unit_cube(y + t.offset);
}

RVector apply_g(const ContractedRotation& sys, const TranslatedCube& t, const RVector& y) {
  if (!in_translated_cube(t, y)) throw domain_error("apply_g: y outside D_b");
  IntVector e = code_e(sys, h_apply(t, y));
  return mat_vec(sys.A, y) - int_to_rvector(e);
}

RVector rho(const ContractedRotation& sys) {
  IntVector k = chi(sys);
  RVector offset = solve_resolvent(sys.A, sys.b);
  RVector mu(sys.d);
  for (int j = 0; j < sys.d; ++j) {
    Rational nrm = row_abs_sum(sys.A, j);
    mu[j] = (Rational(k[static_cast<std::size_t>(j)], 1) - offset[j] + Rational(1)) / nrm;
  }
  return mu;
}

LabelArrangement make_arrangement(const RMatrix& A, RVector mu) {
  LabelArrangement arr;
  const int d = A.n;
  arr.mu = std::move(mu);
  arr.theta = RVector(d);
  for (int j = 0; j < d; ++j) {
    Rational nrm = row_abs_sum(A, j);
    if (nrm.is_zero()) throw invalid_system("make_arrangement: zero row in A");
    RVector row(d), unit(d);
    for (int l = 0; l < d; ++l) {
      row[l] = A.at(j, l);
      unit[l] = A.at(j, l) / nrm;
    }
    arr.rows.push_back(std::move(row));
    arr.v.push_back(std::move(unit));
    arr.row_norm.push_back(nrm);
    arr.theta[j] = arr.mu[j] * arr.row_norm[static_cast<std::size_t>(j)];
  }
  return arr;
}

namespace {

Rational dot(const RVector& a, const RVector& b) {
  Rational s;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Label label_sigma(const LabelArrangement& arr, const RVector& y) {
  Label s(static_cast<std::size_t>(arr.dim()));
  for (int j = 0; j < arr.dim(); ++j)
    s[static_cast<std::size_t>(j)] = (dot(arr.rows[static_cast<std::size_t>(j)], y) < arr.theta[j]) ? 1 : -1;
  return s;
}

std::vector<int> on_hyperplane(const LabelArrangement& arr, const RVector& y) {
  std::vector<int> idx;
  for (int j = 0; j < arr.dim(); ++j)
    if (dot(arr.rows[static_cast<std::size_t>(j)], y) == arr.theta[j]) idx.push_back(j);
  return idx;
}

}  // namespace pcrot
