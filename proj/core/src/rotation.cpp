#include "pcrot/rotation.hpp"

#include <algorithm>

#include "pcrot/errors.hpp"

namespace pcrot {

ContractedRotation ContractedRotation::make(RMatrix A, RVector b) {
  if (A.n < 1 || A.n != b.dim())
    throw invalid_system("ContractedRotation: dimension mismatch");
  Rational nrm = inf_norm(A);
  if (!(nrm < Rational(1)))
    throw invalid_system("ContractedRotation: ||A|| >= 1");
  if (determinant(A).is_zero())
    throw invalid_system("ContractedRotation: A is singular");
  ContractedRotation sys;
  sys.d = A.n;
  sys.A = std::move(A);
  sys.b = std::move(b);
  sys.a_norm = nrm;
  return sys;
}

bool in_unit_cube(const RVector& x) {
  for (const auto& xi : x.c)
    if (xi.sign() < 0 || !(xi < Rational(1))) return false;
  return true;
}

RVector apply_f(const ContractedRotation& sys, const RVector& x) {
  if (!in_unit_cube(x)) throw domain_error("apply_f: x outside [0,1)^d");
  RVector w = mat_vec(sys.A, x) + sys.b;
  RVector r(sys.d);
  for (int i = 0; i < sys.d; ++i) r[i] = w[i].frac();
  return r;
}

IntVector code_e(const ContractedRotation& sys, const RVector& x) {
  if (!in_unit_cube(x)) throw domain_error("code_e: x outside [0,1)^d");
  RVector w = mat_vec(sys.A, x) + sys.b;
  IntVector e(static_cast<std::size_t>(sys.d));
  for (int i = 0; i < sys.d; ++i) e[static_cast<std::size_t>(i)] = w[i].floor_ll();
  return e;
}

IntVector chi(const ContractedRotation& sys) {
  // The infimum of (Ax+b)_j over the half-open cube is
  // m_j = b_j + sum_l min(a_jl, 0); the minimum code is floor(m_j) whether or
  // not m_j is attained (the floor is constant just above a non-integer m_j,
  // and equals m_j just above an integer m_j).
  IntVector k(static_cast<std::size_t>(sys.d));
  for (int j = 0; j < sys.d; ++j) {
    Rational m = sys.b[j];
    for (int l = 0; l < sys.d; ++l)
      if (sys.A.at(j, l).sign() < 0) m += sys.A.at(j, l);
    k[static_cast<std::size_t>(j)] = m.floor_ll();
  }
  return k;
}

namespace {

// Affine condition <c, x> + d0 (< 0 | <= 0).
struct Constraint {
  RVector c;
  Rational d0;
  bool strict;
};

Rational eval(const Constraint& g, const RVector& x) {
  Rational s = g.d0;
  for (int i = 0; i < x.dim(); ++i) s += g.c[i] * x[i];
  return s;
}

// Candidate region emptiness, decided exactly. Enumerate the vertices of the
// weakened (closed) polytope; the barycenter of all distinct vertices lies in
// its relative interior, so a strict constraint fails there iff it fails on
// the whole polytope.
bool region_non_empty(const std::vector<Constraint>& cons, int d) {
  std::vector<RVector> verts;
  int m = static_cast<int>(cons.size());

  auto try_subset = [&](const std::vector<int>& sel) {
    RMatrix M(d);
    RVector rhs(d);
    for (int r = 0; r < d; ++r) {
      const Constraint& g = cons[static_cast<std::size_t>(sel[static_cast<std::size_t>(r)])];
      for (int j = 0; j < d; ++j) M.at(r, j) = g.c[j];
      rhs[r] = -g.d0;
    }
    RVector v;
    try {
      v = solve_linear(std::move(M), std::move(rhs));
    } catch (const singular_matrix&) {
      return;
    }
    for (const auto& g : cons)
      if (eval(g, v).sign() > 0) return;
    if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
  };

  // all d-subsets of the constraint list
  std::vector<int> sel(static_cast<std::size_t>(d));
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == d) {
      try_subset(sel);
      return;
    }
    for (int i = start; i < m; ++i) {
      sel[static_cast<std::size_t>(depth)] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);

  if (verts.empty()) return false;

  RVector bary(d);
  for (const auto& v : verts) bary = bary + v;
  Rational w(1, static_cast<long long>(verts.size()));
  bary = w * bary;

  for (const auto& g : cons)
    if (g.strict && eval(g, bary).sign() >= 0) return false;
  return true;
}

}  // namespace

std::vector<ContinuityDomain> continuity_domains(const ContractedRotation& sys) {
  const int d = sys.d;
  IntVector k = chi(sys);
  std::vector<ContinuityDomain> out;
  out.reserve(static_cast<std::size_t>(1) << d);

  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << d); ++mask) {
    ContinuityDomain dom;
    dom.p.resize(static_cast<std::size_t>(d));
    dom.code.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      dom.p[static_cast<std::size_t>(j)] = (mask >> j) & 1;
      dom.code[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j)] + dom.p[static_cast<std::size_t>(j)];
    }

    std::vector<Constraint> cons;
    for (int j = 0; j < d; ++j) {
      Constraint lo;  // -x_j <= 0
      lo.c = RVector(d);
      lo.c[j] = Rational(-1);
      lo.strict = false;
      cons.push_back(std::move(lo));
      Constraint hi;  // x_j - 1 < 0
      hi.c = RVector(d);
      hi.c[j] = Rational(1);
      hi.d0 = Rational(-1);
      hi.strict = true;
      cons.push_back(std::move(hi));
    }
    for (int j = 0; j < d; ++j) {
      Constraint g;
      g.c = RVector(d);
      Rational thr = Rational(k[static_cast<std::size_t>(j)] + 1, 1);
      if (dom.p[static_cast<std::size_t>(j)] == 0) {
        // (Ax+b)_j - (chi_j+1) < 0
        for (int l = 0; l < d; ++l) g.c[l] = sys.A.at(j, l);
        g.d0 = sys.b[j] - thr;
        g.strict = true;
      } else {
        // (chi_j+1) - (Ax+b)_j <= 0
        for (int l = 0; l < d; ++l) g.c[l] = -sys.A.at(j, l);
        g.d0 = thr - sys.b[j];
        g.strict = false;
      }
      cons.push_back(std::move(g));
    }

    dom.non_empty = region_non_empty(cons, d);
    out.push_back(std::move(dom));
  }
  return out;
}

bool membership(const ContractedRotation& sys, const ContinuityDomain& dom, const RVector& x) {
  if (!in_unit_cube(x)) throw domain_error("membership: x outside [0,1)^d");
  RVector w = mat_vec(sys.A, x) + sys.b;
  for (int j = 0; j < sys.d; ++j) {
    Rational thr = Rational(dom.code[static_cast<std::size_t>(j)] + (dom.p[static_cast<std::size_t>(j)] == 0 ? 1 : 0), 1);
    if (dom.p[static_cast<std::size_t>(j)] == 0) {
      if (!(w[j] < thr)) return false;
    } else {
      if (w[j] < thr) return false;
    }
  }
  return true;
}

}  // namespace pcrot
