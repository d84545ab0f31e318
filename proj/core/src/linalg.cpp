#include "pcrot/linalg.hpp"

#include <algorithm>

#include "pcrot/errors.hpp"

namespace pcrot {

RMatrix RMatrix::identity(int d) {
  RMatrix I(d);
  for (int i = 0; i < d; ++i) I.at(i, i) = Rational(1);
  return I;
}

RVector operator+(const RVector& x, const RVector& y) {
  RVector r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x[i] + y[i];
  return r;
}

RVector operator-(const RVector& x, const RVector& y) {
  RVector r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x[i] - y[i];
  return r;
}

RVector operator*(const Rational& s, const RVector& x) {
  RVector r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = s * x[i];
  return r;
}

Rational inf_norm(const RVector& x) {
  Rational m;
  for (const auto& xi : x.c) m = std::max(m, xi.abs());
  return m;
}

Rational row_abs_sum(const RMatrix& A, int j) {
  Rational s;
  for (int l = 0; l < A.n; ++l) s += A.at(j, l).abs();
  return s;
}

Rational inf_norm(const RMatrix& A) {
  Rational m;
  for (int j = 0; j < A.n; ++j) m = std::max(m, row_abs_sum(A, j));
  return m;
}

Rational inf_norm_int(const IntVector& k) {
  long long m = 0;
  for (long long ki : k) m = std::max(m, ki < 0 ? -ki : ki);
  return Rational(m, 1);
}

RVector mat_vec(const RMatrix& A, const RVector& x) {
  RVector r(A.n);
  for (int i = 0; i < A.n; ++i) {
    Rational s;
    for (int j = 0; j < A.n; ++j) s += A.at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

RMatrix mat_mul(const RMatrix& A, const RMatrix& B) {
  RMatrix C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      Rational s;
      for (int k = 0; k < A.n; ++k) s += A.at(i, k) * B.at(k, j);
      C.at(i, j) = s;
    }
  return C;
}

Rational determinant(const RMatrix& A) {
  RMatrix M = A;
  int n = M.n;
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!M.at(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(M.at(pivot, j), M.at(col, j));
      det = -det;
    }
    det *= M.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (M.at(r, col).is_zero()) continue;
      Rational f = M.at(r, col) / M.at(col, col);
      for (int j = col; j < n; ++j) M.at(r, j) -= f * M.at(col, j);
    }
  }
  return det;
}

RVector solve_linear(RMatrix M, RVector rhs) {
  int n = M.n;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!M.at(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) throw singular_matrix("solve_linear: singular matrix");
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(M.at(pivot, j), M.at(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      if (M.at(r, col).is_zero()) continue;
      Rational f = M.at(r, col) / M.at(col, col);
      for (int j = col; j < n; ++j) M.at(r, j) -= f * M.at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  RVector x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational s = rhs[i];
    for (int j = i + 1; j < n; ++j) s -= M.at(i, j) * x[j];
    x[i] = s / M.at(i, i);
  }
  return x;
}

RVector solve_resolvent(const RMatrix& A, const RVector& b) {
  if (!(inf_norm(A) < Rational(1)))
    throw invalid_system("solve_resolvent: ||A|| >= 1");
  RMatrix M = RMatrix::identity(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) M.at(i, j) -= A.at(i, j);
  return solve_linear(std::move(M), b);
}

std::pair<IntVector, RVector> floor_frac(const RVector& x) {
  IntVector fl(static_cast<std::size_t>(x.dim()));
  RVector fr(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    fl[static_cast<std::size_t>(i)] = x[i].floor_ll();
    fr[i] = x[i].frac();
  }
  return {std::move(fl), std::move(fr)};
}

RVector int_to_rvector(const IntVector& k) {
  RVector r(static_cast<int>(k.size()));
  for (std::size_t i = 0; i < k.size(); ++i) r[static_cast<int>(i)] = Rational(k[i], 1);
  return r;
}

std::size_t max_bit_size(const RVector& x) {
  std::size_t m = 0;
  for (const auto& xi : x.c) m = std::max(m, xi.bit_size());
  return m;
}

}  // namespace pcrot
