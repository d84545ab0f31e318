#ifndef PCROT_LINALG_HPP
#define PCROT_LINALG_HPP

#include <utility>
#include <vector>

#include "pcrot/rational.hpp"

namespace pcrot {

using IntVector = std::vector<long long>;

/// Dense vector of exact rationals.
struct RVector {
  std::vector<Rational> c;

  RVector() = default;
  explicit RVector(int d) : c(static_cast<std::size_t>(d)) {}
  RVector(std::initializer_list<Rational> xs) : c(xs) {}

  int dim() const { return static_cast<int>(c.size()); }
  Rational& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const Rational& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  friend bool operator==(const RVector& a, const RVector& b) { return a.c == b.c; }
};

/// Dense square matrix of exact rationals, row-major.
struct RMatrix {
  int n = 0;
  std::vector<Rational> a;

  RMatrix() = default;
  explicit RMatrix(int d) : n(d), a(static_cast<std::size_t>(d) * d) {}

  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static RMatrix identity(int d);

  friend bool operator==(const RMatrix& x, const RMatrix& y) { return x.n == y.n && x.a == y.a; }
};

RVector operator+(const RVector& x, const RVector& y);
RVector operator-(const RVector& x, const RVector& y);
RVector operator*(const Rational& s, const RVector& x);

/// max_j |x_j|
Rational inf_norm(const RVector& x);
/// max_j sum_l |a_jl| (operator norm for the max vector norm)
Rational inf_norm(const RMatrix& A);
/// sum_l |a_jl| for row j
Rational row_abs_sum(const RMatrix& A, int j);

Rational inf_norm_int(const IntVector& k);

RVector mat_vec(const RMatrix& A, const RVector& x);
RMatrix mat_mul(const RMatrix& A, const RMatrix& B);

Rational determinant(const RMatrix& A);

/// Exact Gaussian elimination with nonzero pivoting; throws singular_matrix.
RVector solve_linear(RMatrix M, RVector rhs);

/// Solves (I - A) v = b. Rejects ||A|| >= 1 with invalid_system.
RVector solve_resolvent(const RMatrix& A, const RVector& b);

/// Component-wise floor and fractional part; floor + frac == x exactly.
std::pair<IntVector, RVector> floor_frac(const RVector& x);

RVector int_to_rvector(const IntVector& k);

std::size_t max_bit_size(const RVector& x);

}  // namespace pcrot

#endif
