#include <doctest.h>

#include "pcrot/experiments.hpp"
#include "pcrot/linalg.hpp"

using namespace pcrot;

namespace {

RMatrix figure1_matrix() {
  RMatrix A(2);
  A.at(0, 0) = Rational(4, 5);
  A.at(0, 1) = Rational(1, 10);
  A.at(1, 0) = Rational(1, 2);
  A.at(1, 1) = Rational(2, 5);
  return A;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("inf norm of matrices") {
  CHECK(inf_norm(figure1_matrix()) == Rational(9, 10));
  CHECK(inf_norm(RMatrix(3)) == Rational(0));
  RMatrix m(1);
  m.at(0, 0) = Rational(-1, 2);
  CHECK(inf_norm(m) == Rational(1, 2));
}

TEST_CASE("inf norm of vectors") {
  CHECK(inf_norm(RVector{Rational(3, 10), Rational(-2, 5)}) == Rational(2, 5));
  CHECK(inf_norm(RVector(4)) == Rational(0));
  CHECK(inf_norm(RVector{Rational(-1), Rational(0)}) == Rational(1));
}

TEST_CASE("resolvent solve, frozen values") {
  SUBCASE("zero matrix gives b back") {
    RVector b{Rational(1, 3), Rational(-2, 7), Rational(5)};
    CHECK(solve_resolvent(RMatrix(3), b) == b);
  }
  SUBCASE("d=1") {
    RMatrix A(1);
    A.at(0, 0) = Rational(1, 2);
    RVector v = solve_resolvent(A, RVector{Rational(7, 10)});
    CHECK(v == RVector{Rational(7, 5)});
  }
  SUBCASE("figure-1 parameters") {
    RVector v = solve_resolvent(figure1_matrix(), RVector{Rational(3, 10), Rational(2, 5)});
    CHECK(v == RVector{Rational(22, 7), Rational(23, 7)});
  }
  SUBCASE("rejects expanding A") {
    RMatrix A(1);
    A.at(0, 0) = Rational(1);
    CHECK_THROWS_AS(solve_resolvent(A, RVector{Rational(1)}), invalid_system);
  }
}

TEST_CASE("resolvent residual is exactly zero on random systems") {
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    ContractedRotation sys = random_system(rng, 1 + (i % 3));
    RVector v = solve_resolvent(sys.A, sys.b);
    RVector residual = v - mat_vec(sys.A, v) - sys.b;
    CHECK(inf_norm(residual).is_zero());
  }
}

TEST_CASE("matrix contraction property") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    ContractedRotation sys = random_system(rng, 1 + (i % 3));
    RVector x = random_cube_point(rng, sys.d);
    RVector y = random_cube_point(rng, sys.d);
    CHECK(inf_norm(mat_vec(sys.A, x - y)) <= sys.a_norm * inf_norm(x - y));
  }
}

TEST_CASE("solve_linear rejects singular systems") {
  RMatrix M(2);
  M.at(0, 0) = Rational(1, 2);
  M.at(0, 1) = Rational(1, 4);
  M.at(1, 0) = Rational(1, 2);
  M.at(1, 1) = Rational(1, 4);
  CHECK(determinant(M).is_zero());
  CHECK_THROWS_AS(solve_linear(M, RVector(2)), singular_matrix);
}

TEST_CASE("determinant of the figure-1 matrix") {
  CHECK(determinant(figure1_matrix()) == Rational(27, 100));
}

TEST_CASE("floor_frac") {
  auto [fl, fr] = floor_frac(RVector{Rational(11, 10), Rational(-3, 10)});
  CHECK(fl == IntVector{1, -1});
  CHECK(fr == RVector{Rational(1, 10), Rational(7, 10)});

  auto [fl2, fr2] = floor_frac(RVector{Rational(3), Rational(-2)});
  CHECK(fl2 == IntVector{3, -2});
  CHECK(inf_norm(fr2).is_zero());

  auto [fl3, fr3] = floor_frac(RVector(2));
  CHECK(fl3 == IntVector{0, 0});
  CHECK(inf_norm(fr3).is_zero());

  // reconstruction is exact
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    RVector z(2);
    z[0] = random_signed_rational(rng) * Rational(5);
    z[1] = random_signed_rational(rng) * Rational(5);
    auto [fl4, fr4] = floor_frac(z);
    CHECK(int_to_rvector(fl4) + fr4 == z);
    CHECK(fr4[0].sign() >= 0);
    CHECK(fr4[0] < Rational(1));
  }
}

TEST_SUITE_END();
