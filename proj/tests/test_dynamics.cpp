#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pcrot/dynamics.hpp"
#include "pcrot/experiments.hpp"

using namespace pcrot;

namespace {

ContractedRotation scalar(const Rational& a, const Rational& b) {
  RMatrix A(1);
  A.at(0, 0) = a;
  return ContractedRotation::make(A, RVector{b});
}

ContractedRotation figure1() {
  RMatrix A(2);
  A.at(0, 0) = Rational(4, 5);
  A.at(0, 1) = Rational(1, 10);
  A.at(1, 0) = Rational(1, 2);
  A.at(1, 1) = Rational(2, 5);
  return ContractedRotation::make(A, RVector{Rational(3, 10), Rational(2, 5)});
}

}  // namespace

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("compose_word frozen cases") {
  RMatrix half(1);
  half.at(0, 0) = Rational(1, 2);
  IntVector k{0};

  SUBCASE("single letter") {
    AffineWord w = compose_word(half, k, Itinerary{Letter{1}});
    CHECK(w.power.at(0, 0) == Rational(1, 2));
    CHECK(w.shift == RVector{Rational(-1)});
  }
  SUBCASE("two letters, first applied first") {
    AffineWord w = compose_word(half, k, Itinerary{Letter{0}, Letter{1}});
    CHECK(w.power.at(0, 0) == Rational(1, 4));
    CHECK(w.shift == RVector{Rational(-1)});
  }
  SUBCASE("empty word is the identity") {
    AffineWord w = compose_word(half, k, Itinerary{});
    CHECK(w.power == RMatrix::identity(1));
    CHECK(inf_norm(w.shift).is_zero());
  }
  SUBCASE("letter composition matches repeated phi application") {
    ContractedRotation sys = figure1();
    ExtendedSystem sx = extended_from(sys);
    Itinerary alpha{Letter{0, 1}, Letter{1, 0}, Letter{1, 1}};
    AffineWord w = compose_word(sx.A, sx.k, alpha);
    RVector y{Rational(1, 3), Rational(-1, 7)};
    RVector direct = y;
    for (const Letter& p : alpha) direct = apply_phi(sx, p, direct);
    CHECK(mat_vec(w.power, y) + w.shift == direct);
  }
}

TEST_CASE("iterate_orbit") {
  SUBCASE("fixed point gives a constant trace") {
    ContractedRotation sys = scalar(Rational(1, 2), Rational(0));
    ExtendedSystem sx = extended_from(sys);
    auto tr = iterate_orbit(sx, RVector{Rational(0)}, 10, IterationMode::Exact);
    for (const auto& ts : tr) {
      CHECK(ts.point == RVector{Rational(0)});
      CHECK(ts.regular);
    }
  }
  SUBCASE("transported period-2 labels alternate") {
    ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
    ExtendedSystem sx = extended_from(sys);
    TranslatedCube t = make_translated_cube(sys);
    auto tr = iterate_orbit(sx, h_inverse(t, RVector{Rational(0)}), 40, IterationMode::Exact);
    for (long n = 20; n + 2 < 40; ++n) {
      CHECK(tr[static_cast<std::size_t>(n)].label != tr[static_cast<std::size_t>(n + 1)].label);
      CHECK(tr[static_cast<std::size_t>(n)].label == tr[static_cast<std::size_t>(n + 2)].label);
    }
  }
  SUBCASE("bounded trace shadows the exact one") {
    ContractedRotation sys = figure1();
    ExtendedSystem sx = extended_from(sys);
    TranslatedCube t = make_translated_cube(sys);
    RVector y0 = h_inverse(t, RVector{Rational(1, 3), Rational(1, 7)});
    auto ex = iterate_orbit(sx, y0, 1000, IterationMode::Exact);
    auto bd = iterate_orbit(sx, y0, 1000, IterationMode::Bounded, 96);
    for (std::size_t i = 0; i < ex.size(); ++i) {
      CHECK(inf_norm(ex[i].point - bd[i].point) <= bd[i].radius);
      if (!bd[i].ambiguous) CHECK(ex[i].label == bd[i].label);
    }
  }
}

TEST_CASE("certify the global fixed point of b = 0") {
  ContractedRotation sys = scalar(Rational(1, 2), Rational(0));
  ExtendedSystem sx = extended_from(sys);
  OrbitVerdict v = certify(sx, RVector{Rational(1, 2)}, Budget{});
  REQUIRE(v.kind == VerdictKind::Certified);
  CHECK(v.certificate->q == 1);
  CHECK(v.certificate->point == RVector{Rational(0)});
  CHECK(v.certificate->word == Itinerary{Letter{0}});
  CHECK(v.certificate->margin == Rational(2));  // distance of 0 to the hyperplane at mu = 2
}

TEST_CASE("certify the period-2 attractor of a = 1/2, b = 7/10") {
  ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);
  RVector y0 = h_inverse(t, RVector{Rational(0)});
  OrbitVerdict v = certify(sx, y0, Budget{});
  REQUIRE(v.kind == VerdictKind::Certified);
  const auto& cert = *v.certificate;
  CHECK(cert.q == 2);
  CHECK(cert.point == RVector{Rational(-4, 3)});
  CHECK(cert.word == Itinerary{Letter{0}, Letter{1}});
  CHECK(cert.margin == Rational(2, 15));
  CHECK(cert.enclosure < cert.margin * (Rational(1) - sys.a_norm));
  // transported orbit {1/15, 11/15}
  CHECK(h_apply(t, cert.point) == RVector{Rational(1, 15)});
  RVector w1 = apply_phi(sx, cert.word[0], cert.point);
  CHECK(h_apply(t, w1) == RVector{Rational(11, 15)});

  std::string why;
  CHECK(recheck_certificate(sx, cert, y0, Budget{}, &why));
}

TEST_CASE("audit rejects tampered certificates") {
  ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);
  RVector y0 = h_inverse(t, RVector{Rational(0)});
  OrbitVerdict v = certify(sx, y0, Budget{});
  REQUIRE(v.kind == VerdictKind::Certified);

  auto cert = *v.certificate;
  SUBCASE("wrong point") {
    cert.point = RVector{Rational(-1, 3)};
    CHECK(!recheck_certificate(sx, cert, y0, Budget{}));
  }
  SUBCASE("inflated margin") {
    cert.margin = Rational(10);
    CHECK(!recheck_certificate(sx, cert, y0, Budget{}));
  }
  SUBCASE("wrong word") {
    cert.word[0] = Letter{1};
    CHECK(!recheck_certificate(sx, cert, y0, Budget{}));
  }
  SUBCASE("wrong period") {
    cert.q = 1;
    CHECK(!recheck_certificate(sx, cert, y0, Budget{}));
  }
  SUBCASE("enclosure too large") {
    cert.enclosure = cert.margin;
    CHECK(!recheck_certificate(sx, cert, y0, Budget{}));
  }
}

TEST_CASE("exact hyperplane hits are reported") {
  // x/2 + 7/8 crosses the integer 1 at x = 1/4; f(3/4) = 1/4 hits at step 1
  ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 8));
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);

  OrbitVerdict at0 = certify(sx, h_inverse(t, RVector{Rational(1, 4)}), Budget{});
  CHECK(at0.kind == VerdictKind::HitDiscontinuity);
  CHECK(at0.hit_step == 0);
  CHECK(at0.hit_hyperplanes == std::vector<int>{0});

  OrbitVerdict at1 = certify(sx, h_inverse(t, RVector{Rational(3, 4)}), Budget{});
  CHECK(at1.kind == VerdictKind::HitDiscontinuity);
  CHECK(at1.hit_step == 1);
}

TEST_CASE("budget exhaustion is an honest verdict") {
  ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);
  Budget tiny;
  tiny.max_steps = 3;
  OrbitVerdict v = certify(sx, h_inverse(t, RVector{Rational(0)}), tiny);
  CHECK(v.kind == VerdictKind::Undetermined);
}

TEST_CASE("monotone budget keeps the certificate") {
  ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);
  RVector y0 = h_inverse(t, RVector{Rational(1, 3)});

  OrbitVerdict v1 = certify(sx, y0, Budget{});
  Budget big;
  big.max_steps = 2 * Budget{}.max_steps;
  big.candidate_attempts = 2 * Budget{}.candidate_attempts;
  OrbitVerdict v2 = certify(sx, y0, big);
  REQUIRE(v1.kind == VerdictKind::Certified);
  REQUIRE(v2.kind == VerdictKind::Certified);
  CHECK(v1.certificate->q == v2.certificate->q);
  CHECK(v1.certificate->point == v2.certificate->point);
  CHECK(v1.certificate->word == v2.certificate->word);
  CHECK(v1.certificate->witness_step == v2.certificate->witness_step);
  CHECK(v1.certificate->enclosure == v2.certificate->enclosure);
}

TEST_CASE("figure-1 orbit certifies and matches the brute-force oracle") {
  ContractedRotation sys = figure1();
  ExtendedSystem sx = extended_from(sys);
  TranslatedCube t = make_translated_cube(sys);
  OrbitVerdict v = certify(sx, h_inverse(t, RVector(2)), Budget{});
  REQUIRE(v.kind == VerdictKind::Certified);

  auto per = oracle::f_orbit_period(sys, RVector(2), 100000, 512);
  REQUIRE(per.has_value());
  CHECK(v.certificate->q == per->q);
  // regression pin: the exact-iteration oracle fixes the figure-1 period at 16
  CHECK(v.certificate->q == 16);
}

TEST_CASE("attractor_scan, dedup, and the sampled-periodicity flag") {
  SUBCASE("period-2 system from a 16-point grid") {
    ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 10));
    ScanReport rep = attractor_scan(sys, make_grid(1, 16), Budget{}, 1);
    CHECK(rep.certified == 16);
    CHECK(rep.all_certified);
    REQUIRE(rep.orbits.size() == 1);
    CHECK(rep.orbits[0].q == 2);
    std::vector<RVector> xs = rep.orbits[0].points_x;
    std::sort(xs.begin(), xs.end(), [](const RVector& a, const RVector& b) { return a[0] < b[0]; });
    CHECK(xs[0] == RVector{Rational(1, 15)});
    CHECK(xs[1] == RVector{Rational(11, 15)});
  }
  SUBCASE("b = 0 certifies the single fixed point everywhere") {
    ContractedRotation sys = scalar(Rational(2, 5), Rational(0));
    ScanReport rep = attractor_scan(sys, make_grid(1, 8), Budget{}, 2);
    CHECK(rep.certified == 8);
    REQUIRE(rep.orbits.size() == 1);
    CHECK(rep.orbits[0].q == 1);
    CHECK(rep.orbits[0].points_x[0] == RVector{Rational(0)});
  }
  SUBCASE("hit points are reported while others certify") {
    ContractedRotation sys = scalar(Rational(1, 2), Rational(7, 8));
    std::vector<RVector> grid{RVector{Rational(3, 4)}, RVector{Rational(1, 8)}};
    ScanReport rep = attractor_scan(sys, grid, Budget{}, 1);
    CHECK(rep.hits == 1);
    CHECK(rep.certified == 1);
    CHECK(!rep.all_certified);
    CHECK(rep.outcomes[0].kind == VerdictKind::HitDiscontinuity);
    CHECK(rep.outcomes[1].kind == VerdictKind::Certified);
  }
}

TEST_SUITE_END();
