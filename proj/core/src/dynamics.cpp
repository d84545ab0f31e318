#include "pcrot/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "pcrot/errors.hpp"

namespace pcrot {

AffineWord compose_word(const RMatrix& A, const IntVector& k, const Itinerary& alpha) {
  const int d = A.n;
  AffineWord w;
  w.power = RMatrix::identity(d);
  w.shift = RVector(d);
  for (const Letter& p : alpha) {
    if (static_cast<int>(p.size()) != d) throw domain_error("compose_word: bad letter size");
    w.power = mat_mul(A, w.power);
    w.shift = mat_vec(A, w.shift);
    for (int j = 0; j < d; ++j)
      w.shift[j] -= Rational(k[static_cast<std::size_t>(j)] + p[static_cast<std::size_t>(j)], 1);
  }
  return w;
}

namespace {

// Affine branch data shared by the exact and bounded stepping paths:
// labels are decided by comparing (Ay)_j against theta_j.
struct StepOutcome {
  RVector image;      // A*y before the integer translation
  Label label;
  std::vector<int> hits;  // exact mode only
};

StepOutcome eval_branch_exact(const ExtendedSystem& sx, const RVector& y) {
  StepOutcome out;
  out.image = mat_vec(sx.A, y);
  out.label.resize(static_cast<std::size_t>(sx.d));
  for (int j = 0; j < sx.d; ++j) {
    int c = (out.image[j] < sx.arr.theta[j]) ? 1 : -1;
    if (out.image[j] == sx.arr.theta[j]) out.hits.push_back(j);
    out.label[static_cast<std::size_t>(j)] = static_cast<int8_t>(c);
  }
  return out;
}

RVector branch_translate(const ExtendedSystem& sx, const RVector& image, const Label& label) {
  RVector y = image;
  for (int j = 0; j < sx.d; ++j) {
    long long pj = (label[static_cast<std::size_t>(j)] > 0) ? 0 : 1;
    y[j] -= Rational(sx.k[static_cast<std::size_t>(j)] + pj, 1);
  }
  return y;
}

// Minimal cyclic period of a word: smallest divisor q0 of q with
// word[i] == word[i mod q0].
int minimal_word_period(const Itinerary& word) {
  const int q = static_cast<int>(word.size());
  for (int q0 = 1; q0 <= q; ++q0) {
    if (q % q0 != 0) continue;
    bool ok = true;
    for (int i = q0; i < q && ok; ++i) ok = (word[static_cast<std::size_t>(i)] == word[static_cast<std::size_t>(i % q0)]);
    if (ok) return q0;
  }
  return q;
}

struct Candidate {
  int q = 0;
  Itinerary word;
  RVector y_star;
  std::vector<RVector> cycle;  // w_0..w_{q-1}
  Rational delta;
  Rational need;  // delta * (1 - ||A||)
  long found_at = 0;
  Rational last_dist;
  bool has_last = false;
  int worse_streak = 0;
};

// Verifies a candidate word exactly: fixed point, itinerary match, strict
// margins. Returns nullopt when the word is not realized by its own fixed
// point.
std::optional<Candidate> verify_candidate(const ExtendedSystem& sx, Itinerary word) {
  const int d = sx.d;
  int q0 = minimal_word_period(word);
  word.resize(static_cast<std::size_t>(q0));

  AffineWord aw = compose_word(sx.A, sx.k, word);
  RMatrix M = RMatrix::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M.at(i, j) -= aw.power.at(i, j);
  RVector y_star;
  try {
    y_star = solve_linear(std::move(M), aw.shift);
  } catch (const singular_matrix&) {
    return std::nullopt;  // cannot happen for ||A|| < 1; reject defensively
  }

  Candidate cand;
  cand.q = q0;
  cand.word = word;
  cand.y_star = y_star;

  std::optional<Rational> delta;
  RVector w = y_star;
  for (int t = 0; t < q0; ++t) {
    RVector img = mat_vec(sx.A, w);
    const Letter& p = word[static_cast<std::size_t>(t)];
    for (int j = 0; j < d; ++j) {
      Rational diff = img[j] - sx.arr.theta[j];
      int s = diff.sign();
      if (s == 0) return std::nullopt;  // cycle touches a hyperplane
      if (p[static_cast<std::size_t>(j)] == 0 ? s > 0 : s < 0) return std::nullopt;
      Rational m = diff.abs() / sx.arr.row_norm[static_cast<std::size_t>(j)];
      if (!delta || m < *delta) delta = m;
    }
    cand.cycle.push_back(w);
    for (int j = 0; j < d; ++j)
      img[j] -= Rational(sx.k[static_cast<std::size_t>(j)] + p[static_cast<std::size_t>(j)], 1);
    w = std::move(img);
  }
  if (!(w == y_star)) return std::nullopt;

  // distinct cycle points (implied by word minimality; checked anyway)
  {
    std::vector<RVector> sorted = cand.cycle;
    std::sort(sorted.begin(), sorted.end(), [](const RVector& a, const RVector& b) {
      for (int i = 0; i < a.dim(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
      }
      return false;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1]) return std::nullopt;
  }

  cand.delta = *delta;
  cand.need = cand.delta * (Rational(1) - sx.a_norm);
  return cand;
}

struct ShadowPoint {
  double c[4];  // enough for the desk-scale dimensions; d > 4 falls back wide
};

}  // namespace

std::vector<TraceStep> iterate_orbit(const ExtendedSystem& sysX, const RVector& y0, long n,
                                     IterationMode mode, int precision_bits) {
  if (!in_ball(sysX, y0)) throw domain_error("iterate_orbit: y0 outside the ball X");
  std::vector<TraceStep> trace;
  trace.reserve(static_cast<std::size_t>(n));

  if (mode == IterationMode::Exact) {
    RVector y = y0;
    for (long t = 0; t < n; ++t) {
      StepOutcome so = eval_branch_exact(sysX, y);
      TraceStep ts;
      ts.point = y;
      ts.label = so.label;
      ts.regular = so.hits.empty();
      trace.push_back(ts);
      y = branch_translate(sysX, so.image, so.label);
    }
    return trace;
  }

  BoundedFloatState st = round_to_dyadic(y0, precision_bits);
  const Rational u = rounding_unit(precision_bits);
  for (long t = 0; t < n; ++t) {
    RVector c = st.point();
    RVector img = mat_vec(sysX.A, c);
    TraceStep ts;
    ts.point = c;
    ts.radius = st.error_radius;
    ts.label.resize(static_cast<std::size_t>(sysX.d));
    for (int j = 0; j < sysX.d; ++j) {
      Rational diff = img[j] - sysX.arr.theta[j];
      if (diff.abs() <= sysX.arr.row_norm[static_cast<std::size_t>(j)] * st.error_radius)
        ts.ambiguous = true;
      ts.label[static_cast<std::size_t>(j)] = (diff.sign() < 0) ? 1 : -1;
    }
    ts.regular = !ts.ambiguous;
    trace.push_back(ts);

    RVector next = branch_translate(sysX, img, ts.label);
    BoundedFloatState nst = round_to_dyadic(next, precision_bits);
    nst.error_radius = round_up_dyadic(sysX.a_norm * st.error_radius + u, precision_bits + 16);
    st = std::move(nst);
  }
  return trace;
}

OrbitVerdict certify(const ExtendedSystem& sx, const RVector& y0, const Budget& budget) {
  if (!in_ball(sx, y0)) throw domain_error("certify: y0 outside the ball X");
  if (budget.max_period < 1 || budget.max_steps < 1 || budget.candidate_attempts < 1)
    throw domain_error("certify: degenerate budget");
  const int d = sx.d;
  const Rational one(1);
  const Rational two_r = Rational(2) * sx.r;
  const Rational one_minus_a = one - sx.a_norm;
  // candidate proximity threshold 2^-20 * (1-||A||) * 2r
  const Rational tau = Rational::pow2(-20) * one_minus_a * two_r;
  const double tau_dbl = 1.5 * tau.to_double() + 1e-300;

  const int P = budget.max_period;
  const long RP = P + 1;
  const long RL = 2L * P;

  std::vector<RVector> ring_pt(static_cast<std::size_t>(RP));
  std::vector<Rational> ring_rad(static_cast<std::size_t>(RP));
  std::vector<ShadowPoint> ring_sh(static_cast<std::size_t>(RP));
  std::vector<Label> ring_lab(static_cast<std::size_t>(RL));

  std::optional<Candidate> active;
  int attempts = 0;

  // phase control: exact from step 0, dyadic from the bit-size switch point
  bool bounded = false;
  long phase_start = 0;
  RVector phase_point = y0;  // exact point at phase_start
  int precision = 0;
  int retries = 0;

  RVector ycur = y0;            // exact mode
  BoundedFloatState bst;        // bounded mode
  long n = 0;
  long ring_from = 0;  // ring entries are valid for steps >= ring_from

  OrbitVerdict out;

  auto shadow_of = [&](const RVector& y) {
    ShadowPoint s{};
    for (int i = 0; i < d && i < 4; ++i) s.c[i] = y[i].to_double();
    return s;
  };
  auto record = [&](const RVector& y, const Rational& rad) {
    ring_pt[static_cast<std::size_t>(n % RP)] = y;
    ring_rad[static_cast<std::size_t>(n % RP)] = rad;
    ring_sh[static_cast<std::size_t>(n % RP)] = shadow_of(y);
  };
  auto point_at = [&](long t) -> const RVector& { return ring_pt[static_cast<std::size_t>(t % RP)]; };
  auto radius_at = [&](long t) -> const Rational& { return ring_rad[static_cast<std::size_t>(t % RP)]; };
  auto label_at = [&](long t) -> const Label& { return ring_lab[static_cast<std::size_t>(t % RL)]; };

  auto undetermined = [&](const std::string& why) {
    out.kind = VerdictKind::Undetermined;
    out.reason = why;
    out.steps_used = n;
    return out;
  };

  auto burn_attempt = [&]() -> bool {
    ++attempts;
    active.reset();
    return attempts >= budget.candidate_attempts;
  };

  // returns true when the verdict is settled
  auto check_enclosure = [&]() -> bool {
    if (!active) return false;
    if ((n - active->found_at) % active->q != 0) return false;
    Rational dist = inf_norm(point_at(n) - active->cycle[0]) + radius_at(n);
    if (dist < active->need) {
      PeriodicOrbitCertificate cert;
      cert.q = active->q;
      cert.word = active->word;
      cert.point = active->y_star;
      cert.margin = active->delta;
      cert.witness_step = n;
      cert.phase = 0;
      cert.enclosure = dist;
      std::string why;
      if (!recheck_certificate(sx, cert, y0, budget, &why)) {
        out = OrbitVerdict{};
        out.kind = VerdictKind::Undetermined;
        out.reason = "soundness recheck failed: " + why;
        out.recheck_failed = true;
        out.steps_used = n;
        return true;
      }
      out.kind = VerdictKind::Certified;
      out.certificate = std::move(cert);
      out.steps_used = n;
      return true;
    }
    if (active->has_last && !(dist < active->last_dist)) {
      if (++active->worse_streak >= 2) {
        if (burn_attempt()) {
          undetermined("candidate attempts exhausted");
          return true;
        }
        return false;
      }
    } else {
      active->worse_streak = 0;
    }
    active->last_dist = dist;
    active->has_last = true;
    return false;
  };

  auto try_detect = [&]() -> bool {  // true when the verdict is settled
    if (active) return false;
    long span = n - ring_from;
    long qmax = std::min<long>(P, span / 2);
    const ShadowPoint& sn = ring_sh[static_cast<std::size_t>(n % RP)];
    for (long q = 1; q <= qmax; ++q) {
      const ShadowPoint& sq = ring_sh[static_cast<std::size_t>((n - q) % RP)];
      bool near = true;
      for (int i = 0; i < d && i < 4; ++i)
        if (std::fabs(sn.c[i] - sq.c[i]) > tau_dbl) { near = false; break; }
      if (!near) continue;
      bool lab_ok = true;
      for (long t = 0; t < q && lab_ok; ++t)
        lab_ok = (label_at(n - q + t) == label_at(n - 2 * q + t));
      if (!lab_ok) continue;
      if (!(inf_norm(point_at(n) - point_at(n - q)) < tau)) continue;

      Itinerary word;
      word.reserve(static_cast<std::size_t>(q));
      for (long t = n - q; t < n; ++t) word.push_back(label_to_p(label_at(t)));
      std::optional<Candidate> cand = verify_candidate(sx, std::move(word));
      if (!cand) {
        if (burn_attempt()) {
          undetermined("candidate attempts exhausted");
          return true;
        }
        continue;
      }
      cand->found_at = n;
      active = std::move(cand);
      return check_enclosure();
    }
    return false;
  };

  record(ycur, Rational(0));
  if (try_detect()) return out;

  while (true) {
    if (n >= budget.max_steps) return undetermined("step budget exhausted");

    if (!bounded) {
      StepOutcome so = eval_branch_exact(sx, ycur);
      if (!so.hits.empty()) {
        out.kind = VerdictKind::HitDiscontinuity;
        out.hit_step = n;
        out.hit_hyperplanes = so.hits;
        out.steps_used = n;
        return out;
      }
      ring_lab[static_cast<std::size_t>(n % RL)] = so.label;
      ycur = branch_translate(sx, so.image, so.label);
      ++n;
      record(ycur, Rational(0));

      if (max_bit_size(ycur) > static_cast<std::size_t>(budget.bits_cap)) {
        bounded = true;
        phase_start = n;
        phase_point = ycur;
        Rational target = tau / Rational(4);
        precision = choose_precision_bits(sx.a_norm, target, budget.min_precision_bits);
        bst = round_to_dyadic(phase_point, precision);
      }
    } else {
      RVector c = bst.point();
      RVector img = mat_vec(sx.A, c);
      bool ambiguous = false;
      Label lab(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        Rational diff = img[j] - sx.arr.theta[j];
        if (diff.abs() <= sx.arr.row_norm[static_cast<std::size_t>(j)] * bst.error_radius) {
          ambiguous = true;
          break;
        }
        lab[static_cast<std::size_t>(j)] = (diff.sign() < 0) ? 1 : -1;
      }
      if (ambiguous) {
        if (retries >= budget.precision_retries)
          return undetermined("label ambiguity at available precision");
        ++retries;
        precision *= 2;
        bst = round_to_dyadic(phase_point, precision);
        n = phase_start;
        ring_from = phase_start;
        record(bst.point(), bst.error_radius);
        if (active) {
          active->has_last = false;
          active->worse_streak = 0;
        }
        continue;
      }
      ring_lab[static_cast<std::size_t>(n % RL)] = lab;
      RVector next = branch_translate(sx, img, lab);
      BoundedFloatState nst = round_to_dyadic(next, precision);
      nst.error_radius =
          round_up_dyadic(sx.a_norm * bst.error_radius + rounding_unit(precision), precision + 16);
      bst = std::move(nst);
      ++n;
      record(bst.point(), bst.error_radius);

      // once a candidate pins the margin, make sure the steady-state radius
      // cannot mask the enclosure test
      if (active) {
        Rational steady = rounding_unit(precision) / one_minus_a;
        if (!(steady < active->need / Rational(4))) {
          if (retries >= budget.precision_retries)
            return undetermined("precision ladder exhausted for margin");
          ++retries;
          precision = choose_precision_bits(sx.a_norm, active->need / Rational(8), precision * 2);
          bst = round_to_dyadic(phase_point, precision);
          n = phase_start;
          ring_from = phase_start;
          record(bst.point(), bst.error_radius);
          active->has_last = false;
          active->worse_streak = 0;
          continue;
        }
      }
    }

    if (check_enclosure()) return out;
    if (try_detect()) return out;
  }
}

namespace {

std::vector<RVector> walk_cycle(const ExtendedSystem& sx, const PeriodicOrbitCertificate& cert) {
  std::vector<RVector> pts;
  RVector w = cert.point;
  for (int t = 0; t < cert.q; ++t) {
    pts.push_back(w);
    w = apply_phi(sx, cert.word[static_cast<std::size_t>(t)], w);
  }
  return pts;
}

bool lex_less(const RVector& a, const RVector& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

ScanReport attractor_scan(const ContractedRotation& sys, const std::vector<RVector>& grid,
                          const Budget& budget, int jobs) {
  for (const RVector& x : grid)
    if (!in_unit_cube(x)) throw domain_error("attractor_scan: grid point outside [0,1)^d");

  TranslatedCube conj = make_translated_cube(sys);
  ExtendedSystem sx = extended_from(sys);

  std::vector<OrbitVerdict> verdicts(grid.size());
  int njobs = jobs;
  if (njobs <= 0) njobs = static_cast<int>(std::thread::hardware_concurrency());
  if (njobs < 1) njobs = 1;
  njobs = std::min<int>(njobs, static_cast<int>(grid.size()) == 0 ? 1 : static_cast<int>(grid.size()));

  auto work = [&](std::size_t i) {
    RVector y0 = h_inverse(conj, grid[i]);
    try {
      verdicts[i] = certify(sx, y0, budget);
    } catch (const std::exception& e) {
      OrbitVerdict v;
      v.kind = VerdictKind::Undetermined;
      v.reason = std::string("error: ") + e.what();
      verdicts[i] = std::move(v);
    }
  };

  if (njobs == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(njobs));
    for (int t = 0; t < njobs; ++t)
      pool.emplace_back([&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= grid.size()) return;
          work(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  ScanReport rep;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const OrbitVerdict& v = verdicts[i];
    ScanOutcome oc;
    oc.kind = v.kind;
    oc.reason = v.reason;
    oc.hit_step = v.hit_step;
    oc.hit_hyperplanes = v.hit_hyperplanes;
    if (v.recheck_failed) ++rep.recheck_failures;
    switch (v.kind) {
      case VerdictKind::Certified: {
        ++rep.certified;
        std::vector<RVector> cyc = walk_cycle(sx, *v.certificate);
        std::vector<RVector> key = cyc;
        std::sort(key.begin(), key.end(), lex_less);
        int found = -1;
        for (std::size_t k = 0; k < rep.orbits.size(); ++k) {
          std::vector<RVector> other = rep.orbits[k].points_y;
          std::sort(other.begin(), other.end(), lex_less);
          if (other == key) { found = static_cast<int>(k); break; }
        }
        if (found < 0) {
          DistinctOrbit orb;
          orb.q = v.certificate->q;
          orb.points_y = cyc;
          for (const RVector& w : cyc) orb.points_x.push_back(h_apply(conj, w));
          orb.certificate = *v.certificate;
          rep.orbits.push_back(std::move(orb));
          found = static_cast<int>(rep.orbits.size()) - 1;
        }
        oc.orbit_index = found;
        break;
      }
      case VerdictKind::HitDiscontinuity:
        ++rep.hits;
        break;
      case VerdictKind::Undetermined:
        ++rep.undetermined;
        break;
    }
    rep.outcomes.push_back(std::move(oc));
  }
  rep.all_certified = !grid.empty() && rep.certified == static_cast<long>(grid.size());
  return rep;
}

}  // namespace pcrot
