#include "pcrot/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include "pcrot/errors.hpp"

namespace pcrot {

Rational random_unit_rational(Rng& rng, int denom_log2) {
  long long den = 1LL << denom_log2;
  long long num = rng.below(den);
  return Rational(num, den);
}

Rational random_signed_rational(Rng& rng, int denom_log2) {
  long long den = 1LL << denom_log2;
  long long num = rng.below(2 * den - 1) - (den - 1);  // [-(den-1), den-1]
  return Rational(num, den);
}

RVector random_cube_point(Rng& rng, int d, int denom_log2) {
  RVector x(d);
  for (int i = 0; i < d; ++i) x[i] = random_unit_rational(rng, denom_log2);
  return x;
}

ContractedRotation random_system(Rng& rng, int d, int denom_log2) {
  for (int tries = 0; tries < 256; ++tries) {
    RMatrix A(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A.at(i, j) = random_signed_rational(rng, denom_log2);
    Rational nrm = inf_norm(A);
    if (nrm.is_zero()) continue;
    // target norm in [1/4, 9/10]
    Rational t = Rational(1, 4) + Rational(13, 20) * random_unit_rational(rng, denom_log2);
    Rational scale = t / nrm;
    for (auto& e : A.a) e *= scale;
    if (determinant(A).is_zero()) continue;
    RVector b = random_cube_point(rng, d, denom_log2);
    return ContractedRotation::make(std::move(A), std::move(b));
  }
  throw domain_error("random_system: rejection sampling failed");
}

ContractedRotation random_system_dyadic(Rng& rng, int d, int denom_log2,
                                        const Rational& norm_cap) {
  long long den = 1LL << denom_log2;
  for (int tries = 0; tries < 4096; ++tries) {
    RMatrix A(d);
    bool rows_ok = true;
    for (int i = 0; i < d && rows_ok; ++i) {
      int row_tries = 0;
      while (true) {
        long long abs_sum = 0;
        for (int j = 0; j < d; ++j) {
          long long num = rng.below(2 * den - 1) - (den - 1);
          A.at(i, j) = Rational(num, den);
          abs_sum += num < 0 ? -num : num;
        }
        if (Rational(abs_sum, den) < norm_cap) break;  // row sum of |a_ij| under the cap
        if (++row_tries > 4096) { rows_ok = false; break; }
      }
    }
    if (!rows_ok) continue;
    if (determinant(A).is_zero()) continue;
    RVector b(d);
    for (int i = 0; i < d; ++i) b[i] = Rational(rng.below(den), den);
    return ContractedRotation::make(std::move(A), std::move(b));
  }
  throw domain_error("random_system_dyadic: rejection sampling failed");
}

std::vector<RVector> make_grid(int d, int per_axis) {
  if (per_axis < 1) throw domain_error("make_grid: per_axis < 1");
  std::vector<RVector> pts;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;
  pts.reserve(static_cast<std::size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    RVector x(d);
    long rest = idx;
    for (int i = 0; i < d; ++i) {
      long c = rest % per_axis;
      rest /= per_axis;
      x[i] = Rational(2 * c + 1, 2LL * per_axis);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

namespace {

struct SamplePlan {
  RMatrix A;
  RVector b;
};

std::vector<SamplePlan> plan_samples(const SweepSpec& spec) {
  Rng rng(spec.seed);
  std::vector<SamplePlan> plan;

  std::vector<RVector> bs;
  if (spec.sampler == BSampler::Grid) {
    long n = spec.grid_per_axis;
    long total = 1;
    for (int i = 0; i < spec.d; ++i) total *= n;
    for (long idx = 0; idx < total; ++idx) {
      RVector b(spec.d);
      long rest = idx;
      for (int i = 0; i < spec.d; ++i) {
        b[i] = Rational(rest % n, n);
        rest /= n;
      }
      bs.push_back(std::move(b));
    }
  } else {
    for (long s = 0; s < spec.samples; ++s) bs.push_back(random_cube_point(rng, spec.d, spec.denom_log2));
  }

  for (auto& b : bs) {
    SamplePlan sp;
    if (spec.A.has_value()) {
      sp.A = *spec.A;
    } else {
      Rational bound = spec.a_norm_bound.value_or(Rational(9, 10));
      for (int tries = 0;; ++tries) {
        RMatrix A(spec.d);
        for (int i = 0; i < spec.d; ++i)
          for (int j = 0; j < spec.d; ++j) A.at(i, j) = random_signed_rational(rng, spec.denom_log2);
        Rational nrm = inf_norm(A);
        if (nrm.is_zero()) continue;
        Rational t = bound * (Rational(1, 4) + Rational(3, 4) * random_unit_rational(rng, spec.denom_log2));
        Rational scale = t / nrm;
        for (auto& e : A.a) e *= scale;
        if (!determinant(A).is_zero()) { sp.A = std::move(A); break; }
        if (tries > 256) throw domain_error("run_sweep: could not sample an invertible A");
      }
    }
    sp.b = std::move(b);
    plan.push_back(std::move(sp));
  }
  return plan;
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec) {
  std::vector<SamplePlan> plan = plan_samples(spec);
  std::vector<RVector> grid = make_grid(spec.d, spec.init_per_axis);

  SweepReport rep;
  rep.samples = static_cast<long>(plan.size());
  rep.grid_size = static_cast<long>(grid.size());
  rep.per_b.resize(plan.size());

  int njobs = spec.jobs;
  if (njobs <= 0) njobs = static_cast<int>(std::thread::hardware_concurrency());
  if (njobs < 1) njobs = 1;
  njobs = std::min<int>(njobs, plan.empty() ? 1 : static_cast<int>(plan.size()));

  auto work = [&](std::size_t i) {
    PerSampleRecord rec;
    rec.b = plan[i].b;
    try {
      ContractedRotation sys = ContractedRotation::make(plan[i].A, plan[i].b);
      rec.k = chi(sys);
      ScanReport scan = attractor_scan(sys, grid, spec.budget, 1);
      rec.certified = scan.certified;
      rec.hits = scan.hits;
      rec.undetermined = scan.undetermined;
      rec.recheck_failures = scan.recheck_failures;
      std::set<int> ps;
      for (const auto& orb : scan.orbits) ps.insert(orb.q);
      rec.periods.assign(ps.begin(), ps.end());
      rec.fully_certified = (rec.undetermined == 0) && (rec.certified + rec.hits == rep.grid_size);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rep.per_b[i] = std::move(rec);
  };

  if (njobs == 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < njobs; ++t)
      pool.emplace_back([&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= plan.size()) return;
          work(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& rec : rep.per_b) {
    rep.verdicts_certified += rec.certified;
    rep.verdicts_hit += rec.hits;
    rep.verdicts_undetermined += rec.undetermined;
    rep.recheck_failures += rec.recheck_failures;
    if (rec.error.empty() && rec.fully_certified) ++rep.fully_certified;
    for (int p : rec.periods) ++rep.period_histogram[p];
  }
  if (rep.samples > 0) {
    rep.certified_fraction = Rational(rep.fully_certified, rep.samples);
    long total = rep.samples * rep.grid_size;
    rep.undetermined_fraction = total > 0 ? Rational(rep.verdicts_undetermined, total) : Rational(0);
  }
  return rep;
}

namespace {

struct SuiteState {
  LemmaResult res;
  void fail(const std::string& cx) {
    if (res.pass) {
      res.pass = false;
      res.counterexample = cx;
    }
  }
};

std::string describe(const RVector& x) {
  std::string s = "(";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) s += ", ";
    s += x[i].str();
  }
  return s + ")";
}

// Brute-force grid oracle for chi: floor of the minimum of (Ax+b)_j over a
// grid of [0,1)^d that includes points close to the open upper faces.
IntVector chi_grid_oracle(const ContractedRotation& sys, int per_axis) {
  std::vector<Rational> axis;
  for (int i = 0; i < per_axis; ++i) axis.push_back(Rational(i, per_axis));
  axis.push_back(Rational(1) - Rational::pow2(-40));

  IntVector out(static_cast<std::size_t>(sys.d));
  long npts = 1;
  for (int i = 0; i < sys.d; ++i) npts *= static_cast<long>(axis.size());
  for (int j = 0; j < sys.d; ++j) {
    std::optional<Rational> best;
    for (long idx = 0; idx < npts; ++idx) {
      long rest = idx;
      RVector x(sys.d);
      for (int i = 0; i < sys.d; ++i) {
        x[i] = axis[static_cast<std::size_t>(rest % static_cast<long>(axis.size()))];
        rest /= static_cast<long>(axis.size());
      }
      Rational w = sys.b[j];
      for (int l = 0; l < sys.d; ++l) w += sys.A.at(j, l) * x[l];
      if (!best || w < *best) best = w;
    }
    out[static_cast<std::size_t>(j)] = best->floor_ll();
  }
  return out;
}

}  // namespace

std::vector<LemmaResult> verify_properties(uint64_t seed, long counts, int n_systems,
                                           const PropertyHooks* hooks) {
  Rng rng(seed);
  std::vector<ContractedRotation> systems;
  for (int i = 0; i < n_systems; ++i) systems.push_back(random_system(rng, 1 + (i % 3)));

  long per_sys = n_systems > 0 ? std::max<long>(1, counts / n_systems) : 0;
  const bool vacuous = (counts <= 0) || systems.empty();

  std::vector<SuiteState> suites;
  auto add = [&](const std::string& name) {
    SuiteState s;
    s.res.name = name;
    suites.push_back(std::move(s));
    return suites.size() - 1;
  };

  std::size_t s_contr = add("core.matrix_contraction");
  std::size_t s_resid = add("core.resolvent_residual");
  std::size_t s_ff = add("core.floor_frac");
  std::size_t s_inj = add("lemma2.2.injectivity");
  std::size_t s_per = add("lemma2.2.b_periodicity");
  std::size_t s_rng = add("lemma2.2.code_range");
  std::size_t s_shift = add("lemma2.3.chi_shift");
  std::size_t s_chir = add("lemma2.3.chi_range");
  std::size_t s_part = add("lemma2.3.partition");
  std::size_t s_grid = add("lemma2.3.chi_grid_oracle");
  std::size_t s_conj = add("lemma2.4.conjugacy");
  std::size_t s_lab = add("lemma2.6.label_domain");
  std::size_t s_br = add("lemma2.6.branch_agreement");
  std::size_t s_ball = add("lemma2.7.ball_invariance");
  std::size_t s_cube = add("lemma2.10.cube_in_ball");
  std::size_t s_ext = add("lemma2.10.extension_identity");
  std::size_t s_cell = add("g.contraction_within_cell");
  std::size_t s_sh = add("bounded.shadowing");

  if (vacuous) {
    for (auto& s : suites) {
      s.res.samples = 0;
      s.res.counterexample = "no samples";
    }
    std::vector<LemmaResult> out;
    for (auto& s : suites) out.push_back(std::move(s.res));
    return out;
  }

  for (const ContractedRotation& sys : systems) {
    const int d = sys.d;
    TranslatedCube conj = make_translated_cube(sys);
    ExtendedSystem sx = extended_from(sys);
    IntVector k = chi(sys);
    IntVector k_used = k;
    if (hooks != nullptr && hooks->chi_corrupt_coord >= 0 && hooks->chi_corrupt_coord < d)
      k_used[static_cast<std::size_t>(hooks->chi_corrupt_coord)] += hooks->chi_corrupt_delta;
    std::vector<ContinuityDomain> doms = continuity_domains(sys);
    RVector offset = conj.offset;
    Rational two_r = Rational(2) * sx.r;

    // per-system exact facts
    {
      RVector v = solve_resolvent(sys.A, sys.b);
      RVector res = sys.b;
      RVector Iv = v;
      RVector Av = mat_vec(sys.A, v);
      for (int i = 0; i < d; ++i) res[i] -= (Iv[i] - Av[i]);
      suites[s_resid].res.samples++;
      if (!(inf_norm(res).is_zero()))
        suites[s_resid].fail("nonzero residual for system with b=" + describe(sys.b));

      suites[s_cube].res.samples++;
      Rational lhs = (Rational(2) - sys.a_norm) / (Rational(1) - sys.a_norm);
      if (!(lhs < two_r)) suites[s_cube].fail("(2-a)/(1-a) >= 2r");

      suites[s_grid].res.samples++;
      if (chi_grid_oracle(sys, d <= 2 ? 16 : 8) != k)
        suites[s_grid].fail("closed-form chi mismatch, b=" + describe(sys.b));
    }

    for (long it = 0; it < per_sys; ++it) {
      RVector x = random_cube_point(rng, d);
      RVector y = random_cube_point(rng, d);

      {
        suites[s_contr].res.samples++;
        RVector diff = x - y;
        if (!(inf_norm(mat_vec(sys.A, diff)) <= sys.a_norm * inf_norm(diff)))
          suites[s_contr].fail("||A(x-y)|| > ||A|| ||x-y|| at x=" + describe(x));
      }
      {
        suites[s_ff].res.samples++;
        RVector z(d);
        for (int i = 0; i < d; ++i) z[i] = random_signed_rational(rng) * Rational(3);
        auto [fl, fr] = floor_frac(z);
        bool ok = true;
        for (int i = 0; i < d; ++i) {
          if (fr[i].sign() < 0 || !(fr[i] < Rational(1))) ok = false;
          if (!(Rational(fl[static_cast<std::size_t>(i)], 1) + fr[i] == z[i])) ok = false;
        }
        if (!ok) suites[s_ff].fail("floor_frac broken at " + describe(z));
      }
      {
        suites[s_inj].res.samples++;
        if (!(x == y) && apply_f(sys, x) == apply_f(sys, y))
          suites[s_inj].fail("f collision at " + describe(x) + " vs " + describe(y));
      }
      {
        suites[s_per].res.samples++;
        RVector bp = sys.b;
        for (int i = 0; i < d; ++i) bp[i] += Rational(rng.below(5) - 2, 1);
        ContractedRotation sys2 = ContractedRotation::make(sys.A, bp);
        if (!(apply_f(sys2, x) == apply_f(sys, x)))
          suites[s_per].fail("f_{b+p} != f_b at " + describe(x));
      }
      {
        suites[s_rng].res.samples++;
        IntVector e = code_e(sys, x);
        for (long long ej : e)
          if (ej < -1 || ej > 1) suites[s_rng].fail("code outside {-1,0,1}^d at " + describe(x));
      }
      {
        suites[s_shift].res.samples++;
        RVector br(d);
        for (int i = 0; i < d; ++i) br[i] = random_signed_rational(rng) * Rational(3);
        ContractedRotation sysr = ContractedRotation::make(sys.A, br);
        auto [fl, fr] = floor_frac(br);
        ContractedRotation sysf = ContractedRotation::make(sys.A, fr);
        IntVector c1 = chi(sysr);
        IntVector c2 = chi(sysf);
        bool ok = true;
        for (int i = 0; i < d; ++i)
          if (c1[static_cast<std::size_t>(i)] != c2[static_cast<std::size_t>(i)] + fl[static_cast<std::size_t>(i)]) ok = false;
        if (!ok) suites[s_shift].fail("chi shift identity failed at b=" + describe(br));
      }
      {
        suites[s_chir].res.samples++;
        for (long long kj : k)
          if (kj != 0 && kj != -1) suites[s_chir].fail("chi outside {-1,0}^d");
      }
      {
        suites[s_part].res.samples++;
        IntVector e = code_e(sys, x);
        bool ok = true;
        for (int i = 0; i < d; ++i) {
          long long pi = e[static_cast<std::size_t>(i)] - k_used[static_cast<std::size_t>(i)];
          if (pi != 0 && pi != 1) ok = false;
        }
        int members = 0;
        for (const auto& dom : doms)
          if (membership(sys, dom, x)) {
            ++members;
            if (!dom.non_empty) ok = false;
            if (dom.code != e) ok = false;
          }
        if (members != 1) ok = false;
        if (!ok) suites[s_part].fail("partition violated at x=" + describe(x));
      }
      {
        suites[s_conj].res.samples++;
        RVector yy = h_inverse(conj, x);  // uniform in D_b
        RVector g1 = apply_g(sys, conj, yy);
        RVector g2 = h_inverse(conj, apply_f(sys, h_apply(conj, yy)));
        if (!(g1 == g2)) suites[s_conj].fail("g != h^-1 f h at y=" + describe(yy));
      }
      {
        suites[s_lab].res.samples++;
        RVector yy = h_inverse(conj, x);
        IntVector e = code_e(sys, x);
        Letter p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
          p[static_cast<std::size_t>(i)] = static_cast<uint8_t>(e[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(i)]);
        if (label_sigma(sx.arr, yy) != p_to_label(p))
          suites[s_lab].fail("sigma label != (-1)^p at x=" + describe(x));
      }
      {
        suites[s_br].res.samples++;
        RVector yy = h_inverse(conj, x);
        IntVector e = code_e(sys, x);
        RVector expect = mat_vec(sys.A, yy) - int_to_rvector(e);
        if (!(apply_g(sys, conj, yy) == expect))
          suites[s_br].fail("branch formula mismatch at x=" + describe(x));
      }
      {
        suites[s_ball].res.samples++;
        RVector yy(d);
        bool boundary = (it % 4 == 0);
        for (int i = 0; i < d; ++i) yy[i] = random_signed_rational(rng) * two_r;
        if (boundary) yy[static_cast<int>(rng.below(d))] = (rng.below(2) == 0 ? two_r : -two_r);
        bool ok = true;
        for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << d); ++mask) {
          Letter p(static_cast<std::size_t>(d));
          for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1;
          if (!(inf_norm(apply_phi(sx, p, yy)) < two_r)) ok = false;
        }
        if (!ok) suites[s_ball].fail("phi image leaves the open ball at y=" + describe(yy));
      }
      {
        suites[s_cube].res.samples++;
        RVector yy = h_inverse(conj, x);
        if (!(inf_norm(yy) < two_r)) suites[s_cube].fail("D_b point outside the open ball");
      }
      {
        suites[s_ext].res.samples++;
        RVector yy = h_inverse(conj, x);
        GResult gr = apply_G(sx, yy);
        if (!(gr.y == apply_g(sys, conj, yy)))
          suites[s_ext].fail("G != g on D_b at y=" + describe(yy));
      }
      {
        suites[s_cell].res.samples++;
        RVector y1 = h_inverse(conj, x);
        RVector y2 = h_inverse(conj, y);
        if (label_sigma(sx.arr, y1) == label_sigma(sx.arr, y2)) {
          RVector d1 = apply_G(sx, y1).y - apply_G(sx, y2).y;
          if (!(inf_norm(d1) <= sys.a_norm * inf_norm(y1 - y2)))
            suites[s_cell].fail("cell contraction failed");
        }
      }
    }

    {
      // dual-run shadowing over a short orbit
      suites[s_sh].res.samples++;
      RVector y0 = h_inverse(conj, random_cube_point(rng, d));
      long steps = 200;
      auto exact = iterate_orbit(sx, y0, steps, IterationMode::Exact);
      auto bnd = iterate_orbit(sx, y0, steps, IterationMode::Bounded, 96);
      bool ok = true;
      for (long t = 0; t < steps && ok; ++t) {
        const auto& eb = exact[static_cast<std::size_t>(t)];
        const auto& bb = bnd[static_cast<std::size_t>(t)];
        if (!(inf_norm(eb.point - bb.point) <= bb.radius)) ok = false;
        if (!bb.ambiguous && eb.label != bb.label) ok = false;
      }
      if (!ok) suites[s_sh].fail("bounded shadow lost the exact orbit");
    }
  }

  std::vector<LemmaResult> out;
  for (auto& s : suites) out.push_back(std::move(s.res));
  return out;
}

bool all_pass(const std::vector<LemmaResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace pcrot
