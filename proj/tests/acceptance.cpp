// Acceptance suite: one pass/fail line per criterion.
//
//   pcrot_acceptance                 run all criteria
//   pcrot_acceptance --criterion N   run a single criterion
//   pcrot_acceptance --write-goldens regenerate the committed raster goldens
//
// Exit code = number of failed criteria.

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pcrot/serialize.hpp"

using namespace pcrot;

namespace {

const std::string kDataDir = PCROT_TEST_DATA_DIR;

ContractedRotation figure1() { return load_system(kDataDir + "/figure1.json"); }

std::string render_p6(const Raster& r) {
  std::ostringstream os;
  os << "P6\n" << r.width << " " << r.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(r.image_rgb.data()),
           static_cast<std::streamsize>(r.image_rgb.size()));
  return os.str();
}

std::string render_p5(const Raster& r) {
  std::ostringstream os;
  os << "P5\n" << r.width << " " << r.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(r.mask_gray.data()),
           static_cast<std::streamsize>(r.mask_gray.size()));
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

json certify_figure_x0_json(const ContractedRotation& sys, const RVector& x0, const Budget& budget) {
  TranslatedCube t = make_translated_cube(sys);
  ExtendedSystem sx = extended_from(sys);
  OrbitVerdict v = certify(sx, h_inverse(t, x0), budget);
  return verdict_to_json(v, system_hash(sys));
}

SweepSpec theorem_surrogate_spec() {
  SweepSpec spec;
  spec.d = 2;
  spec.A = figure1().A;
  spec.sampler = BSampler::Random;
  spec.samples = 200;
  spec.seed = 1;
  spec.denom_log2 = 31;
  spec.init_per_axis = 4;  // 16 initial conditions
  spec.jobs = 0;
  return spec;
}

// ---- criteria ----

Check criterion1() {
  Check c;
  ContractedRotation sys = figure1();
  c.require(chi(sys) == IntVector{0, 0}, "chi(b) != (0,0)");

  auto doms = continuity_domains(sys);
  c.require(doms.size() == 4, "expected 4 candidate domains");
  for (const auto& dom : doms) {
    c.require(dom.non_empty, "an E_b(chi+p) is empty");
    for (std::size_t j = 0; j < dom.p.size(); ++j)
      c.require(dom.code[j] == dom.p[j], "codes are not {0,1}^2");
  }

  Raster r = raster(sys, 512, 512);
  std::string golden_img = slurp(kDataDir + "/figure1_codes_512.ppm");
  std::string golden_mask = slurp(kDataDir + "/figure1_mask_512.pgm");
  c.require(!golden_img.empty() && !golden_mask.empty(), "golden rasters missing");
  c.require(render_p6(r) == golden_img, "codes raster differs from the golden");
  c.require(render_p5(r) == golden_mask, "mask raster differs from the golden");
  return c;
}

Check criterion2() {
  Check c;
  auto results = verify_properties(1, 10000, 100);
  for (const auto& r : results)
    c.require(r.pass, r.name + " failed: " + r.counterexample);
  return c;
}

Check criterion3() {
  Check c;
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    ContractedRotation sys = random_system(rng, 1 + (i % 3));
    if (!(chi(sys) == oracle::chi_grid(sys))) {
      c.require(false, "chi mismatch on system " + std::to_string(i));
      break;
    }
  }
  return c;
}

Check criterion4() {
  Check c;
  RMatrix A(1);
  A.at(0, 0) = Rational(1, 2);
  ContractedRotation sys = ContractedRotation::make(A, RVector{Rational(7, 10)});
  TranslatedCube t = make_translated_cube(sys);
  ExtendedSystem sx = extended_from(sys);
  RVector y0 = h_inverse(t, RVector{Rational(0)});
  OrbitVerdict v = certify(sx, y0, Budget{});
  c.require(v.kind == VerdictKind::Certified, "verdict is not Certified");
  if (v.kind != VerdictKind::Certified) return c;
  const auto& cert = *v.certificate;
  c.require(cert.q == 2, "period != 2");
  c.require(cert.point == RVector{Rational(-4, 3)}, "fixed point != -4/3");
  RVector w1 = apply_phi(sx, cert.word[0], cert.point);
  c.require(h_apply(t, cert.point) == RVector{Rational(1, 15)}, "orbit point != 1/15");
  c.require(h_apply(t, w1) == RVector{Rational(11, 15)}, "orbit point != 11/15");
  std::string why;
  c.require(recheck_certificate(sx, cert, y0, Budget{}, &why), "recheck failed: " + why);
  return c;
}

Check criterion5() {
  Check c;
  Rng rng(5);
  Budget budget;
  long compared = 0;
  for (int i = 0; i < 150; ++i) {
    int d = (i < 100) ? 1 : 2;
    ContractedRotation sys = random_system_dyadic(rng, d, 10, Rational(9, 10));
    RVector x0(d);
    for (int j = 0; j < d; ++j) x0[j] = Rational(1, 2);
    TranslatedCube t = make_translated_cube(sys);
    ExtendedSystem sx = extended_from(sys);
    OrbitVerdict v = certify(sx, h_inverse(t, x0), budget);
    if (v.kind != VerdictKind::Certified) continue;
    auto per = oracle::f_orbit_period(sys, x0, 20000, 512);
    c.require(per.has_value(),
              "oracle could not confirm a Certified case (system " + std::to_string(i) + ")");
    if (!per) continue;
    ++compared;
    c.require(per->q == v.certificate->q,
              "period mismatch on system " + std::to_string(i) + ": certified " +
                  std::to_string(v.certificate->q) + " vs oracle " + std::to_string(per->q));
  }
  c.require(compared > 100, "too few Certified cases to compare: " + std::to_string(compared));
  return c;
}

Check criterion6(std::string* sweep_json_out = nullptr, std::string* sweep_csv_out = nullptr) {
  Check c;
  SweepSpec spec = theorem_surrogate_spec();
  SweepReport rep = run_sweep(spec);
  c.require(rep.samples == 200, "sample count != 200");
  c.require(rep.certified_fraction >= Rational(19, 20),
            "certified fraction below 0.95: " + rep.certified_fraction.str());
  c.require(rep.recheck_failures == 0, "soundness recheck failures present");
  long verdicts = rep.verdicts_certified + rep.verdicts_hit + rep.verdicts_undetermined;
  c.require(verdicts == rep.samples * rep.grid_size, "verdict counts do not sum up");
  std::cout << "  [criterion 6] certified fraction = " << rep.certified_fraction.str() << " ("
            << rep.certified_fraction.to_double() << "), undetermined fraction = "
            << rep.undetermined_fraction.str() << " (" << rep.undetermined_fraction.to_double()
            << ")\n";
  if (sweep_json_out != nullptr) *sweep_json_out = sweep_report_to_json(rep, spec).dump(2);
  if (sweep_csv_out != nullptr) *sweep_csv_out = sweep_report_csv(rep);
  return c;
}

Check criterion7() {
  Check c;
  // criterion 1 output, twice
  ContractedRotation sys = figure1();
  Raster r1 = raster(sys, 512, 512);
  Raster r2 = raster(sys, 512, 512);
  c.require(render_p6(r1) == render_p6(r2), "raster bytes differ between runs");
  c.require(render_p5(r1) == render_p5(r2), "mask bytes differ between runs");

  // criterion 4 output, twice
  RMatrix A(1);
  A.at(0, 0) = Rational(1, 2);
  ContractedRotation p2 = ContractedRotation::make(A, RVector{Rational(7, 10)});
  json c1 = certify_figure_x0_json(p2, RVector{Rational(0)}, Budget{});
  json c2 = certify_figure_x0_json(p2, RVector{Rational(0)}, Budget{});
  c.require(c1.dump() == c2.dump(), "certificate JSON differs between runs");

  // criterion 6 output, twice
  std::string j1, csv1, j2, csv2;
  Check s1 = criterion6(&j1, &csv1);
  Check s2 = criterion6(&j2, &csv2);
  c.require(s1.ok && s2.ok, "criterion 6 failed during the determinism re-run");
  c.require(j1 == j2, "sweep JSON differs between runs");
  c.require(csv1 == csv2, "sweep CSV differs between runs");
  return c;
}

Check criterion8() {
  Check c;
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    int d = 1 + (i % 2);
    ContractedRotation sys = random_system_dyadic(rng, d, 10, Rational(9, 10));
    TranslatedCube t = make_translated_cube(sys);
    ExtendedSystem sx = extended_from(sys);
    RVector y0 = h_inverse(t, random_cube_point(rng, d, 10));
    auto exact = iterate_orbit(sx, y0, 1000, IterationMode::Exact);
    auto bounded = iterate_orbit(sx, y0, 1000, IterationMode::Bounded, 80);
    for (std::size_t s = 0; s < exact.size(); ++s) {
      if (!(inf_norm(exact[s].point - bounded[s].point) <= bounded[s].radius)) {
        c.require(false, "exact point escaped the radius, system " + std::to_string(i) +
                             " step " + std::to_string(s));
        return c;
      }
      if (!bounded[s].ambiguous && exact[s].label != bounded[s].label) {
        c.require(false, "label mismatch on unambiguous step, system " + std::to_string(i));
        return c;
      }
    }
  }
  return c;
}

struct Criterion {
  int id;
  const char* summary;
  double time_limit_s;
  Check (*fn)();
};

Check run6() { return criterion6(nullptr, nullptr); }

const Criterion kCriteria[] = {
    {1, "figure-1 reproduction (chi, domains, 512x512 golden raster)", 5.0, criterion1},
    {2, "exact lemma suites, 10^4 samples over 100 systems", 120.0, criterion2},
    {3, "chi closed form vs grid oracle on 10^3 systems", 600.0, criterion3},
    {4, "period-2 certificate {1/15, 11/15} with soundness recheck", 1.0, criterion4},
    {5, "certified periods match the brute-force oracle (150 systems)", 300.0, criterion5},
    {6, "asymptotic periodicity surrogate sweep (200 b, 16 inits)", 900.0, run6},
    {7, "byte-identical reruns of criteria 1, 4, 6", 1800.0, criterion7},
    {8, "bounded-arithmetic soundness on 10^3-step dual runs", 600.0, criterion8},
};

int run_criterion(const Criterion& cr) {
  Timer timer;
  Check c = cr.fn();
  double secs = timer.seconds();
  bool in_time = secs < cr.time_limit_s;
  bool pass = c.ok && in_time;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.summary << "  ["
            << secs << " s, limit " << cr.time_limit_s << " s]";
  if (!c.ok) std::cout << "  -- " << c.detail;
  if (c.ok && !in_time) std::cout << "  -- over the runtime limit";
  std::cout << std::endl;
  return pass ? 0 : 1;
}

int write_goldens() {
  Raster r = raster(figure1(), 512, 512);
  write_text_file(kDataDir + "/figure1_codes_512.ppm", render_p6(r));
  write_text_file(kDataDir + "/figure1_mask_512.pgm", render_p5(r));
  std::cout << "wrote figure1 goldens into " << kDataDir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--write-goldens") == 0)
      return write_goldens();
  }

  int failures = 0;
  for (const Criterion& cr : kCriteria) {
    if (only != 0 && cr.id != only) continue;
    try {
      failures += run_criterion(cr);
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << cr.id << ": exception: " << e.what() << std::endl;
      ++failures;
    }
  }
  return failures;
}
