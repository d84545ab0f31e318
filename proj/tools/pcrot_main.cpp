// pcrot: contracted-rotation toolbox.
//
// Subcommands: inspect, certify, scan, sweep, raster, verify. All numeric
// inputs accept "p/q" or decimal strings and are parsed exactly; outputs are
// deterministic for fixed seeds.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcrot/serialize.hpp"

namespace fs = std::filesystem;
using pcrot::json;

namespace {

int default_jobs() {
  const char* env = std::getenv("PCROT_JOBS");
  if (env != nullptr) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // 0 = hardware concurrency downstream
}

void emit(const json& j, const std::string& out_path, bool to_stdout) {
  if (!out_path.empty()) pcrot::write_text_file(out_path, j.dump(2) + "\n");
  if (to_stdout || out_path.empty()) std::cout << j.dump(2) << "\n";
}

pcrot::RVector parse_point(const std::vector<std::string>& comps) {
  pcrot::RVector x(static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i)
    x[static_cast<int>(i)] = pcrot::Rational::parse(comps[i]);
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contracted rotations: exact dynamics, certification, sweeps"};
  app.require_subcommand(1);

  std::string system_path, spec_path, out_dir;
  uint64_t seed = 1;
  long budget_steps = -1;
  int bits_cap = -1;
  int resolution = 512;
  int jobs = default_jobs();
  bool json_stdout = false;

  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--budget-steps", budget_steps, "max orbit steps per certification");
  app.add_option("--bits-cap", bits_cap, "exact-orbit bit-size cap");
  app.add_option("--jobs", jobs, "parallel jobs (0 = all cores; env PCROT_JOBS)");
  app.add_flag("--json", json_stdout, "print JSON to stdout even when --out is given");

  auto build_budget = [&]() {
    pcrot::Budget b;
    if (budget_steps > 0) b.max_steps = budget_steps;
    if (bits_cap > 0) b.bits_cap = bits_cap;
    return b;
  };
  auto ensure_out = [&]() {
    if (!out_dir.empty()) fs::create_directories(out_dir);
  };
  auto out_file = [&](const std::string& name) {
    return out_dir.empty() ? std::string() : (fs::path(out_dir) / name).string();
  };

  // inspect
  auto* cmd_inspect = app.add_subcommand("inspect", "print ||A||, chi, mu, r, domains, offset");
  cmd_inspect->add_option("--system", system_path, "system JSON file")->required();
  cmd_inspect->callback([&]() {
    pcrot::ContractedRotation sys = pcrot::load_system(system_path);
    json j = pcrot::inspect_to_json(sys);
    std::cout << "d           = " << sys.d << "\n";
    std::cout << "||A||       = " << sys.a_norm.str() << "\n";
    std::cout << "chi(b)      = " << j["chi"].dump() << "\n";
    std::cout << "mu = rho(b) = " << j["mu"].dump() << "\n";
    std::cout << "offset      = " << j["offset"].dump() << "\n";
    std::cout << "r           = " << j["r"].get<std::string>() << "\n";
    std::cout << "domains     = " << j["non_empty_domains"].get<int>() << " non-empty of "
              << j["domains"].size() << "\n";
    for (const auto& dom : j["domains"])
      std::cout << "  p=" << dom["p"].dump() << " code=" << dom["code"].dump()
                << (dom["non_empty"].get<bool>() ? "  (non-empty)" : "  (empty)") << "\n";
    ensure_out();
    if (!out_dir.empty()) pcrot::write_text_file(out_file("inspect.json"), j.dump(2) + "\n");
    if (json_stdout) std::cout << j.dump(2) << "\n";
  });

  // certify
  auto* cmd_certify = app.add_subcommand("certify", "certify the orbit of one initial condition");
  std::vector<std::string> x0_comps;
  cmd_certify->add_option("--system", system_path, "system JSON file")->required();
  cmd_certify->add_option("--x0", x0_comps, "initial condition in [0,1)^d, one rational per component")
      ->required();
  cmd_certify->callback([&]() {
    pcrot::ContractedRotation sys = pcrot::load_system(system_path);
    pcrot::RVector x0 = parse_point(x0_comps);
    pcrot::TranslatedCube conj = pcrot::make_translated_cube(sys);
    pcrot::ExtendedSystem sx = pcrot::extended_from(sys);
    pcrot::OrbitVerdict v = pcrot::certify(sx, pcrot::h_inverse(conj, x0), build_budget());
    json j = pcrot::verdict_to_json(v, pcrot::system_hash(sys));
    if (v.kind == pcrot::VerdictKind::Certified) {
      json xs = json::array();
      pcrot::RVector w = v.certificate->point;
      for (int t = 0; t < v.certificate->q; ++t) {
        xs.push_back(pcrot::rvector_to_json(pcrot::h_apply(conj, w)));
        w = pcrot::apply_phi(sx, v.certificate->word[static_cast<std::size_t>(t)], w);
      }
      j["orbit_x"] = std::move(xs);
    }
    ensure_out();
    emit(j, out_file("certificate.json"), json_stdout);
  });

  // scan
  auto* cmd_scan = app.add_subcommand("scan", "certify a grid of initial conditions");
  int grid_per_axis = 4;
  cmd_scan->add_option("--system", system_path, "system JSON file")->required();
  cmd_scan->add_option("--grid", grid_per_axis, "initial-condition grid points per axis")
      ->capture_default_str();
  cmd_scan->callback([&]() {
    pcrot::ContractedRotation sys = pcrot::load_system(system_path);
    auto grid = pcrot::make_grid(sys.d, grid_per_axis);
    pcrot::ScanReport rep = pcrot::attractor_scan(sys, grid, build_budget(), jobs);
    json j = pcrot::scan_report_to_json(rep, sys);
    ensure_out();
    emit(j, out_file("scan.json"), json_stdout);
  });

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep over b samples");
  cmd_sweep->add_option("--spec", spec_path, "sweep spec JSON file")->required();
  cmd_sweep->callback([&]() {
    std::ifstream f(spec_path);
    if (!f) throw pcrot::parse_error("cannot open spec file: " + spec_path);
    json sj;
    f >> sj;
    pcrot::SweepSpec spec = pcrot::sweep_spec_from_json(sj);
    if (seed != 1) spec.seed = seed;
    if (budget_steps > 0) spec.budget.max_steps = budget_steps;
    if (bits_cap > 0) spec.budget.bits_cap = bits_cap;
    if (jobs > 0) spec.jobs = jobs;
    pcrot::SweepReport rep = pcrot::run_sweep(spec);
    json j = pcrot::sweep_report_to_json(rep, spec);
    ensure_out();
    if (!out_dir.empty())
      pcrot::write_text_file(out_file("sweep.csv"), pcrot::sweep_report_csv(rep));
    emit(j, out_file("sweep.json"), json_stdout);
    std::cerr << "fully certified " << rep.fully_certified << "/" << rep.samples
              << " samples, undetermined verdicts " << rep.verdicts_undetermined << "\n";
  });

  // raster
  auto* cmd_raster = app.add_subcommand("raster", "code raster + discontinuity mask (P6/P5 + CSV)");
  cmd_raster->add_option("--system", system_path, "system JSON file")->required();
  cmd_raster->add_option("--resolution", resolution, "pixels per axis")->capture_default_str();
  cmd_raster->callback([&]() {
    pcrot::ContractedRotation sys = pcrot::load_system(system_path);
    ensure_out();
    std::string dir = out_dir.empty() ? "." : out_dir;
    int csv_res = std::min(resolution, 64);  // CSV stays desk-readable
    pcrot::write_text_file((fs::path(dir) / "raster.csv").string(),
                           pcrot::raster_csv(sys, csv_res));
    if (sys.d == 2) {
      pcrot::Raster r = pcrot::raster(sys, resolution, resolution);
      pcrot::write_pixmap_p6((fs::path(dir) / "codes.ppm").string(), r);
      pcrot::write_pixmap_p5_mask((fs::path(dir) / "discontinuities.pgm").string(), r);
      std::cout << "wrote codes.ppm, discontinuities.pgm, raster.csv in " << dir << "\n";
    } else {
      std::cout << "d = " << sys.d << ": pixmaps need d = 2, wrote raster.csv only\n";
    }
  });

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the exact lemma property suites");
  long counts = 10000;
  int n_systems = 100;
  cmd_verify->add_option("--counts", counts, "samples per suite")->capture_default_str();
  cmd_verify->add_option("--systems", n_systems, "random systems")->capture_default_str();
  cmd_verify->callback([&]() {
    auto results = pcrot::verify_properties(seed, counts, n_systems);
    for (const auto& r : results)
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  (" << r.samples << " samples)"
                << (r.counterexample.empty() ? "" : "  " + r.counterexample) << "\n";
    json j = pcrot::lemma_results_to_json(results);
    ensure_out();
    if (!out_dir.empty()) pcrot::write_text_file(out_file("verify.json"), j.dump(2) + "\n");
    if (json_stdout) std::cout << j.dump(2) << "\n";
    if (!pcrot::all_pass(results)) throw std::runtime_error("property suites failed");
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
