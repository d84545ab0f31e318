#include "pcrot/serialize.hpp"

#include <fstream>
#include <sstream>

#include "pcrot/errors.hpp"

namespace pcrot {

json rational_to_json(const Rational& x) { return x.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>(), 1);
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw parse_error("expected a rational as string or integer, got: " + j.dump());
}

json rvector_to_json(const RVector& x) {
  json a = json::array();
  for (int i = 0; i < x.dim(); ++i) a.push_back(rational_to_json(x[i]));
  return a;
}

RVector rvector_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("expected an array for a vector");
  RVector x(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) x[static_cast<int>(i)] = rational_from_json(j[i]);
  return x;
}

json rmatrix_to_json(const RMatrix& A) {
  json m = json::array();
  for (int i = 0; i < A.n; ++i) {
    json row = json::array();
    for (int jx = 0; jx < A.n; ++jx) row.push_back(rational_to_json(A.at(i, jx)));
    m.push_back(std::move(row));
  }
  return m;
}

RMatrix rmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("expected a non-empty array for a matrix");
  int n = static_cast<int>(j.size());
  RMatrix A(n);
  for (int i = 0; i < n; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<std::size_t>(i)].size()) != n)
      throw parse_error("matrix is not square");
    for (int c = 0; c < n; ++c)
      A.at(i, c) = rational_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  }
  return A;
}

json intvector_to_json(const IntVector& k) {
  json a = json::array();
  for (long long v : k) a.push_back(v);
  return a;
}

json system_to_json(const ContractedRotation& sys) {
  json j;
  j["d"] = sys.d;
  j["A"] = rmatrix_to_json(sys.A);
  j["b"] = rvector_to_json(sys.b);
  return j;
}

ContractedRotation system_from_json(const json& j) {
  if (!j.contains("A") || !j.contains("b")) throw parse_error("system JSON needs fields A and b");
  RMatrix A = rmatrix_from_json(j["A"]);
  RVector b = rvector_from_json(j["b"]);
  if (j.contains("d") && j["d"].get<int>() != A.n)
    throw parse_error("system JSON: field d does not match A");
  return ContractedRotation::make(std::move(A), std::move(b));
}

ContractedRotation load_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open system file: " + path);
  json j;
  f >> j;
  return system_from_json(j);
}

std::string system_hash(const ContractedRotation& sys) {
  std::string s = system_to_json(sys).dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

json extended_to_json(const ExtendedSystem& sx) {
  json j;
  j["d"] = sx.d;
  j["A"] = rmatrix_to_json(sx.A);
  j["k"] = intvector_to_json(sx.k);
  j["mu"] = rvector_to_json(sx.arr.mu);
  j["r"] = rational_to_json(sx.r);
  return j;
}

namespace {

json word_to_json(const Itinerary& w) {
  json a = json::array();
  for (const Letter& p : w) {
    json letter = json::array();
    for (uint8_t pj : p) letter.push_back(static_cast<int>(pj));
    a.push_back(std::move(letter));
  }
  return a;
}

json label_indices_to_json(const std::vector<int>& idx) {
  json a = json::array();
  for (int i : idx) a.push_back(i + 1);  // hyperplanes reported 1-based, H_j
  return a;
}

}  // namespace

json certificate_to_json(const PeriodicOrbitCertificate& cert, const std::string& sys_hash) {
  json j;
  j["q"] = cert.q;
  j["alpha"] = word_to_json(cert.word);
  j["point"] = rvector_to_json(cert.point);
  j["delta"] = rational_to_json(cert.margin);
  j["N"] = cert.witness_step;
  j["phase"] = cert.phase;
  j["epsilon"] = rational_to_json(cert.enclosure);
  j["system"] = sys_hash;
  return j;
}

json verdict_to_json(const OrbitVerdict& v, const std::string& sys_hash) {
  json j;
  switch (v.kind) {
    case VerdictKind::Certified:
      j["verdict"] = "certified";
      j["certificate"] = certificate_to_json(*v.certificate, sys_hash);
      break;
    case VerdictKind::HitDiscontinuity:
      j["verdict"] = "hit_discontinuity";
      j["step"] = v.hit_step;
      j["hyperplanes"] = label_indices_to_json(v.hit_hyperplanes);
      break;
    case VerdictKind::Undetermined:
      j["verdict"] = "undetermined";
      j["reason"] = v.reason;
      break;
  }
  j["steps_used"] = v.steps_used;
  return j;
}

json scan_report_to_json(const ScanReport& rep, const ContractedRotation& sys) {
  std::string h = system_hash(sys);
  json j;
  j["system"] = system_to_json(sys);
  j["system_hash"] = h;
  j["verdicts"] = {{"certified", rep.certified},
                   {"hit_discontinuity", rep.hits},
                   {"undetermined", rep.undetermined}};
  j["recheck_failures"] = rep.recheck_failures;
  j["asymptotically_periodic_on_sample"] = rep.all_certified;
  json orbits = json::array();
  for (const auto& orb : rep.orbits) {
    json o;
    o["q"] = orb.q;
    json py = json::array(), px = json::array();
    for (const auto& w : orb.points_y) py.push_back(rvector_to_json(w));
    for (const auto& x : orb.points_x) px.push_back(rvector_to_json(x));
    o["points_y"] = std::move(py);
    o["points_x"] = std::move(px);
    o["certificate"] = certificate_to_json(orb.certificate, h);
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  json outcomes = json::array();
  for (const auto& oc : rep.outcomes) {
    json o;
    switch (oc.kind) {
      case VerdictKind::Certified:
        o["verdict"] = "certified";
        o["orbit"] = oc.orbit_index;
        break;
      case VerdictKind::HitDiscontinuity:
        o["verdict"] = "hit_discontinuity";
        o["step"] = oc.hit_step;
        o["hyperplanes"] = label_indices_to_json(oc.hit_hyperplanes);
        break;
      case VerdictKind::Undetermined:
        o["verdict"] = "undetermined";
        o["reason"] = oc.reason;
        break;
    }
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

json budget_to_json(const Budget& b) {
  json j;
  j["max_steps"] = b.max_steps;
  j["candidate_attempts"] = b.candidate_attempts;
  j["bits_cap"] = b.bits_cap;
  j["max_period"] = b.max_period;
  j["min_precision_bits"] = b.min_precision_bits;
  j["precision_retries"] = b.precision_retries;
  return j;
}

Budget budget_from_json(const json& j) {
  Budget b;
  if (j.contains("max_steps")) b.max_steps = j["max_steps"].get<long>();
  if (j.contains("candidate_attempts")) b.candidate_attempts = j["candidate_attempts"].get<int>();
  if (j.contains("bits_cap")) b.bits_cap = j["bits_cap"].get<int>();
  if (j.contains("max_period")) b.max_period = j["max_period"].get<int>();
  if (j.contains("min_precision_bits")) b.min_precision_bits = j["min_precision_bits"].get<int>();
  if (j.contains("precision_retries")) b.precision_retries = j["precision_retries"].get<int>();
  return b;
}

json sweep_spec_to_json(const SweepSpec& spec) {
  json j;
  j["d"] = spec.d;
  if (spec.A.has_value()) j["A"] = rmatrix_to_json(*spec.A);
  if (spec.a_norm_bound.has_value())
    j["A_random"] = {{"norm_bound", rational_to_json(*spec.a_norm_bound)}};
  j["sampler"] = (spec.sampler == BSampler::Grid ? "grid" : "random");
  j["samples"] = spec.samples;
  j["grid_per_axis"] = spec.grid_per_axis;
  j["seed"] = spec.seed;
  j["denom_log2"] = spec.denom_log2;
  j["init_per_axis"] = spec.init_per_axis;
  j["budget"] = budget_to_json(spec.budget);
  j["jobs"] = spec.jobs;
  return j;
}

SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec spec;
  if (j.contains("d")) spec.d = j["d"].get<int>();
  if (j.contains("A")) {
    spec.A = rmatrix_from_json(j["A"]);
    spec.d = spec.A->n;
  }
  if (j.contains("A_random") && j["A_random"].contains("norm_bound"))
    spec.a_norm_bound = rational_from_json(j["A_random"]["norm_bound"]);
  if (j.contains("sampler")) {
    std::string s = j["sampler"].get<std::string>();
    if (s == "grid")
      spec.sampler = BSampler::Grid;
    else if (s == "random")
      spec.sampler = BSampler::Random;
    else
      throw parse_error("unknown sampler: " + s);
  }
  if (j.contains("samples")) spec.samples = j["samples"].get<long>();
  if (j.contains("grid_per_axis")) spec.grid_per_axis = j["grid_per_axis"].get<int>();
  if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
  if (j.contains("denom_log2")) spec.denom_log2 = j["denom_log2"].get<int>();
  if (j.contains("init_per_axis")) spec.init_per_axis = j["init_per_axis"].get<int>();
  if (j.contains("budget")) spec.budget = budget_from_json(j["budget"]);
  if (j.contains("jobs")) spec.jobs = j["jobs"].get<int>();
  return spec;
}

json sweep_report_to_json(const SweepReport& rep, const SweepSpec& spec) {
  json j;
  j["spec"] = sweep_spec_to_json(spec);
  json agg;
  agg["samples"] = rep.samples;
  agg["grid_size"] = rep.grid_size;
  agg["fully_certified"] = rep.fully_certified;
  agg["certified_fraction"] = rational_to_json(rep.certified_fraction);
  agg["certified_fraction_approx"] = rep.certified_fraction.to_double();
  agg["undetermined_fraction"] = rational_to_json(rep.undetermined_fraction);
  agg["verdicts"] = {{"certified", rep.verdicts_certified},
                     {"hit_discontinuity", rep.verdicts_hit},
                     {"undetermined", rep.verdicts_undetermined}};
  agg["discontinuity_hits"] = rep.verdicts_hit;
  agg["recheck_failures"] = rep.recheck_failures;
  json hist;
  for (const auto& [p, c] : rep.period_histogram) hist[std::to_string(p)] = c;
  agg["period_histogram"] = std::move(hist);
  j["aggregate"] = std::move(agg);

  json per = json::array();
  for (const auto& rec : rep.per_b) {
    json r;
    r["b"] = rvector_to_json(rec.b);
    r["k"] = intvector_to_json(rec.k);
    r["certified"] = rec.certified;
    r["hit_discontinuity"] = rec.hits;
    r["undetermined"] = rec.undetermined;
    json ps = json::array();
    for (int p : rec.periods) ps.push_back(p);
    r["periods"] = std::move(ps);
    r["fully_certified"] = rec.fully_certified;
    if (!rec.error.empty()) r["error"] = rec.error;
    per.push_back(std::move(r));
  }
  j["per_b"] = std::move(per);
  return j;
}

std::string sweep_report_csv(const SweepReport& rep) {
  std::ostringstream os;
  int d = rep.per_b.empty() ? 0 : rep.per_b.front().b.dim();
  for (int i = 0; i < d; ++i) os << "b_" << (i + 1) << ",";
  for (int i = 0; i < d; ++i) os << "k_" << (i + 1) << ",";
  os << "certified,hit_discontinuity,undetermined,periods\n";
  for (const auto& rec : rep.per_b) {
    for (int i = 0; i < d; ++i) os << rec.b[i].str() << ",";
    for (int i = 0; i < d; ++i)
      os << (static_cast<std::size_t>(i) < rec.k.size() ? std::to_string(rec.k[static_cast<std::size_t>(i)]) : "") << ",";
    os << rec.certified << "," << rec.hits << "," << rec.undetermined << ",";
    for (std::size_t i = 0; i < rec.periods.size(); ++i)
      os << rec.periods[i] << (i + 1 < rec.periods.size() ? ";" : "");
    os << "\n";
  }
  return os.str();
}

json lemma_results_to_json(const std::vector<LemmaResult>& results) {
  json arr = json::array();
  for (const auto& r : results) {
    json j;
    j["lemma"] = r.name;
    j["pass"] = r.pass;
    j["samples"] = r.samples;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    arr.push_back(std::move(j));
  }
  json out;
  out["suites"] = std::move(arr);
  out["all_pass"] = all_pass(results);
  return out;
}

json inspect_to_json(const ContractedRotation& sys) {
  TranslatedCube conj = make_translated_cube(sys);
  ExtendedSystem sx = extended_from(sys);
  std::vector<ContinuityDomain> doms = continuity_domains(sys);

  json j;
  j["system"] = system_to_json(sys);
  j["system_hash"] = system_hash(sys);
  j["a_norm"] = rational_to_json(sys.a_norm);
  j["chi"] = intvector_to_json(sx.k);
  j["mu"] = rvector_to_json(sx.arr.mu);
  j["offset"] = rvector_to_json(conj.offset);
  j["r"] = rational_to_json(sx.r);
  json ds = json::array();
  int non_empty = 0;
  for (const auto& dom : doms) {
    json dj;
    json p = json::array(), code = json::array();
    for (long long v : dom.p) p.push_back(v);
    for (long long v : dom.code) code.push_back(v);
    dj["p"] = std::move(p);
    dj["code"] = std::move(code);
    dj["non_empty"] = dom.non_empty;
    if (dom.non_empty) ++non_empty;
    ds.push_back(std::move(dj));
  }
  j["domains"] = std::move(ds);
  j["non_empty_domains"] = non_empty;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace pcrot
