#ifndef PCROT_EXPERIMENTS_HPP
#define PCROT_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcrot/dynamics.hpp"

namespace pcrot {

/// Deterministic randomness for experiments. Values derive from raw
/// mt19937_64 outputs only, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t u64() { return eng_(); }
  uint32_t u31() { return static_cast<uint32_t>(eng_() >> 33); }
  long long below(long long n) { return static_cast<long long>(eng_() % static_cast<uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

/// Uniform rational i/2^denom_log2 in [0,1).
Rational random_unit_rational(Rng& rng, int denom_log2 = 31);
/// Uniform rational in (-1,1) with denominator 2^denom_log2.
Rational random_signed_rational(Rng& rng, int denom_log2 = 31);
RVector random_cube_point(Rng& rng, int d, int denom_log2 = 31);

/// Random valid system: entries drawn in (-1,1), rescaled so that
/// ||A|| equals a random target in [1/4, 9/10]; singular draws are rejected.
ContractedRotation random_system(Rng& rng, int d, int denom_log2 = 31);

/// Random valid system whose entries keep denominator 2^denom_log2
/// (rows rejection-sampled until their absolute sum is < norm_cap).
ContractedRotation random_system_dyadic(Rng& rng, int d, int denom_log2,
                                        const Rational& norm_cap = Rational(1));

/// Initial-condition grid: centers ((i+1/2)/n, ...) over [0,1)^d.
std::vector<RVector> make_grid(int d, int per_axis);

enum class BSampler { Random, Grid };

struct SweepSpec {
  int d = 2;
  std::optional<RMatrix> A;              // fixed matrix, or
  std::optional<Rational> a_norm_bound;  // per-sample random A with ||A|| <= bound
  BSampler sampler = BSampler::Random;
  long samples = 100;     // random-b count (grid sampler derives it)
  int grid_per_axis = 10; // b grid i/n when sampler == Grid
  uint64_t seed = 1;
  int denom_log2 = 31;
  int init_per_axis = 4;  // per-b initial-condition grid
  Budget budget;
  int jobs = 0;           // 0 = hardware concurrency
};

struct PerSampleRecord {
  RVector b;
  IntVector k;
  long certified = 0;
  long hits = 0;
  long undetermined = 0;
  long recheck_failures = 0;
  std::vector<int> periods;  // distinct periods found, ascending
  bool fully_certified = false;  // every non-hit initial point certified
  std::string error;             // nonempty when the sample failed outright
};

struct SweepReport {
  long samples = 0;
  long grid_size = 0;
  std::vector<PerSampleRecord> per_b;
  long fully_certified = 0;
  long verdicts_certified = 0;
  long verdicts_hit = 0;
  long verdicts_undetermined = 0;
  long recheck_failures = 0;
  std::map<int, long> period_histogram;
  Rational certified_fraction;     // fully certified b / samples
  Rational undetermined_fraction;  // undetermined verdicts / all verdicts
};

/// Runs the sweep described by the spec; deterministic given the seed.
/// Per-sample failures are recorded in the report, never aborting the sweep.
SweepReport run_sweep(const SweepSpec& spec);

struct LemmaResult {
  std::string name;
  bool pass = true;
  long samples = 0;
  std::string counterexample;  // first failure, empty when passing
};

/// Test-harness injection: shifts the chi value used by the partition suite,
/// to demonstrate the suite catches an off-by-one.
struct PropertyHooks {
  int chi_corrupt_coord = -1;
  long long chi_corrupt_delta = 0;
};

/// Exact property suites for the lemmas, over seeded random systems with
/// d cycling through {1,2,3}. `counts` samples per suite, split across
/// `n_systems` systems.
std::vector<LemmaResult> verify_properties(uint64_t seed, long counts, int n_systems = 100,
                                           const PropertyHooks* hooks = nullptr);

bool all_pass(const std::vector<LemmaResult>& results);

/// d = 2 raster sampled at exact pixel centers ((i+1/2)/W, (j+1/2)/H).
/// image_rgb colors each pixel by its code offset p = e(x) - chi (fixed
/// 4-color palette); mask_gray marks pixels with a 4-neighbor of different
/// code (the discontinuity set).
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> image_rgb;  // 3*W*H, row 0 at top (x2 near 1)
  std::vector<uint8_t> mask_gray;  // W*H, 255 = crossing
  std::vector<Letter> codes;       // p per pixel, row-major from top
};

Raster raster(const ContractedRotation& sys, int width, int height);

/// Pixel-center CSV for any dimension: x, f(x), p = e(x) - chi per row.
std::string raster_csv(const ContractedRotation& sys, int per_axis);

void write_pixmap_p6(const std::string& path, const Raster& r);
void write_pixmap_p5_mask(const std::string& path, const Raster& r);

}  // namespace pcrot

#endif
