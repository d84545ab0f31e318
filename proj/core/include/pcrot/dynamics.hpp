#ifndef PCROT_DYNAMICS_HPP
#define PCROT_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pcrot/bounded.hpp"
#include "pcrot/extension.hpp"

namespace pcrot {

/// Finite word of branch offsets p in {0,1}^d.
using Itinerary = std::vector<Letter>;

/// phi^alpha(y) = A^n y + r_alpha with r_alpha = phi^alpha(0); the first
/// letter of alpha is applied first.
struct AffineWord {
  RMatrix power;
  RVector shift;
};

AffineWord compose_word(const RMatrix& A, const IntVector& k, const Itinerary& alpha);

struct Budget {
  long max_steps = 1'000'000;
  int candidate_attempts = 10;
  int bits_cap = 4096;        // total bit size cap for exact orbit points
  int max_period = 1024;      // largest candidate period scanned
  int min_precision_bits = 64;
  int precision_retries = 4;
};

/// Exactly verified periodic orbit with strict branch margins and a
/// contraction-based attraction witness:
///   phi^word(point) = point exactly,
///   every cycle point keeps |<v_j, w_t> - mu_j| >= margin > 0,
///   the orbit's step `witness_step` lies within `enclosure` of the cycle at
///   phase `phase`, and enclosure < margin * (1 - ||A||).
struct PeriodicOrbitCertificate {
  int q = 0;
  Itinerary word;
  RVector point;
  Rational margin;
  long witness_step = 0;
  int phase = 0;
  Rational enclosure;
};

enum class VerdictKind { Certified, HitDiscontinuity, Undetermined };

struct OrbitVerdict {
  VerdictKind kind = VerdictKind::Undetermined;
  std::optional<PeriodicOrbitCertificate> certificate;
  long hit_step = -1;
  std::vector<int> hit_hyperplanes;
  std::string reason;  // Undetermined diagnostics
  long steps_used = 0;
  bool recheck_failed = false;  // a found certificate failed the audit
};

enum class IterationMode { Exact, Bounded };

struct TraceStep {
  RVector point;   // exact point, or the dyadic center in bounded mode
  Label label;
  bool regular = true;    // exact mode: off every hyperplane
  bool ambiguous = false; // bounded mode: some hyperplane within error radius
  Rational radius;        // 0 in exact mode
};

/// n steps of apply_G from y0, with per-step labels and regularity flags.
/// Bounded mode shadows the orbit in dyadic arithmetic with a sound error
/// radius; steps whose label the radius cannot decide are flagged ambiguous.
std::vector<TraceStep> iterate_orbit(const ExtendedSystem& sysX, const RVector& y0, long n,
                                     IterationMode mode, int precision_bits = 64);

/// Searches for a periodic attractor of the orbit of y0 and certifies it in
/// exact arithmetic, or reports an exact hyperplane hit, or gives up within
/// the budget.
OrbitVerdict certify(const ExtendedSystem& sysX, const RVector& y0, const Budget& budget);

/// Independent soundness audit of a certificate. Re-verifies the cycle, its
/// margins, and the attraction claim with logic separate from the search
/// path. Returns false (with a reason) on any discrepancy.
bool recheck_certificate(const ExtendedSystem& sysX, const PeriodicOrbitCertificate& cert,
                         const RVector& y0, const Budget& budget, std::string* why = nullptr);

struct DistinctOrbit {
  int q = 0;
  std::vector<RVector> points_y;  // cycle in translated coordinates
  std::vector<RVector> points_x;  // transported by h_b (closed-cube points)
  PeriodicOrbitCertificate certificate;
};

struct ScanOutcome {
  VerdictKind kind = VerdictKind::Undetermined;
  int orbit_index = -1;
  long hit_step = -1;
  std::vector<int> hit_hyperplanes;
  std::string reason;
};

struct ScanReport {
  std::vector<DistinctOrbit> orbits;
  std::vector<ScanOutcome> outcomes;  // one per initial condition, same order
  long certified = 0;
  long hits = 0;
  long undetermined = 0;
  long recheck_failures = 0;
  bool all_certified = false;  // asymptotically periodic on the sample
};

/// Transports each initial condition by h^{-1}, certifies, and deduplicates
/// periodic orbits by exact point-set equality.
ScanReport attractor_scan(const ContractedRotation& sys, const std::vector<RVector>& grid,
                          const Budget& budget, int jobs = 1);

}  // namespace pcrot

#endif
