#ifndef PCROT_ROTATION_HPP
#define PCROT_ROTATION_HPP

#include <vector>

#include "pcrot/linalg.hpp"

namespace pcrot {

/// The contracted rotation x -> Ax + b (mod Z^d) on [0,1)^d.
/// Validated: ||A|| < 1 and A invertible, both checked exactly.
struct ContractedRotation {
  int d = 0;
  RMatrix A;
  RVector b;
  Rational a_norm;  // cached ||A||

  static ContractedRotation make(RMatrix A, RVector b);
};

bool in_unit_cube(const RVector& x);

/// f_b(x) = Ax + b - floor(Ax + b). Rejects x outside [0,1)^d.
RVector apply_f(const ContractedRotation& sys, const RVector& x);

/// e_b(x) = floor(Ax + b).
IntVector code_e(const ContractedRotation& sys, const RVector& x);

/// Component-wise minimum code over the cube, in closed form:
/// chi_j = floor(b_j + sum_l min(a_jl, 0)).
IntVector chi(const ContractedRotation& sys);

/// One candidate continuity domain E_b(chi(b)+p). The half-space conditions
/// are, per coordinate j: (Ax+b)_j < chi_j + 1 when p_j = 0 (strict) and
/// (Ax+b)_j >= chi_j + 1 when p_j = 1, intersected with [0,1)^d.
struct ContinuityDomain {
  IntVector p;     // offset in {0,1}^d
  IntVector code;  // chi(b) + p
  bool non_empty = false;
};

/// All 2^d candidate domains in lexicographic order of p; emptiness decided
/// exactly (vertex enumeration of the closed arrangement plus a relative
/// interior point check).
std::vector<ContinuityDomain> continuity_domains(const ContractedRotation& sys);

/// Exact evaluation of the domain's half-space conditions at x in [0,1)^d.
bool membership(const ContractedRotation& sys, const ContinuityDomain& dom, const RVector& x);

}  // namespace pcrot

#endif
