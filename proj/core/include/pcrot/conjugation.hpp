#ifndef PCROT_CONJUGATION_HPP
#define PCROT_CONJUGATION_HPP

#include <cstdint>
#include <vector>

#include "pcrot/rotation.hpp"

namespace pcrot {

/// Sign pattern in {-1,+1}^d; (-1)^p with p in {0,1}^d, all-(+1) <-> p = 0.
using Label = std::vector<int8_t>;
/// Branch offset p in {0,1}^d.
using Letter = std::vector<uint8_t>;

Letter label_to_p(const Label& s);
Label p_to_label(const Letter& p);

/// Translation data for h_b(y) = y + (I-A)^{-1} b and D_b = h_b^{-1}([0,1)^d).
struct TranslatedCube {
  RVector offset;  // (I-A)^{-1} b
};

TranslatedCube make_translated_cube(const ContractedRotation& sys);

RVector h_apply(const TranslatedCube& t, const RVector& y);
RVector h_inverse(const TranslatedCube& t, const RVector& x);
bool in_translated_cube(const TranslatedCube& t, const RVector& y);

/// g_b(y) = Ay - e_b(h_b(y)) on D_b (Lemma 2.4 form). Rejects y outside D_b.
RVector apply_g(const ContractedRotation& sys, const TranslatedCube& t, const RVector& y);

/// Parameter map: mu_j = ((chi(b) - (I-A)^{-1}b)_j + 1) / ||A^(j)||, with the
/// row norm ||A^(j)|| = sum_l |a_jl|.
RVector rho(const ContractedRotation& sys);

/// Hyperplanes H_j(mu) = { y : <v^(j), y> = mu_j } with v^(j) = A^(j)/||A^(j)||.
/// The label comparisons are evaluated in the equivalent scaled form
/// <A^(j), y> vs theta_j = mu_j * ||A^(j)|| (exact, since row norms are > 0).
struct LabelArrangement {
  RVector mu;
  std::vector<RVector> v;         // unit rows A^(j)/||A^(j)||
  std::vector<Rational> row_norm; // sum_l |a_jl|, all > 0
  std::vector<RVector> rows;      // A^(j)
  RVector theta;                  // mu_j * row_norm_j

  int dim() const { return mu.dim(); }
};

LabelArrangement make_arrangement(const RMatrix& A, RVector mu);

/// s_j = +1 if <v^(j), y> < mu_j, else -1 (equality on the -1 side).
Label label_sigma(const LabelArrangement& arr, const RVector& y);

/// Indices j with <v^(j), y> = mu_j; empty means y is interior to its cell.
std::vector<int> on_hyperplane(const LabelArrangement& arr, const RVector& y);

}  // namespace pcrot

#endif
