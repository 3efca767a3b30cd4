#pragma once

#include <cstdint>
#include <vector>

#include "nlshybrid/spectral.hpp"

namespace nlshybrid {

struct FrequencyQuad {
  int n, n1, n2, n3;
  bool operator==(const FrequencyQuad&) const = default;
};

// Phase function xi^2 - xi1^2 + xi2^2 - xi3^2.  Under the convolution
// constraint xi = xi1 - xi2 + xi3 it factorizes as 2(xi-xi1)(xi-xi3).
Real phi(Real xi, Real xi1, Real xi2, Real xi3);
std::int64_t phi(std::int64_t n, std::int64_t n1, std::int64_t n2, std::int64_t n3);

// n is approximately m: |n - m| <= 1.
bool approx(int n, int m);

// Discrete convolution constraint n1 - n2 + n3 ~ n.
bool quad_constrained(const FrequencyQuad& q);

enum class ResonanceTag { R1, R2Part, N11, N12 };

struct QuadClass {
  ResonanceTag tag;
  bool n1_close = false;       // n1 ~ n
  bool n3_close = false;       // n3 ~ n
  std::int64_t phase = 0;      // Phi(n, n1, n2, n3)
  int r2_multiplicity() const { return (n1_close ? 1 : 0) + (n3_close ? 1 : 0); }
  bool r1_hit() const { return n1_close && n3_close; }
  bool resonant() const { return n1_close || n3_close; }
  // Coverage of this quad by R2 - R1 + N1; 1 for every constrained quad.
  int net_coefficient() const {
    return resonant() ? r2_multiplicity() - (r1_hit() ? 1 : 0) : 1;
  }
};

QuadClass classify_quad(const FrequencyQuad& q, Real threshold);

// A_N(n): constrained non-resonant quads with |Phi| <= N inside the band
// |n1|,|n2|,|n3| <= band, in lexicographic (n1, n2, n3) order.
std::vector<FrequencyQuad> enumerate_A_N(int n, Real threshold, int band);

// Complement within the band: constrained, non-resonant, |Phi| > N.
std::vector<FrequencyQuad> enumerate_A_N_complement(int n, Real threshold, int band);

std::int64_t divisor_count(std::int64_t m);

// d(m) for every m in [1, limit] by a divisor sieve; index m holds d(m).
std::vector<std::int32_t> divisor_count_sieve(std::int32_t limit);

const char* to_string(ResonanceTag tag);

// --- splitting of the first-generation nonlinearity ------------------------
//
// Inputs are interaction-picture data at time t: box pieces of v on the line
// lattice and the tone coefficients of w.  For each box n the five operator
// kinds are summed over their index sets, split into the resonant pieces R2
// (union, counted with multiplicity), R1 (intersection) and the non-resonant
// piece N1, so that R2 - R1 + N1 equals d/dt of the box piece.  The G-term
// weights (1,2,1,2,1) and the equation prefactor sign*i are folded in.

struct SplitPiece {
  int box = 0;
  CVec r2, r1, n1;  // spectral windows over supp sigma_box (size 2L-1)
};

struct SplitResult {
  std::vector<SplitPiece> pieces;
  const SplitPiece& at(int box) const;
};

struct SplitOptions {
  Real threshold = 64;  // N separating N11 from N12 (reported, not summed apart)
  int box_min = 0, box_max = 0;
  int band = 8;       // index sums run over |n_i| <= band
  int sign = +1;      // defocusing/focusing selector
  int max_band = 16;  // cost guard for the dense triple summation
  // |n - (n1 - n2 + n3)| <= constraint_width.  1 is the bookkeeping relation
  // of the splitting; 3 covers the full support reach of the box windows, at
  // which point the summed pieces reproduce the pointwise nonlinearity.
  int constraint_width = 1;
};

SplitResult apply_split_nonlinearity(const LineField& v, const PeriodicField& w, Real t,
                                     const SplitOptions& opt);

// Plain accumulation of every summand over the same index set, with no
// resonance bookkeeping; the reference total for the partition identity.
// Returned in box order box_min..box_max.
std::vector<CVec> dense_rhs_sum(const LineField& v, const PeriodicField& w, Real t,
                                const SplitOptions& opt);

// Direct route to the same derivative: reconstruct the physical fields from
// the interaction picture, evaluate the coupling nonlinearity pointwise, and
// return sign*i*e^{-it xi^2}*F(G) restricted to the box window.
CVec interaction_rhs_direct(const LineField& v, const PeriodicField& w, Real t, int sign, int box);

void export_enumeration_csv(const std::string& path, int n, Real threshold, int band);

}  // namespace nlshybrid
