#pragma once

#include <vector>

#include "nlshybrid/spectral.hpp"

namespace nlshybrid {

// Smooth partition of unity {sigma_k = sigma0(. - k)} subordinate to the
// unit-width cover of the frequency line.  sigma0 is the normalized bump
//   phi(xi) = exp(-1/(1-xi^2)) for |xi| < 1, 0 otherwise,
//   sigma0(xi) = phi(xi) / sum_j phi(xi - j),
// which gives sigma0(0) = 1, support in (-1,1), sum_k sigma_k == 1, and the
// lower bound 1/2 on [-1/2, 1/2).
struct Partition {
  Real sigma0(Real xi) const;
  Real sigma(int k, Real xi) const { return sigma0(xi - k); }
  Real lower_bound_on_q0() const { return 0.5; }
};

Partition make_partition();

// sigma0 sampled on a line grid's lattice: value at lattice offset m is
// sigma0(m / L), |m| < L.  One table serves every box by an index shift of
// k*L, so the box multipliers are exactly translation invariant.
struct BoxTable {
  LineGrid grid;
  RVec sigma0_samples;  // size 2L-1, slot m + (L-1) for m in (-L, L)

  Real sigma(int k, int j) const {  // sigma_k at lattice index j
    const int m = j - k * grid.box_length;
    if (m <= -grid.box_length || m >= grid.box_length) return 0.0;
    return sigma0_samples[m + grid.box_length - 1];
  }
  int min_box() const { return -grid.nyquist() + 1; }
  int max_box() const { return grid.nyquist() - 1; }
};

BoxTable make_box_table(const LineGrid& g);

// Spectral multiplication by sigma_k.
LineField box_project(const BoxTable& table, const LineField& f, int k);

// (sum_k <k>^{sq} ||box_k f||_p^q)^{1/q}, sup interpretation at q = infinity.
Real modulation_norm(const BoxTable& table, const LineField& f, Real s, Real p, Real q);

// ||box_k f||_{p2} / ||box_k f||_{p1}; 0 when the denominator vanishes.
Real bernstein_ratio(const BoxTable& table, const LineField& f, int k, Real p1, Real p2);

// Bounded, compactly supported Fourier multiplier sampled on a line lattice.
struct CutoffMultiplier {
  LineGrid grid;
  RVec samples;  // size P, slot index_of(j)
  Real bound = 0;

  CutoffMultiplier(const LineGrid& g, RVec m);
};

LineField multiplier_apply(const CutoffMultiplier& m, const LineField& f);

// || F^{-1} m ||_{L^1} computed on the grid; the L^p operator-norm bound of
// the multiplier.
Real multiplier_kernel_l1(const CutoffMultiplier& m);

// Smoothed indicator of [-N, N]: equal to 1 there, 0 outside [-N-1, N+1],
// and pointwise nondecreasing in N.
CutoffMultiplier smoothed_indicator(const LineGrid& g, Real N);

// C-infinity step: 0 for u <= 0, 1 for u >= 1, monotone between.
Real smoothstep(Real u);

void export_partition_csv(const Partition& p, const std::string& path, Real xi_max, int samples_per_unit);

}  // namespace nlshybrid
