#pragma once

#include <vector>

#include "nlshybrid/boxes.hpp"
#include "nlshybrid/resonance.hpp"

namespace nlshybrid {

// Compactly supported spectral data on a line lattice: values[i] sits at
// signed lattice index first_j + i (frequency (first_j + i) / L).
struct SpectralWindow {
  LineGrid grid;
  int first_j = 0;
  CVec values;

  int last_j() const { return first_j + static_cast<int>(values.size()) - 1; }
  Complex at_j(int j) const {
    return (j < first_j || j > last_j()) ? Complex{0, 0} : values[j - first_j];
  }
  Real l2() const { return values.norm() * std::sqrt(grid.dxi()); }
};

// Window spanning supp sigma_n, bins n*L-(L-1) .. n*L+(L-1).
SpectralWindow box_window(const LineGrid& g, int n);

// box piece of f as a compact window: sigma_n * spectrum on supp sigma_n.
SpectralWindow box_piece(const BoxTable& table, const LineField& f, int n);

// w(j) -> conj(w(-j)); the transform of the complex conjugate.
SpectralWindow conj_reflect(const SpectralWindow& w);

// Multiply by e^{+i t xi^2} (interaction-picture gauge V = e^{it xi^2} v).
SpectralWindow gauge_window(const SpectralWindow& w, Real t);

enum class OperatorKind { I, II, III, IV, V };

// Slot data for one summand.  v-windows feed the black (square-integrable)
// slots of the given kind, tone coefficients feed the red slots:
//   I:   (v1, conj v2, v3)      IV: (v1, conj v2, w3)
//   II:  (w1, conj w2, v3)      V:  (v1, conj w2, v3)
//   III: (w1, conj v2, w3)
// Conjugations are applied internally; the maps are linear in slots 1 and 3
// and antilinear in slot 2.
struct OperatorSlots {
  const SpectralWindow* v1 = nullptr;
  const SpectralWindow* v2 = nullptr;
  const SpectralWindow* v3 = nullptr;
  Complex w1{0, 0}, w2{0, 0}, w3{0, 0};
};

// Single-summand oscillatory integrand of the first-generation expansion,
// with phase e^{-2it(.)(.)} per kind, discretized by the trapezoid rule over
// the compact supports.  Output on supp sigma_n.
SpectralWindow q_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                       const OperatorSlots& slots, Real t);

// Boundary term of differentiation by parts: phase / (-2i (.)(.)).
// Requires a non-resonant quad (n1 and n3 both at distance >= 2 from n).
SpectralWindow qtilde_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                            const OperatorSlots& slots, Real t);

// Divided (phase-free) counterpart with denominator (.)(.); t-independent.
SpectralWindow r_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                       const OperatorSlots& slots);

// || F(qtilde^{1,t}) - e^{-it xi^2} F(R^{1,t}(gauged slots)) / (-2i) ||_2
// normalized by || F(qtilde^{1,t}) ||_2.
Real gauge_residual(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                    const OperatorSlots& slots, Real t);

// Kernel symbol sigma_n(xi1+eta+xi3) / ((eta+xi1)(eta+xi3)).
Complex rho1_eval(const Partition& p, Real xi1, Real eta, Real xi3, int n);

// Kind-I divided operator evaluated through the kernel symbol; an
// independent quadrature of the same object as r_apply(I, ...).
SpectralWindow r_apply_kernel_route(const BoxTable& table, const FrequencyQuad& q,
                                    const OperatorSlots& slots);

// Delta-family limit: with hat v_{n1}, hat v_{n2} = w_{n1}, w_{n2} times
// unit-mass bumps of width h, returns ||Q_I - Q_II||_2 for each h.
std::vector<Real> delta_limit_errors(const BoxTable& table, const FrequencyQuad& q,
                                     Complex w1, Complex w2, const SpectralWindow& v3,
                                     const std::vector<Real>& widths, Real t);

// Unit-mass (trapezoid) bump of the given width centered at frequency c.
SpectralWindow unit_mass_bump(const LineGrid& g, Real center, Real width);

Real fir_ratio_denominator(OperatorKind kind, const OperatorSlots& slots);

}  // namespace nlshybrid
