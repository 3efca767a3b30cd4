#pragma once

#include <stdexcept>

#include "nlshybrid/types.hpp"

namespace nlshybrid {

// Equispaced grid on the unit torus.  Coefficients are indexed by integer
// frequencies; `samples` physical points resolve the declared band without
// aliasing, and stored fields span the full sample-bin range.  With
// samples == 2*modes+1 the bins and the band coincide, so pointwise
// sample-space operations are exactly unitary on the stored state.
struct TorusGrid {
  int modes = 0;    // declared band: n in [-modes, modes]
  int samples = 0;  // 2*modes+1, or a power of two >= 2*modes+1

  TorusGrid() = default;
  TorusGrid(int modes_, int samples_);
  static TorusGrid with_modes(int modes_) { return {modes_, 2 * modes_ + 1}; }

  int n_min() const { return samples % 2 ? -(samples - 1) / 2 : -samples / 2; }
  int n_max() const { return samples % 2 ? (samples - 1) / 2 : samples / 2 - 1; }
  Index index_of(int n) const { return n - n_min(); }
  int freq_of(Index i) const { return static_cast<int>(i) + n_min(); }
  bool operator==(const TorusGrid&) const = default;
};

// Periodic computational box [-L/2, L/2) standing in for the real line.
// The spectral lattice has spacing 1/L, so integer torus frequencies are
// exactly representable when L is an integer.
struct LineGrid {
  int box_length = 0;  // L, integer
  int points = 0;      // P, power of two

  LineGrid() = default;
  LineGrid(int box_length_, int points_);

  Real dxi() const { return 1.0 / box_length; }
  Real dx() const { return static_cast<Real>(box_length) / points; }
  Real x(Index i) const { return -0.5 * box_length + i * dx(); }
  // signed lattice index j <-> frequency j/L; array slot = j + P/2
  int j_min() const { return -points / 2; }
  int j_max() const { return points / 2 - 1; }
  Real xi(int j) const { return static_cast<Real>(j) / box_length; }
  Index index_of(int j) const { return j + points / 2; }
  int j_of(Index i) const { return static_cast<int>(i) - points / 2; }
  // largest box/tone frequency representable on the lattice
  int nyquist() const { return points / (2 * box_length); }
  bool operator==(const LineGrid&) const = default;
};

// 1-periodic function stored by its Fourier coefficients w_n.
struct PeriodicField {
  TorusGrid grid;
  CVec coeffs;  // size grid.samples, slot i <-> frequency grid.freq_of(i)

  PeriodicField() = default;
  explicit PeriodicField(const TorusGrid& g) : grid(g), coeffs(CVec::Zero(g.samples)) {}

  Complex coeff(int n) const {
    return (n < grid.n_min() || n > grid.n_max()) ? Complex{0, 0} : coeffs[grid.index_of(n)];
  }
  void set_coeff(int n, Complex v) { coeffs[grid.index_of(n)] = v; }
};

// Field on the computational box, held in both physical samples and the
// spectral lattice.  The two representations are kept consistent by the
// factories below; treat instances as immutable values.
struct LineField {
  LineGrid grid;
  CVec values;    // size P, slot i at x(i)
  CVec spectrum;  // size P, slot index_of(j) at frequency j/L

  LineField() = default;
  explicit LineField(const LineGrid& g)
      : grid(g), values(CVec::Zero(g.points)), spectrum(CVec::Zero(g.points)) {}
};

// Transform pair on the box, in the convention
//   F(f)(xi)  = integral e^{-2 pi i xi x} f(x) dx      (forward)
//   f(x)      = sum_j F(f)(xi_j) e^{2 pi i xi_j x} dxi (inverse)
// discretized by the trapezoid rule on the periodic lattice.  Parseval holds
// exactly: sum |f_i|^2 dx == sum |F_j|^2 dxi.
CVec transform_forward(const LineGrid& g, const CVec& values);
CVec transform_inverse(const LineGrid& g, const CVec& spectrum);

LineField line_field_from_values(const LineGrid& g, const CVec& values);
LineField line_field_from_spectrum(const LineGrid& g, const CVec& spectrum);

// Samples of the periodic function at x_i = i/samples.
CVec torus_to_samples(const PeriodicField& w);
PeriodicField torus_from_samples(const TorusGrid& g, const CVec& samples);

Real l2_norm(const PeriodicField& w);
Real l2_norm(const LineField& f);
// Physical-space p-norm with grid weight; p = infinity for the sup.
Real lp_norm(const LineField& f, Real p);

Real sobolev_norm(const PeriodicField& w, Real s);
Real sobolev_norm(const LineField& f, Real s);

// Multiply the spectrum by exp(-i t xi^2).
PeriodicField free_evolve(const PeriodicField& w, Real t);
LineField free_evolve(const LineField& f, Real t);

// Place the periodic field on the box: line spectrum w_n / dxi at each
// integer frequency n, zero elsewhere; physical samples are the periodic
// function sampled across the box.
LineField embed_periodic_on_line(const PeriodicField& w, const LineGrid& g);

Real relative_l2_error(const CVec& a, const CVec& b);

}  // namespace nlshybrid
