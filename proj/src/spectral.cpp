#include "nlshybrid/spectral.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

namespace nlshybrid {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Unscaled DFT helpers; bin k of fwd() is sum_i in[i] e^{-2 pi i k i / N}.
CVec dft_forward(const CVec& in) {
  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  CVec out(in.size());
  fft.fwd(out, in);
  return out;
}

CVec dft_inverse(const CVec& in) {
  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  CVec out(in.size());
  fft.inv(out, in);
  return out;
}

}  // namespace

TorusGrid::TorusGrid(int modes_, int samples_) : modes(modes_), samples(samples_) {
  if (modes < 0) throw std::invalid_argument("TorusGrid: modes must be >= 0");
  if (samples < 2 * modes + 1)
    throw std::invalid_argument("TorusGrid: need at least 2*modes+1 samples");
  if (samples != 2 * modes + 1 && !is_pow2(samples))
    throw std::invalid_argument("TorusGrid: samples must be 2*modes+1 or a power of two");
}

LineGrid::LineGrid(int box_length_, int points_) : box_length(box_length_), points(points_) {
  if (box_length < 1) throw std::invalid_argument("LineGrid: box length must be a positive integer");
  if (!is_pow2(points)) throw std::invalid_argument("LineGrid: points must be a power of two");
  if (points < 2 * box_length) throw std::invalid_argument("LineGrid: fewer than two points per tooth");
}

// x_i = -L/2 + i L/P, so e^{-2 pi i j x_i / L} = (-1)^j e^{-2 pi i j i / P}.
// The (-1)^j twist carries the centered box origin through the plain DFT.
CVec transform_forward(const LineGrid& g, const CVec& values) {
  if (values.size() != g.points) throw std::invalid_argument("transform_forward: size mismatch");
  const CVec bins = dft_forward(values);
  const int P = g.points;
  CVec spectrum(P);
  const Real scale = static_cast<Real>(g.box_length) / P;
  for (int j = g.j_min(); j <= g.j_max(); ++j) {
    const Real twist = (j & 1) ? -1.0 : 1.0;
    spectrum[g.index_of(j)] = scale * twist * bins[(j % P + P) % P];
  }
  return spectrum;
}

CVec transform_inverse(const LineGrid& g, const CVec& spectrum) {
  if (spectrum.size() != g.points) throw std::invalid_argument("transform_inverse: size mismatch");
  const int P = g.points;
  CVec bins = CVec::Zero(P);
  for (int j = g.j_min(); j <= g.j_max(); ++j) {
    const Real twist = (j & 1) ? -1.0 : 1.0;
    bins[(j % P + P) % P] = twist * spectrum[g.index_of(j)];
  }
  return dft_inverse(bins) / static_cast<Real>(g.box_length);
}

LineField line_field_from_values(const LineGrid& g, const CVec& values) {
  LineField f(g);
  f.values = values;
  f.spectrum = transform_forward(g, values);
  return f;
}

LineField line_field_from_spectrum(const LineGrid& g, const CVec& spectrum) {
  LineField f(g);
  f.spectrum = spectrum;
  f.values = transform_inverse(g, spectrum);
  return f;
}

CVec torus_to_samples(const PeriodicField& w) {
  const int S = w.grid.samples;
  CVec bins = CVec::Zero(S);
  for (Index i = 0; i < S; ++i) {
    const int n = w.grid.freq_of(i);
    bins[(n % S + S) % S] = w.coeffs[i];
  }
  return dft_inverse(bins);
}

PeriodicField torus_from_samples(const TorusGrid& g, const CVec& samples) {
  if (samples.size() != g.samples) throw std::invalid_argument("torus_from_samples: size mismatch");
  const int S = g.samples;
  const CVec bins = dft_forward(samples) / static_cast<Real>(S);
  PeriodicField w(g);
  for (Index i = 0; i < S; ++i) {
    const int n = g.freq_of(i);
    w.coeffs[i] = bins[(n % S + S) % S];
  }
  return w;
}

Real l2_norm(const PeriodicField& w) { return w.coeffs.norm(); }

Real l2_norm(const LineField& f) { return f.spectrum.norm() * std::sqrt(f.grid.dxi()); }

Real lp_norm(const LineField& f, Real p) {
  if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  if (p == 2) return f.values.norm() * std::sqrt(f.grid.dx());
  Real acc = 0;
  for (Index i = 0; i < f.values.size(); ++i) acc += std::pow(std::abs(f.values[i]), p);
  return std::pow(acc * f.grid.dx(), 1.0 / p);
}

Real sobolev_norm(const PeriodicField& w, Real s) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  Real acc = 0;
  for (Index i = 0; i < w.coeffs.size(); ++i) {
    const Real n = w.grid.freq_of(i);
    acc += std::pow(1.0 + n * n, s) * std::norm(w.coeffs[i]);
  }
  return std::sqrt(acc);
}

Real sobolev_norm(const LineField& f, Real s) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  Real acc = 0;
  for (Index i = 0; i < f.spectrum.size(); ++i) {
    const Real xi = f.grid.xi(f.grid.j_of(i));
    acc += std::pow(1.0 + xi * xi, s) * std::norm(f.spectrum[i]);
  }
  return std::sqrt(acc * f.grid.dxi());
}

PeriodicField free_evolve(const PeriodicField& w, Real t) {
  PeriodicField out = w;
  for (Index i = 0; i < out.coeffs.size(); ++i) {
    const Real n = w.grid.freq_of(i);
    out.coeffs[i] *= std::exp(-kI * (t * n * n));
  }
  return out;
}

LineField free_evolve(const LineField& f, Real t) {
  CVec spectrum = f.spectrum;
  for (Index i = 0; i < spectrum.size(); ++i) {
    const Real xi = f.grid.xi(f.grid.j_of(i));
    spectrum[i] *= std::exp(-kI * (t * xi * xi));
  }
  return line_field_from_spectrum(f.grid, spectrum);
}

LineField embed_periodic_on_line(const PeriodicField& w, const LineGrid& g) {
  const int L = g.box_length;
  if (w.grid.n_max() * L > g.j_max() || w.grid.n_min() * L < g.j_min())
    throw std::invalid_argument("embed_periodic_on_line: torus band exceeds line Nyquist");
  CVec spectrum = CVec::Zero(g.points);
  for (Index i = 0; i < w.coeffs.size(); ++i) {
    const int n = w.grid.freq_of(i);
    spectrum[g.index_of(n * L)] = w.coeffs[i] * static_cast<Real>(L);  // w_n / dxi
  }
  return line_field_from_spectrum(g, spectrum);
}

Real relative_l2_error(const CVec& a, const CVec& b) {
  const Real scale = b.norm();
  if (scale == 0) return a.norm();
  return (a - b).norm() / scale;
}

}  // namespace nlshybrid
