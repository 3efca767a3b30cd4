#include "nlshybrid/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlshybrid/boxes.hpp"

namespace nlshybrid {

namespace {

void dealias_line(CVec& spectrum, const LineGrid& g, Real fraction) {
  if (fraction >= 1.0) return;
  const int cut = static_cast<int>(fraction * (g.points / 2));
  for (int j = g.j_min(); j <= g.j_max(); ++j)
    if (std::abs(j) > cut) spectrum[g.index_of(j)] = 0;
}

void dealias_torus(CVec& coeffs, const TorusGrid& g, Real fraction) {
  if (fraction >= 1.0) return;
  const int cut = static_cast<int>(fraction * g.n_max());
  for (Index i = 0; i < coeffs.size(); ++i)
    if (std::abs(g.freq_of(i)) > cut) coeffs[i] = 0;
}

CVec linear_phase_torus(const TorusGrid& g, Real dt) {
  CVec phase(g.samples);
  for (Index i = 0; i < g.samples; ++i) {
    const Real n = g.freq_of(i);
    phase[i] = std::exp(Complex(0, -dt * n * n));
  }
  return phase;
}

CVec linear_phase_line(const LineGrid& g, Real dt) {
  CVec phase(g.points);
  for (int j = g.j_min(); j <= g.j_max(); ++j) {
    const Real xi = g.xi(j);
    phase[g.index_of(j)] = std::exp(Complex(0, -dt * xi * xi));
  }
  return phase;
}

// exact flow of i f_t = sign |f|^2 f: pointwise phase rotation
void rotate_cubic(CVec& samples, Real dt, int sign) {
  for (auto& z : samples) z *= std::exp(Complex(0, -sign * dt * std::norm(z)));
}

}  // namespace

void SolverConfig::validate() const {
  if (dt <= 0) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (dealias_fraction <= 0 || dealias_fraction > 1)
    throw std::invalid_argument("SolverConfig: dealias fraction must lie in (0, 1]");
  if (sign != 1 && sign != -1) throw std::invalid_argument("SolverConfig: sign must be +1 or -1");
  if (torus_modes > line_points / (2 * box_length) - 1)
    throw std::invalid_argument("SolverConfig: line Nyquist must exceed the torus band");
  (void)torus_grid();
  (void)line_grid();
}

CVec g_values(const CVec& w, const CVec& v) {
  CVec g(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const Complex wv = w[i], vv = v[i];
    const Real aw2 = std::norm(wv), av2 = std::norm(vv);
    g[i] = av2 * vv + vv * vv * std::conj(wv) + wv * wv * std::conj(vv) + 2.0 * wv * av2 +
           2.0 * vv * aw2;
  }
  return g;
}

LineField g_nonlinearity(const LineField& w_line, const LineField& v) {
  if (w_line.grid != v.grid) throw std::invalid_argument("g_nonlinearity: grid mismatch");
  return line_field_from_values(v.grid, g_values(w_line.values, v.values));
}

PeriodicField step_periodic(const PeriodicField& w, Real dt, const SolverConfig& cfg) {
  const TorusGrid& g = w.grid;
  if (cfg.scheme == Scheme::StrangSplitStep) {
    PeriodicField out = w;
    const CVec half = linear_phase_torus(g, 0.5 * dt);
    out.coeffs = out.coeffs.cwiseProduct(half);
    CVec samples = torus_to_samples(out);
    rotate_cubic(samples, dt, cfg.sign);
    out = torus_from_samples(g, samples);
    out.coeffs = out.coeffs.cwiseProduct(half);
    return out;
  }
  // integrating-factor RK4 on the cubic term
  const Real s = cfg.sign;
  auto rhs = [&](const CVec& coeffs) {
    PeriodicField f(g);
    f.coeffs = coeffs;
    CVec samples = torus_to_samples(f);
    CVec n(samples.size());
    for (Index i = 0; i < samples.size(); ++i)
      n[i] = Complex(0, -s) * std::norm(samples[i]) * samples[i];
    CVec out = torus_from_samples(g, n).coeffs;
    dealias_torus(out, g, cfg.dealias_fraction);
    return out;
  };
  const CVec e = linear_phase_torus(g, 0.5 * dt);
  const CVec& u = w.coeffs;
  const CVec k1 = rhs(u);
  const CVec k2 = rhs(e.cwiseProduct(u + 0.5 * dt * k1));
  const CVec k3 = rhs(e.cwiseProduct(u) + 0.5 * dt * k2);
  const CVec e2 = e.cwiseProduct(e);
  const CVec k4 = rhs(e2.cwiseProduct(u) + dt * e.cwiseProduct(k3));
  PeriodicField out(g);
  out.coeffs = e2.cwiseProduct(u) +
               (dt / 6.0) * (e2.cwiseProduct(k1) + 2.0 * e.cwiseProduct(k2 + k3) + k4);
  return out;
}

LineField step_line(const LineField& v, const std::array<const LineField*, 3>& w_line, Real dt,
                    const SolverConfig& cfg) {
  const LineGrid& g = v.grid;
  for (const LineField* w : w_line)
    if (w && w->grid != g) throw std::invalid_argument("step_line: grid mismatch");
  const Real s = cfg.sign;

  if (cfg.scheme == Scheme::StrangSplitStep) {
    CVec spectrum = v.spectrum;
    dealias_line(spectrum, g, cfg.dealias_fraction);
    const CVec half = linear_phase_line(g, 0.5 * dt);
    spectrum = spectrum.cwiseProduct(half);
    CVec values = transform_inverse(g, spectrum);
    // classical 4-stage update of v' = -i s G(w, v), w frozen at midpoint
    const CVec& wm = w_line[1]->values;
    auto f = [&](const CVec& x) { return (Complex(0, -s) * g_values(wm, x)).eval(); };
    const CVec k1 = f(values);
    const CVec k2 = f(values + 0.5 * dt * k1);
    const CVec k3 = f(values + 0.5 * dt * k2);
    const CVec k4 = f(values + dt * k3);
    values += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    spectrum = transform_forward(g, values);
    dealias_line(spectrum, g, cfg.dealias_fraction);
    spectrum = spectrum.cwiseProduct(half);
    return line_field_from_spectrum(g, spectrum);
  }

  auto rhs = [&](const CVec& spectrum, const CVec& w_values) {
    const CVec values = transform_inverse(g, spectrum);
    CVec out = transform_forward(g, (Complex(0, -s) * g_values(w_values, values)).eval());
    dealias_line(out, g, cfg.dealias_fraction);
    return out;
  };
  const CVec e = linear_phase_line(g, 0.5 * dt);
  const CVec& u = v.spectrum;
  const CVec k1 = rhs(u, w_line[0]->values);
  const CVec k2 = rhs(e.cwiseProduct(u + 0.5 * dt * k1), w_line[1]->values);
  const CVec k3 = rhs(e.cwiseProduct(u) + 0.5 * dt * k2, w_line[1]->values);
  const CVec e2 = e.cwiseProduct(e);
  const CVec k4 = rhs(e2.cwiseProduct(u) + dt * e.cwiseProduct(k3), w_line[2]->values);
  CVec next = e2.cwiseProduct(u) +
              (dt / 6.0) * (e2.cwiseProduct(k1) + 2.0 * e.cwiseProduct(k2 + k3) + k4);
  return line_field_from_spectrum(g, next);
}

LineField step_direct(const LineField& u, Real dt, const SolverConfig& cfg) {
  const LineGrid& g = u.grid;
  if (cfg.scheme == Scheme::StrangSplitStep) {
    const CVec half = linear_phase_line(g, 0.5 * dt);
    CVec spectrum = u.spectrum.cwiseProduct(half);
    CVec values = transform_inverse(g, spectrum);
    rotate_cubic(values, dt, cfg.sign);
    spectrum = transform_forward(g, values).cwiseProduct(half);
    return line_field_from_spectrum(g, spectrum);
  }
  const Real s = cfg.sign;
  auto rhs = [&](const CVec& spectrum) {
    const CVec values = transform_inverse(g, spectrum);
    CVec n(values.size());
    for (Index i = 0; i < values.size(); ++i)
      n[i] = Complex(0, -s) * std::norm(values[i]) * values[i];
    CVec out = transform_forward(g, n);
    dealias_line(out, g, cfg.dealias_fraction);
    return out;
  };
  const CVec e = linear_phase_line(g, 0.5 * dt);
  const CVec& x = u.spectrum;
  const CVec k1 = rhs(x);
  const CVec k2 = rhs(e.cwiseProduct(x + 0.5 * dt * k1));
  const CVec k3 = rhs(e.cwiseProduct(x) + 0.5 * dt * k2);
  const CVec e2 = e.cwiseProduct(e);
  const CVec k4 = rhs(e2.cwiseProduct(x) + dt * e.cwiseProduct(k3));
  CVec next = e2.cwiseProduct(x) +
              (dt / 6.0) * (e2.cwiseProduct(k1) + 2.0 * e.cwiseProduct(k2 + k3) + k4);
  return line_field_from_spectrum(g, next);
}

bool field_finite(const CVec& values, Real threshold) {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(z) > threshold) return false;
  }
  return true;
}

Real slot_energy(const LineField& v, const LineField& w_line, int slot) {
  const LineGrid& g = v.grid;
  Real acc = 0;
  for (Index i = 0; i < g.points; ++i) {
    const Real x = g.x(i);
    if (x >= slot - 0.5 && x < slot + 0.5) acc += std::norm(v.values[i] + w_line.values[i]);
  }
  return acc * g.dx();
}

HybridState hybrid_step(const HybridState& state, Real dt, const SolverConfig& cfg) {
  const LineGrid& lg = state.v.grid;
  HybridState next;
  // w leads with one full step of its autonomous equation; the midpoint
  // snapshot for the coupling comes from a separate half step
  next.w = step_periodic(state.w, dt, cfg);
  const PeriodicField w_half = step_periodic(state.w, 0.5 * dt, cfg);
  const LineField w0 = embed_periodic_on_line(state.w, lg);
  const LineField w1 = embed_periodic_on_line(w_half, lg);
  const LineField w2 = embed_periodic_on_line(next.w, lg);
  next.v = step_line(state.v, {&w0, &w1, &w2}, dt, cfg);
  next.t = state.t + dt;
  return next;
}

Trajectory co_evolve(const HybridState& initial, const SolverConfig& cfg,
                     const ExperimentSpec& spec) {
  cfg.validate();
  Trajectory traj;
  HybridState state = initial;
  const LineGrid lg = state.v.grid;
  const int steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));

  auto record = [&](const HybridState& s) {
    traj.times.push_back(s.t);
    traj.w_mass.push_back(l2_norm(s.w));
    traj.v_l2.push_back(l2_norm(s.v));
    traj.v_hs.push_back(sobolev_norm(s.v, cfg.sobolev_s));
    if (!spec.knocked_slots.empty()) {
      const LineField w_line = embed_periodic_on_line(s.w, lg);
      std::vector<Real> energies;
      energies.reserve(spec.knocked_slots.size());
      for (int slot : spec.knocked_slots) energies.push_back(slot_energy(s.v, w_line, slot));
      traj.slot_energy.push_back(std::move(energies));
    }
  };

  record(state);
  for (int k = 0; k < steps; ++k) {
    HybridState next = hybrid_step(state, cfg.dt, cfg);
    if (!field_finite(next.v.values, cfg.blowup_threshold) ||
        !field_finite(next.w.coeffs, cfg.blowup_threshold)) {
      traj.blew_up = true;
      traj.blowup_time = next.t;
      break;
    }
    state = std::move(next);
    if ((k + 1) % cfg.record_every == 0 || k + 1 == steps) record(state);
  }
  traj.final_state = state;
  return traj;
}

DirectTrajectory direct_full_solve(const LineField& u0, const SolverConfig& cfg) {
  cfg.validate();
  DirectTrajectory traj;
  LineField u = u0;
  Real t = 0;
  const int steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));
  traj.times.push_back(t);
  traj.u_mass.push_back(l2_norm(u));
  for (int k = 0; k < steps; ++k) {
    LineField next = step_direct(u, cfg.dt, cfg);
    if (!field_finite(next.values, cfg.blowup_threshold)) {
      traj.blew_up = true;
      traj.blowup_time = t + cfg.dt;
      break;
    }
    u = std::move(next);
    t += cfg.dt;
    if ((k + 1) % cfg.record_every == 0 || k + 1 == steps) {
      traj.times.push_back(t);
      traj.u_mass.push_back(l2_norm(u));
    }
  }
  traj.final_u = std::move(u);
  traj.final_t = t;
  return traj;
}

Real existence_time_estimate(Real v0_norm, Real w0_norm) {
  if (v0_norm < 0 || w0_norm < 0)
    throw std::invalid_argument("existence_time_estimate: norms must be nonnegative");
  if (v0_norm == 0) return std::numeric_limits<Real>::infinity();
  const Real total = v0_norm + w0_norm;
  return 2.0 * v0_norm / (16.0 * total * total * total);
}

Real lipschitz_probe(const LineField& v0, const LineField& v0p, const PeriodicField& w0,
                     const SolverConfig& cfg, Real horizon) {
  const Real diff0 = (v0.spectrum - v0p.spectrum).norm() * std::sqrt(v0.grid.dxi());
  if (diff0 == 0) return 0.0;
  const int steps = static_cast<int>(std::llround(horizon / cfg.dt));
  const LineGrid lg = v0.grid;
  PeriodicField w = w0;
  LineField v1 = v0, v2 = v0p;
  Real worst = 0;
  for (int k = 0; k < steps; ++k) {
    const LineField wl0 = embed_periodic_on_line(w, lg);
    const PeriodicField w_half = step_periodic(w, 0.5 * cfg.dt, cfg);
    const LineField wl1 = embed_periodic_on_line(w_half, lg);
    w = step_periodic(w, cfg.dt, cfg);
    const LineField wl2 = embed_periodic_on_line(w, lg);
    v1 = step_line(v1, {&wl0, &wl1, &wl2}, cfg.dt, cfg);
    v2 = step_line(v2, {&wl0, &wl1, &wl2}, cfg.dt, cfg);
    if (!field_finite(v1.values, cfg.blowup_threshold) ||
        !field_finite(v2.values, cfg.blowup_threshold))
      throw std::runtime_error("lipschitz_probe: blowup before the horizon");
    const Real diff = (v1.spectrum - v2.spectrum).norm() * std::sqrt(lg.dxi());
    worst = std::max(worst, diff / diff0);
  }
  return worst;
}

LineField knock_out(const PeriodicField& w0, const ExperimentSpec& spec, const LineGrid& g) {
  if (spec.smoothing_width <= 0)
    throw std::invalid_argument("knock_out: smoothing width must be positive");
  for (int slot : spec.knocked_slots)
    if (slot - 0.5 < -0.5 * g.box_length || slot + 0.5 > 0.5 * g.box_length)
      throw std::invalid_argument("knock_out: slot outside the box");
  const LineField w_line = embed_periodic_on_line(w0, g);
  CVec values = CVec::Zero(g.points);
  for (Index i = 0; i < g.points; ++i) {
    const Real x = g.x(i);
    Real window = 0;
    for (int slot : spec.knocked_slots) {
      const Real rise = smoothstep((x - (slot - 0.5)) / spec.smoothing_width);
      const Real fall = smoothstep(((slot + 0.5) - x) / spec.smoothing_width);
      window = std::max(window, rise * fall);
    }
    values[i] = -window * w_line.values[i];
  }
  return line_field_from_values(g, values);
}

std::vector<Real> ghost_pulse_metric(const Trajectory& traj, std::size_t slot_index) {
  std::vector<Real> series;
  series.reserve(traj.slot_energy.size());
  for (const auto& record : traj.slot_energy) {
    if (slot_index >= record.size())
      throw std::out_of_range("ghost_pulse_metric: slot index out of range");
    series.push_back(record[slot_index]);
  }
  return series;
}

}  // namespace nlshybrid
