#pragma once

#include <array>
#include <vector>

#include "nlshybrid/spectral.hpp"

namespace nlshybrid {

// Evolution equations, in the frequency convention of spectral.hpp:
//   i u_t + u_xx - sign |u|^2 u = 0          (full line, direct solve)
//   i w_t + w_xx - sign |w|^2 w = 0          (periodic part)
//   i v_t + v_xx - sign G(w, v) = 0          (localized part)
// sign = +1 is the defocusing branch; a plane wave A e_k rotates with
// omega = -k^2 - sign |A|^2.  The linear flow is free_evolve.

enum class Scheme { StrangSplitStep, Rk4IntegratingFactor };

struct SolverConfig {
  Scheme scheme = Scheme::StrangSplitStep;
  Real dt = 1e-3;
  Real t_final = 1.0;
  int sign = +1;  // +1 defocusing, -1 focusing
  int torus_modes = 32;
  int box_length = 32;
  int line_points = 4096;
  Real dealias_fraction = 2.0 / 3.0;
  Real blowup_threshold = 1e6;
  int record_every = 10;
  Real sobolev_s = 1.0;

  void validate() const;
  TorusGrid torus_grid() const { return TorusGrid::with_modes(torus_modes); }
  LineGrid line_grid() const { return LineGrid(box_length, line_points); }
};

struct HybridState {
  PeriodicField w;
  LineField v;
  Real t = 0;
};

struct ExperimentSpec {
  std::vector<int> knocked_slots;
  Real smoothing_width = 0.05;
};

struct Trajectory {
  std::vector<Real> times;
  std::vector<Real> w_mass;
  std::vector<Real> v_l2;
  std::vector<Real> v_hs;
  std::vector<std::vector<Real>> slot_energy;  // [record][slot]
  bool blew_up = false;
  Real blowup_time = 0;
  HybridState final_state;
};

struct DirectTrajectory {
  std::vector<Real> times;
  std::vector<Real> u_mass;
  bool blew_up = false;
  Real blowup_time = 0;
  LineField final_u;
  Real final_t = 0;
};

// G(w, v) = |w+v|^2 (w+v) - |w|^2 w, expanded and evaluated pointwise.
LineField g_nonlinearity(const LineField& w_line, const LineField& v);
CVec g_values(const CVec& w, const CVec& v);

// One time step of the periodic equation; dt may be negative.
PeriodicField step_periodic(const PeriodicField& w, Real dt, const SolverConfig& cfg);

// One time step of the v equation; w_line holds the physical periodic field
// embedded on v's grid at times (t, t+dt/2, t+dt).
LineField step_line(const LineField& v, const std::array<const LineField*, 3>& w_line, Real dt,
                    const SolverConfig& cfg);

// One time step of the full cubic equation on the box.
LineField step_direct(const LineField& u, Real dt, const SolverConfig& cfg);

// One coupled step: w advances by a full step of its own equation, and the
// v step consumes the periodic field embedded on v's grid at the times
// (t, t+dt/2, t+dt); dt may be negative.
HybridState hybrid_step(const HybridState& state, Real dt, const SolverConfig& cfg);

// Coupled evolution to cfg.t_final; w leads, the v step consumes the
// periodic field at the substep times its scheme requires.
Trajectory co_evolve(const HybridState& initial, const SolverConfig& cfg,
                     const ExperimentSpec& spec = {});

// Single-domain evolution of u = v + w; the splitting oracle.
DirectTrajectory direct_full_solve(const LineField& u0, const SolverConfig& cfg);

// T with 16 T (||v0|| + ||w0||)^3 <= R and ball radius R = 2 ||v0||.
// Returns +infinity when ||v0|| = 0 (the localized part then stays zero).
Real existence_time_estimate(Real v0_norm, Real w0_norm);

// sup_{t <= T} ||v1 - v2||_2 / ||v0 - v0p||_2 along coupled runs sharing w.
Real lipschitz_probe(const LineField& v0, const LineField& v0p, const PeriodicField& w0,
                     const SolverConfig& cfg, Real horizon);

// v0 = -(embedded w0) * smoothed indicator of the knocked slots; slot k
// covers [k - 1/2, k + 1/2) with a rolloff of the given width inside it.
LineField knock_out(const PeriodicField& w0, const ExperimentSpec& spec, const LineGrid& g);

// Energy in one slot: integral over [k-1/2, k+1/2) of |v + w|^2.
Real slot_energy(const LineField& v, const LineField& w_line, int slot);

// Time series of slot energy extracted from a recorded trajectory.
std::vector<Real> ghost_pulse_metric(const Trajectory& traj, std::size_t slot_index);

bool field_finite(const CVec& values, Real threshold);

}  // namespace nlshybrid
