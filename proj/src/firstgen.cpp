#include "nlshybrid/firstgen.hpp"

#include <cmath>

namespace nlshybrid {

namespace {

enum class WeightMode { Phase, Boundary, Divided };

inline Complex weight(WeightMode mode, Real t, Real a, Real b) {
  switch (mode) {
    case WeightMode::Phase:
      return std::exp(Complex(0, -2.0 * t * a * b));
    case WeightMode::Boundary: {
      const Real ab = a * b;
      if (ab == 0) return {0, 0};
      return std::exp(Complex(0, -2.0 * t * ab)) / (Complex(0, -2.0) * ab);
    }
    case WeightMode::Divided: {
      const Real ab = a * b;
      if (ab == 0) return {0, 0};
      return Complex(1.0 / ab, 0);
    }
  }
  return {0, 0};
}

void require_nonresonant(const FrequencyQuad& q) {
  if (approx(q.n1, q.n) || approx(q.n3, q.n))
    throw std::invalid_argument("divided operator on resonant indices (division hazard)");
}

void require_slots(OperatorKind kind, const OperatorSlots& s, const LineGrid& grid) {
  auto need = [&](const SpectralWindow* w, const char* what) {
    if (!w) throw std::invalid_argument(std::string("missing slot window: ") + what);
    if (w->grid != grid)
      throw std::invalid_argument(std::string("slot window on a different lattice: ") + what);
  };
  switch (kind) {
    case OperatorKind::I: need(s.v1, "v1"); need(s.v2, "v2"); need(s.v3, "v3"); break;
    case OperatorKind::II: need(s.v3, "v3"); break;
    case OperatorKind::III: need(s.v2, "v2"); break;
    case OperatorKind::IV: need(s.v1, "v1"); need(s.v2, "v2"); break;
    case OperatorKind::V: need(s.v1, "v1"); need(s.v3, "v3"); break;
  }
}

// Shared evaluation of Q / Qtilde / R.  All five kinds write into the
// window over supp sigma_n; integrals over line slots use step dxi.
SpectralWindow evaluate(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                        const OperatorSlots& slots, Real t, WeightMode mode) {
  require_slots(kind, slots, table.grid);
  if (mode != WeightMode::Phase) require_nonresonant(q);
  const LineGrid& g = table.grid;
  const int L = g.box_length;
  const Real dxi = g.dxi();
  SpectralWindow out = box_window(g, q.n);

  const bool fast_phase = (mode == WeightMode::Phase && t != 0);

  switch (kind) {
    case OperatorKind::I: {
      const SpectralWindow cv2 = conj_reflect(*slots.v2);
      const SpectralWindow& v1 = *slots.v1;
      const SpectralWindow& v3 = *slots.v3;
      for (int jo = out.first_j; jo <= out.last_j(); ++jo) {
        const Real xi = g.xi(jo);
        Complex acc{0, 0};
        for (int j1 = v1.first_j; j1 <= v1.last_j(); ++j1) {
          const Complex z1 = v1.values[j1 - v1.first_j];
          if (z1 == Complex{0, 0}) continue;
          const Real a = xi - g.xi(j1);
          Complex inner{0, 0};
          if (fast_phase) {
            // e^{-2it a b_k} with b_k = xi - xi3 marching down by dxi
            const Real b0 = xi - g.xi(v3.first_j);
            Complex ph = std::exp(Complex(0, -2.0 * t * a * b0));
            const Complex step = std::exp(Complex(0, 2.0 * t * a * dxi));
            for (int j3 = v3.first_j; j3 <= v3.last_j(); ++j3) {
              const Complex z3 = v3.values[j3 - v3.first_j];
              if (z3 != Complex{0, 0}) {
                const Complex z2 = cv2.at_j(jo - j1 - j3);
                if (z2 != Complex{0, 0}) inner += ph * z2 * z3;
              }
              ph *= step;
            }
          } else {
            for (int j3 = v3.first_j; j3 <= v3.last_j(); ++j3) {
              const Complex z3 = v3.values[j3 - v3.first_j];
              if (z3 == Complex{0, 0}) continue;
              const Complex z2 = cv2.at_j(jo - j1 - j3);
              if (z2 == Complex{0, 0}) continue;
              inner += weight(mode, t, a, xi - g.xi(j3)) * z2 * z3;
            }
          }
          acc += z1 * inner;
        }
        out.values[jo - out.first_j] = table.sigma(q.n, jo) * acc * (dxi * dxi);
      }
      break;
    }
    case OperatorKind::II: {
      const Complex ww = slots.w1 * std::conj(slots.w2);
      const SpectralWindow& v3 = *slots.v3;
      const int shift = (q.n1 - q.n2) * L;
      for (int jo = out.first_j; jo <= out.last_j(); ++jo) {
        const Complex z3 = v3.at_j(jo - shift);
        if (z3 == Complex{0, 0}) continue;
        const Complex w = weight(mode, t, g.xi(jo) - q.n1, q.n1 - q.n2);
        out.values[jo - out.first_j] = table.sigma(q.n, jo) * w * ww * z3;
      }
      break;
    }
    case OperatorKind::III: {
      const SpectralWindow cv2 = conj_reflect(*slots.v2);
      const Complex ww = slots.w1 * slots.w3;
      const int shift = (q.n1 + q.n3) * L;
      for (int jo = out.first_j; jo <= out.last_j(); ++jo) {
        const Complex z2 = cv2.at_j(jo - shift);
        if (z2 == Complex{0, 0}) continue;
        const Real xi = g.xi(jo);
        const Complex w = weight(mode, t, xi - q.n1, xi - q.n3);
        out.values[jo - out.first_j] = table.sigma(q.n, jo) * w * ww * z2;
      }
      break;
    }
    case OperatorKind::IV: {
      const SpectralWindow cv2 = conj_reflect(*slots.v2);
      const SpectralWindow& v1 = *slots.v1;
      const int shift = q.n3 * L;
      for (int jo = out.first_j; jo <= out.last_j(); ++jo) {
        const Real xi = g.xi(jo);
        const Real a = xi - q.n3;
        Complex acc{0, 0};
        for (int j1 = v1.first_j; j1 <= v1.last_j(); ++j1) {
          const Complex z1 = v1.values[j1 - v1.first_j];
          if (z1 == Complex{0, 0}) continue;
          const Complex z2 = cv2.at_j(jo - j1 - shift);
          if (z2 == Complex{0, 0}) continue;
          acc += weight(mode, t, a, xi - g.xi(j1)) * z1 * z2;
        }
        out.values[jo - out.first_j] = table.sigma(q.n, jo) * slots.w3 * acc * dxi;
      }
      break;
    }
    case OperatorKind::V: {
      const SpectralWindow& v1 = *slots.v1;
      const SpectralWindow& v3 = *slots.v3;
      const Complex w2c = std::conj(slots.w2);
      const int shift = q.n2 * L;
      for (int jo = out.first_j; jo <= out.last_j(); ++jo) {
        const Real xi = g.xi(jo);
        Complex acc{0, 0};
        for (int j1 = v1.first_j; j1 <= v1.last_j(); ++j1) {
          const Complex z1 = v1.values[j1 - v1.first_j];
          if (z1 == Complex{0, 0}) continue;
          const Complex z3 = v3.at_j(jo - j1 + shift);
          if (z3 == Complex{0, 0}) continue;
          const Real xi1 = g.xi(j1);
          acc += weight(mode, t, xi - xi1, xi1 - q.n2) * z1 * z3;
        }
        out.values[jo - out.first_j] = table.sigma(q.n, jo) * w2c * acc * dxi;
      }
      break;
    }
  }
  return out;
}

}  // namespace

SpectralWindow box_window(const LineGrid& g, int n) {
  const int L = g.box_length;
  const int first = n * L - (L - 1);
  if (first < g.j_min() || n * L + (L - 1) > g.j_max())
    throw std::out_of_range("box_window: box outside lattice range");
  return SpectralWindow{g, first, CVec::Zero(2 * L - 1)};
}

SpectralWindow box_piece(const BoxTable& table, const LineField& f, int n) {
  SpectralWindow w = box_window(f.grid, n);
  for (int j = w.first_j; j <= w.last_j(); ++j)
    w.values[j - w.first_j] = table.sigma(n, j) * f.spectrum[f.grid.index_of(j)];
  return w;
}

SpectralWindow conj_reflect(const SpectralWindow& w) {
  SpectralWindow out{w.grid, -w.last_j(), w.values.reverse().conjugate()};
  return out;
}

SpectralWindow gauge_window(const SpectralWindow& w, Real t) {
  SpectralWindow out = w;
  for (int j = w.first_j; j <= w.last_j(); ++j) {
    const Real xi = w.grid.xi(j);
    out.values[j - w.first_j] *= std::exp(Complex(0, t * xi * xi));
  }
  return out;
}

SpectralWindow q_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                       const OperatorSlots& slots, Real t) {
  return evaluate(table, kind, q, slots, t, WeightMode::Phase);
}

SpectralWindow qtilde_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                            const OperatorSlots& slots, Real t) {
  return evaluate(table, kind, q, slots, t, WeightMode::Boundary);
}

SpectralWindow r_apply(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                       const OperatorSlots& slots) {
  return evaluate(table, kind, q, slots, 0.0, WeightMode::Divided);
}

Real gauge_residual(const BoxTable& table, OperatorKind kind, const FrequencyQuad& q,
                    const OperatorSlots& slots, Real t) {
  const SpectralWindow lhs = qtilde_apply(table, kind, q, slots, t);

  SpectralWindow g1, g2, g3;
  OperatorSlots gauged = slots;
  if (slots.v1) { g1 = gauge_window(*slots.v1, t); gauged.v1 = &g1; }
  if (slots.v2) { g2 = gauge_window(*slots.v2, t); gauged.v2 = &g2; }
  if (slots.v3) { g3 = gauge_window(*slots.v3, t); gauged.v3 = &g3; }
  gauged.w1 = slots.w1 * std::exp(Complex(0, t * q.n1 * q.n1));
  gauged.w2 = slots.w2 * std::exp(Complex(0, t * q.n2 * q.n2));
  gauged.w3 = slots.w3 * std::exp(Complex(0, t * q.n3 * q.n3));

  SpectralWindow rhs = r_apply(table, kind, q, gauged);
  for (int j = rhs.first_j; j <= rhs.last_j(); ++j) {
    const Real xi = rhs.grid.xi(j);
    rhs.values[j - rhs.first_j] *= std::exp(Complex(0, -t * xi * xi)) / Complex(0, -2.0);
  }

  const Real scale = lhs.values.norm();
  if (scale == 0) return rhs.values.norm();
  return (lhs.values - rhs.values).norm() / scale;
}

Complex rho1_eval(const Partition& p, Real xi1, Real eta, Real xi3, int n) {
  const Real num = p.sigma(n, xi1 + eta + xi3);
  if (num == 0) return {0, 0};
  const Real den = (eta + xi1) * (eta + xi3);
  if (den == 0) throw std::domain_error("rho1_eval: singular point");
  return {num / den, 0};
}

SpectralWindow r_apply_kernel_route(const BoxTable& table, const FrequencyQuad& q,
                                    const OperatorSlots& slots) {
  require_nonresonant(q);
  if (!slots.v1 || !slots.v2 || !slots.v3)
    throw std::invalid_argument("r_apply_kernel_route: kind I needs three windows");
  const LineGrid& g = table.grid;
  const Real dxi = g.dxi();
  const Partition p;
  const SpectralWindow cv2 = conj_reflect(*slots.v2);
  const SpectralWindow& v1 = *slots.v1;
  const SpectralWindow& v3 = *slots.v3;
  SpectralWindow out = box_window(g, q.n);
  // scatter over (xi1, eta, xi3); the output frequency is their sum
  for (int j1 = v1.first_j; j1 <= v1.last_j(); ++j1) {
    const Complex z1 = v1.values[j1 - v1.first_j];
    if (z1 == Complex{0, 0}) continue;
    for (int je = cv2.first_j; je <= cv2.last_j(); ++je) {
      const Complex z2 = cv2.values[je - cv2.first_j];
      if (z2 == Complex{0, 0}) continue;
      for (int j3 = v3.first_j; j3 <= v3.last_j(); ++j3) {
        const Complex z3 = v3.values[j3 - v3.first_j];
        if (z3 == Complex{0, 0}) continue;
        const int jo = j1 + je + j3;
        if (jo < out.first_j || jo > out.last_j()) continue;
        const Real den = (g.xi(je) + g.xi(j1)) * (g.xi(je) + g.xi(j3));
        if (den == 0) continue;
        const Real sigma = p.sigma(q.n, g.xi(jo));
        if (sigma == 0) continue;
        out.values[jo - out.first_j] += (sigma / den) * z1 * z2 * z3 * (dxi * dxi);
      }
    }
  }
  return out;
}

SpectralWindow unit_mass_bump(const LineGrid& g, Real center, Real width) {
  const int jc = static_cast<int>(std::lround(center * g.box_length));
  const int half = std::max(1, static_cast<int>(std::floor(width * g.box_length)));
  SpectralWindow out{g, jc - half, CVec::Zero(2 * half + 1)};
  Real mass = 0;
  for (int m = -half; m <= half; ++m) {
    const Real u = static_cast<Real>(m) / half;
    const Real a = 1.0 - u * u;
    const Real val = a > 0 ? std::exp(-1.0 / a) : 0.0;
    out.values[m + half] = val;
    mass += val;
  }
  out.values /= mass * g.dxi();
  return out;
}

std::vector<Real> delta_limit_errors(const BoxTable& table, const FrequencyQuad& q,
                                     Complex w1, Complex w2, const SpectralWindow& v3,
                                     const std::vector<Real>& widths, Real t) {
  std::vector<Real> errors;
  errors.reserve(widths.size());
  OperatorSlots tone_slots;
  tone_slots.w1 = w1;
  tone_slots.w2 = w2;
  tone_slots.v3 = &v3;
  const SpectralWindow q2 = q_apply(table, OperatorKind::II, q, tone_slots, t);
  for (Real h : widths) {
    SpectralWindow b1 = unit_mass_bump(table.grid, q.n1, h);
    SpectralWindow b2 = unit_mass_bump(table.grid, q.n2, h);
    b1.values *= w1;
    b2.values *= w2;
    OperatorSlots slots;
    slots.v1 = &b1;
    slots.v2 = &b2;
    slots.v3 = &v3;
    const SpectralWindow q1 = q_apply(table, OperatorKind::I, q, slots, t);
    errors.push_back((q1.values - q2.values).norm() * std::sqrt(table.grid.dxi()));
  }
  return errors;
}

Real fir_ratio_denominator(OperatorKind kind, const OperatorSlots& slots) {
  switch (kind) {
    case OperatorKind::I: return slots.v1->l2() * slots.v2->l2() * slots.v3->l2();
    case OperatorKind::II: return std::abs(slots.w1) * std::abs(slots.w2) * slots.v3->l2();
    case OperatorKind::III: return std::abs(slots.w1) * slots.v2->l2() * std::abs(slots.w3);
    case OperatorKind::IV: return slots.v1->l2() * slots.v2->l2() * std::abs(slots.w3);
    case OperatorKind::V: return slots.v1->l2() * std::abs(slots.w2) * slots.v3->l2();
  }
  return 0;
}

}  // namespace nlshybrid
