#include "nlshybrid/boxes.hpp"

#include <cmath>
#include <fstream>

namespace nlshybrid {

namespace {

Real bump(Real xi) {
  const Real a = 1.0 - xi * xi;
  return a > 0 ? std::exp(-1.0 / a) : 0.0;
}

}  // namespace

Real Partition::sigma0(Real xi) const {
  const Real num = bump(xi);
  if (num == 0) return 0.0;
  // Only the two integer shifts adjacent to xi can contribute.
  Real den = 0;
  const int lo = static_cast<int>(std::floor(xi));
  for (int j = lo - 1; j <= lo + 2; ++j) den += bump(xi - j);
  return num / den;
}

Partition make_partition() { return Partition{}; }

BoxTable make_box_table(const LineGrid& g) {
  Partition p;
  const int L = g.box_length;
  RVec samples(2 * L - 1);
  for (int m = -(L - 1); m <= L - 1; ++m)
    samples[m + L - 1] = p.sigma0(static_cast<Real>(m) / L);
  return BoxTable{g, std::move(samples)};
}

LineField box_project(const BoxTable& table, const LineField& f, int k) {
  if (f.grid != table.grid) throw std::invalid_argument("box_project: grid mismatch");
  if (k < table.min_box() || k > table.max_box())
    throw std::out_of_range("box_project: box index outside lattice range");
  const LineGrid& g = f.grid;
  CVec spectrum = CVec::Zero(g.points);
  const int L = g.box_length;
  for (int m = -(L - 1); m <= L - 1; ++m) {
    const int j = k * L + m;
    spectrum[g.index_of(j)] = table.sigma0_samples[m + L - 1] * f.spectrum[g.index_of(j)];
  }
  return line_field_from_spectrum(g, spectrum);
}

Real modulation_norm(const BoxTable& table, const LineField& f, Real s, Real p, Real q) {
  if (p < 1 || q < 1) throw std::invalid_argument("modulation_norm: p, q must be in [1, inf]");
  const bool qinf = std::isinf(q);
  Real acc = 0;
  for (int k = table.min_box(); k <= table.max_box(); ++k) {
    const Real piece = lp_norm(box_project(table, f, k), p);
    if (piece == 0) continue;
    const Real weight = std::pow(1.0 + static_cast<Real>(k) * k, 0.5 * s);
    if (qinf)
      acc = std::max(acc, weight * piece);
    else
      acc += std::pow(weight * piece, q);
  }
  return qinf ? acc : std::pow(acc, 1.0 / q);
}

Real bernstein_ratio(const BoxTable& table, const LineField& f, int k, Real p1, Real p2) {
  if (p1 > p2) throw std::invalid_argument("bernstein_ratio: requires p1 <= p2");
  const LineField piece = box_project(table, f, k);
  const Real denom = lp_norm(piece, p1);
  if (denom == 0) return 0.0;
  return lp_norm(piece, p2) / denom;
}

CutoffMultiplier::CutoffMultiplier(const LineGrid& g, RVec m) : grid(g), samples(std::move(m)) {
  if (samples.size() != g.points) throw std::invalid_argument("CutoffMultiplier: lattice mismatch");
  bound = samples.cwiseAbs().maxCoeff();
  // compact support: must vanish at the lattice ends
  if (samples[0] != 0 || samples[g.points - 1] != 0)
    throw std::invalid_argument("CutoffMultiplier: support reaches the lattice boundary");
}

LineField multiplier_apply(const CutoffMultiplier& m, const LineField& f) {
  if (f.grid != m.grid) throw std::invalid_argument("multiplier_apply: lattice mismatch");
  return line_field_from_spectrum(f.grid, m.samples.cast<Complex>().cwiseProduct(f.spectrum));
}

Real multiplier_kernel_l1(const CutoffMultiplier& m) {
  const CVec kernel = transform_inverse(m.grid, m.samples.cast<Complex>());
  return kernel.cwiseAbs().sum() * m.grid.dx();
}

Real smoothstep(Real u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  const Real a = std::exp(-1.0 / u);
  const Real b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

CutoffMultiplier smoothed_indicator(const LineGrid& g, Real N) {
  RVec m(g.points);
  for (int j = g.j_min(); j <= g.j_max(); ++j) {
    const Real u = N + 1.0 - std::abs(g.xi(j));
    m[g.index_of(j)] = smoothstep(u);
  }
  m[0] = 0;  // bin -P/2 has no +P/2 partner; keep the support symmetric
  return CutoffMultiplier(g, std::move(m));
}

void export_partition_csv(const Partition& p, const std::string& path, Real xi_max,
                          int samples_per_unit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_partition_csv: cannot open " + path);
  out << "xi,sigma0\n";
  const int n = static_cast<int>(xi_max * samples_per_unit);
  for (int i = -n; i <= n; ++i) {
    const Real xi = static_cast<Real>(i) / samples_per_unit;
    out << xi << "," << p.sigma0(xi) << "\n";
  }
}

}  // namespace nlshybrid
