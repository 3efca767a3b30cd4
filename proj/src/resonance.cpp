#include "nlshybrid/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nlshybrid/firstgen.hpp"
#include "nlshybrid/solver.hpp"

namespace nlshybrid {

Real phi(Real xi, Real xi1, Real xi2, Real xi3) {
  return xi * xi - xi1 * xi1 + xi2 * xi2 - xi3 * xi3;
}

std::int64_t phi(std::int64_t n, std::int64_t n1, std::int64_t n2, std::int64_t n3) {
  return n * n - n1 * n1 + n2 * n2 - n3 * n3;
}

bool approx(int n, int m) { return std::abs(n - m) <= 1; }

bool quad_constrained(const FrequencyQuad& q) { return approx(q.n1 - q.n2 + q.n3, q.n); }

namespace {

QuadClass classify_unchecked(const FrequencyQuad& q, Real threshold) {
  QuadClass c{};
  c.n1_close = approx(q.n1, q.n);
  c.n3_close = approx(q.n3, q.n);
  c.phase = phi(std::int64_t{q.n}, q.n1, q.n2, q.n3);
  if (c.resonant())
    c.tag = c.r1_hit() ? ResonanceTag::R1 : ResonanceTag::R2Part;
  else
    c.tag = std::abs(static_cast<Real>(c.phase)) <= threshold ? ResonanceTag::N11
                                                              : ResonanceTag::N12;
  return c;
}

}  // namespace

QuadClass classify_quad(const FrequencyQuad& q, Real threshold) {
  if (!quad_constrained(q))
    throw std::invalid_argument("classify_quad: quad violates n1 - n2 + n3 ~ n");
  return classify_unchecked(q, threshold);
}

namespace {

template <typename Pred>
std::vector<FrequencyQuad> enumerate_quads(int n, int band, Pred keep) {
  std::vector<FrequencyQuad> out;
  for (int n1 = -band; n1 <= band; ++n1)
    for (int n2 = -band; n2 <= band; ++n2)
      for (int n3 = -band; n3 <= band; ++n3) {
        const FrequencyQuad q{n, n1, n2, n3};
        if (!quad_constrained(q)) continue;
        if (approx(n1, n) || approx(n3, n)) continue;
        if (keep(q)) out.push_back(q);
      }
  return out;
}

}  // namespace

std::vector<FrequencyQuad> enumerate_A_N(int n, Real threshold, int band) {
  if (band < 1) throw std::invalid_argument("enumerate_A_N: band must be >= 1");
  return enumerate_quads(n, band, [&](const FrequencyQuad& q) {
    return std::abs(static_cast<Real>(phi(std::int64_t{q.n}, q.n1, q.n2, q.n3))) <= threshold;
  });
}

std::vector<FrequencyQuad> enumerate_A_N_complement(int n, Real threshold, int band) {
  if (band < 1) throw std::invalid_argument("enumerate_A_N_complement: band must be >= 1");
  return enumerate_quads(n, band, [&](const FrequencyQuad& q) {
    return std::abs(static_cast<Real>(phi(std::int64_t{q.n}, q.n1, q.n2, q.n3))) > threshold;
  });
}

std::int64_t divisor_count(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("divisor_count: m must be >= 1");
  std::int64_t count = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d == 0) count += (d * d == m) ? 1 : 2;
  }
  return count;
}

std::vector<std::int32_t> divisor_count_sieve(std::int32_t limit) {
  std::vector<std::int32_t> d(limit + 1, 0);
  for (std::int32_t k = 1; k <= limit; ++k)
    for (std::int32_t m = k; m <= limit; m += k) ++d[m];
  return d;
}

const char* to_string(ResonanceTag tag) {
  switch (tag) {
    case ResonanceTag::R1: return "R1";
    case ResonanceTag::R2Part: return "R2";
    case ResonanceTag::N11: return "N11";
    case ResonanceTag::N12: return "N12";
  }
  return "?";
}

const SplitPiece& SplitResult::at(int box) const {
  for (const auto& p : pieces)
    if (p.box == box) return p;
  throw std::out_of_range("SplitResult: no such box");
}

namespace {

// Shared slot plumbing for the summation drivers: cached box pieces of v,
// tone lookups of w, and the weighted five-kind sum of one summand.
class QuadSummer {
 public:
  QuadSummer(const LineField& v, const PeriodicField& w, Real t, const SplitOptions& opt)
      : table_(make_box_table(v.grid)),
        tones_(w),
        t_(t),
        band_(opt.band),
        prefactor_(Complex(0, 1) * static_cast<Real>(opt.sign)) {
    for (int k = -band_; k <= band_; ++k) {
      pieces_.push_back(box_piece(table_, v, k));
      nonzero_.push_back(pieces_.back().values.squaredNorm() > 0);
    }
  }

  const BoxTable& table() const { return table_; }

  // weighted sum of the five kinds for one quad; false if every kind vanishes
  bool sum_for(const FrequencyQuad& q, CVec& acc) const {
    static constexpr Real kKindWeight[5] = {1, 2, 1, 2, 1};
    bool any = false;
    auto add = [&](OperatorKind kind, const OperatorSlots& slots, Real kw) {
      const SpectralWindow piece_out = q_apply(table_, kind, q, slots, t_);
      acc += (prefactor_ * kw) * piece_out.values;
      any = true;
    };
    OperatorSlots s;
    if (has_piece(q.n1) && has_piece(q.n2) && has_piece(q.n3)) {
      s = {};
      s.v1 = &piece(q.n1), s.v2 = &piece(q.n2), s.v3 = &piece(q.n3);
      add(OperatorKind::I, s, kKindWeight[0]);
    }
    if (tone(q.n1) != Complex{0, 0} && tone(q.n2) != Complex{0, 0} && has_piece(q.n3)) {
      s = {};
      s.w1 = tone(q.n1), s.w2 = tone(q.n2), s.v3 = &piece(q.n3);
      add(OperatorKind::II, s, kKindWeight[1]);
    }
    if (tone(q.n1) != Complex{0, 0} && has_piece(q.n2) && tone(q.n3) != Complex{0, 0}) {
      s = {};
      s.w1 = tone(q.n1), s.v2 = &piece(q.n2), s.w3 = tone(q.n3);
      add(OperatorKind::III, s, kKindWeight[2]);
    }
    if (has_piece(q.n1) && has_piece(q.n2) && tone(q.n3) != Complex{0, 0}) {
      s = {};
      s.v1 = &piece(q.n1), s.v2 = &piece(q.n2), s.w3 = tone(q.n3);
      add(OperatorKind::IV, s, kKindWeight[3]);
    }
    if (has_piece(q.n1) && tone(q.n2) != Complex{0, 0} && has_piece(q.n3)) {
      s = {};
      s.v1 = &piece(q.n1), s.w2 = tone(q.n2), s.v3 = &piece(q.n3);
      add(OperatorKind::V, s, kKindWeight[4]);
    }
    return any;
  }

 private:
  bool has_piece(int k) const { return std::abs(k) <= band_ && nonzero_[k + band_]; }
  const SpectralWindow& piece(int k) const { return pieces_[k + band_]; }
  Complex tone(int k) const { return std::abs(k) > band_ ? Complex{0, 0} : tones_.coeff(k); }

  BoxTable table_;
  const PeriodicField& tones_;
  Real t_;
  int band_;
  Complex prefactor_;
  std::vector<SpectralWindow> pieces_;
  std::vector<bool> nonzero_;
};

void check_guard(const SplitOptions& opt) {
  if (opt.band > opt.max_band)
    throw std::invalid_argument("split summation: band exceeds dense-summation guard");
}

}  // namespace

SplitResult apply_split_nonlinearity(const LineField& v, const PeriodicField& w, Real t,
                                     const SplitOptions& opt) {
  check_guard(opt);
  const QuadSummer summer(v, w, t, opt);
  const int W = 2 * v.grid.box_length - 1;

  SplitResult result;
  for (int n = opt.box_min; n <= opt.box_max; ++n) {
    SplitPiece out;
    out.box = n;
    out.r2 = CVec::Zero(W);
    out.r1 = CVec::Zero(W);
    out.n1 = CVec::Zero(W);
    CVec sum(W);
    for (int n1 = -opt.band; n1 <= opt.band; ++n1)
      for (int n3 = -opt.band; n3 <= opt.band; ++n3)
        for (int dn = -opt.constraint_width; dn <= opt.constraint_width; ++dn) {
          const int n2 = n1 + n3 - n + dn;
          if (std::abs(n2) > opt.band) continue;
          const FrequencyQuad q{n, n1, n2, n3};
          sum.setZero();
          if (!summer.sum_for(q, sum)) continue;

          const QuadClass cls = classify_unchecked(q, opt.threshold);
          if (cls.resonant()) {
            out.r2 += static_cast<Real>(cls.r2_multiplicity()) * sum;
            if (cls.r1_hit()) out.r1 += sum;
          } else {
            out.n1 += sum;
          }
        }
    result.pieces.push_back(std::move(out));
  }
  return result;
}

std::vector<CVec> dense_rhs_sum(const LineField& v, const PeriodicField& w, Real t,
                                const SplitOptions& opt) {
  check_guard(opt);
  const QuadSummer summer(v, w, t, opt);
  const int W = 2 * v.grid.box_length - 1;
  std::vector<CVec> totals(opt.box_max - opt.box_min + 1, CVec::Zero(W));
  // n2-major traversal, scattering into every reachable output box
  for (int n2 = -opt.band; n2 <= opt.band; ++n2)
    for (int n1 = -opt.band; n1 <= opt.band; ++n1)
      for (int n3 = -opt.band; n3 <= opt.band; ++n3) {
        const int center = n1 - n2 + n3;
        for (int dn = -opt.constraint_width; dn <= opt.constraint_width; ++dn) {
          const int n = center + dn;
          if (n < opt.box_min || n > opt.box_max) continue;
          summer.sum_for({n, n1, n2, n3}, totals[n - opt.box_min]);
        }
      }
  return totals;
}

CVec interaction_rhs_direct(const LineField& v, const PeriodicField& w, Real t, int sign,
                            int box) {
  const LineGrid& g = v.grid;
  // physical fields from interaction-picture data: the free flow is divided
  // out with symbol e^{-it xi^2}, so the physical spectrum is e^{+it xi^2}
  // times the profile.
  const LineField v_phys = free_evolve(v, -t);
  const PeriodicField w_phys = free_evolve(w, -t);
  const LineField w_line = embed_periodic_on_line(w_phys, g);
  const LineField G = g_nonlinearity(w_line, v_phys);

  const BoxTable table = make_box_table(g);
  SpectralWindow out = box_window(g, box);
  for (int j = out.first_j; j <= out.last_j(); ++j) {
    const Real xi = g.xi(j);
    out.values[j - out.first_j] = table.sigma(box, j) *
                                  (Complex(0, 1) * static_cast<Real>(sign)) *
                                  std::exp(Complex(0, -t * xi * xi)) *
                                  G.spectrum[g.index_of(j)];
  }
  return out.values;
}

void export_enumeration_csv(const std::string& path, int n, Real threshold, int band) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_enumeration_csv: cannot open " + path);
  out << "n,n1,n2,n3,phi,class\n";
  for (int n1 = -band; n1 <= band; ++n1)
    for (int n2 = -band; n2 <= band; ++n2)
      for (int n3 = -band; n3 <= band; ++n3) {
        const FrequencyQuad q{n, n1, n2, n3};
        if (!quad_constrained(q)) continue;
        const QuadClass c = classify_quad(q, threshold);
        out << n << "," << n1 << "," << n2 << "," << n3 << "," << c.phase << ","
            << to_string(c.tag) << "\n";
      }
}

}  // namespace nlshybrid
