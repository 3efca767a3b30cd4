#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nlshybrid/spectral.hpp"
#include "nlshybrid/verify.hpp"

using namespace nlshybrid;

namespace {
const LineGrid kGrid(16, 1024);
}

TEST_CASE("constant field transforms to a pure zero-frequency spectrum") {
  const LineField f = line_field_from_values(kGrid, CVec::Ones(kGrid.points));
  CHECK(std::abs(f.spectrum[kGrid.index_of(0)] - Complex(kGrid.box_length, 0)) < 1e-10);
  Real off = 0;
  for (int j = kGrid.j_min(); j <= kGrid.j_max(); ++j)
    if (j != 0) off = std::max(off, std::abs(f.spectrum[kGrid.index_of(j)]));
  CHECK(off < 1e-10);
}

TEST_CASE("inverse of forward is the identity") {
  const LineField f = verify::probe_line_field(kGrid, 10, 99, 1.0);
  const CVec back = transform_inverse(kGrid, transform_forward(kGrid, f.values));
  CHECK(relative_l2_error(back, f.values) < 1e-12);
}

TEST_CASE("Parseval identity on random fields") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const LineField f = verify::probe_line_field(kGrid, 12, seed, 1.0);
    const Real phys = f.values.norm() * std::sqrt(kGrid.dx());
    CHECK(std::abs(phys - l2_norm(f)) / phys < 1e-12);
  }
}

TEST_CASE("torus sobolev norm matches hand values") {
  const TorusGrid g = TorusGrid::with_modes(8);
  PeriodicField w(g);
  w.set_coeff(0, 1.0);
  CHECK(sobolev_norm(w, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sobolev_norm(w, 2.3) == doctest::Approx(1.0).epsilon(1e-14));

  PeriodicField one(g);
  one.set_coeff(1, 1.0);
  CHECK(sobolev_norm(one, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const PeriodicField r = verify::probe_periodic_field(g, 6, 5, 1.0);
  CHECK(sobolev_norm(r, 0.0) == doctest::Approx(l2_norm(r)).epsilon(1e-13));
}

TEST_CASE("line sobolev norm: s = 0 is the physical l2 norm") {
  const LineField f = verify::probe_line_field(kGrid, 8, 71, 1.0);
  const Real phys = f.values.norm() * std::sqrt(kGrid.dx());
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(phys).epsilon(1e-12));
  CHECK(sobolev_norm(LineField(kGrid), 1.5) == 0.0);
}

TEST_CASE("gaussian line sobolev norm stabilizes under box refinement") {
  auto norm_at = [](int L) {
    const LineGrid g(L, 64 * L);
    CVec values(g.points);
    for (Index i = 0; i < g.points; ++i)
      values[i] = std::exp(-M_PI * g.x(i) * g.x(i));
    return sobolev_norm(line_field_from_values(g, values), 1.0);
  };
  const Real n16 = norm_at(16), n32 = norm_at(32), n64 = norm_at(64);
  CHECK(std::abs(n32 - n16) < 1e-8);
  CHECK(std::abs(n64 - n32) < 1e-8);
  CHECK(n64 <= n16 + 1e-12);
}

TEST_CASE("free evolution: identity at t = 0, isometry, group property") {
  const LineField f = verify::probe_line_field(kGrid, 10, 123, 1.0);
  CHECK(relative_l2_error(free_evolve(f, 0.0).spectrum, f.spectrum) == 0.0);
  const LineField g1 = free_evolve(f, 0.37);
  CHECK(std::abs(l2_norm(g1) - l2_norm(f)) / l2_norm(f) < 1e-12);
  CHECK(relative_l2_error(free_evolve(g1, -0.37).spectrum, f.spectrum) < 1e-12);

  const PeriodicField w = verify::probe_periodic_field(TorusGrid::with_modes(8), 6, 9, 1.0);
  CHECK(std::abs(l2_norm(free_evolve(w, 0.37)) - l2_norm(w)) < 1e-12);
}

TEST_CASE("embedding a periodic field on the box") {
  const TorusGrid tg = TorusGrid::with_modes(4);

  SUBCASE("w_0 = 1 gives the constant field") {
    PeriodicField w(tg);
    w.set_coeff(0, 1.0);
    const LineField e = embed_periodic_on_line(w, kGrid);
    CHECK((e.values - CVec::Ones(kGrid.points)).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("w_1 = 1 gives the period-one tone tiled across the box") {
    PeriodicField w(tg);
    w.set_coeff(1, 1.0);
    const LineField e = embed_periodic_on_line(w, kGrid);
    for (Index i = 0; i < kGrid.points; i += 37) {
      const Complex expect = std::exp(Complex(0, 2 * M_PI * kGrid.x(i)));
      CHECK(std::abs(e.values[i] - expect) < 1e-12);
    }
  }

  SUBCASE("tiling identity for the norm") {
    const PeriodicField w = verify::probe_periodic_field(tg, 3, 17, 1.0);
    const LineField e = embed_periodic_on_line(w, kGrid);
    const Real expect = std::sqrt(static_cast<Real>(kGrid.box_length)) * l2_norm(w);
    CHECK(std::abs(l2_norm(e) - expect) / expect < 1e-12);
  }
}

TEST_CASE("sobolev norms are monotone in s") {
  const LineField f = verify::probe_line_field(kGrid, 9, 31, 1.0);
  Real prev = sobolev_norm(f, 0.0);
  for (Real s : {0.25, 0.5, 1.0, 1.7, 2.5}) {
    const Real cur = sobolev_norm(f, s);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(LineGrid(0, 256), std::invalid_argument);
  CHECK_THROWS_AS(LineGrid(8, 100), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(TorusGrid(4, 7), std::invalid_argument);   // too few samples
  CHECK_THROWS_AS(transform_forward(kGrid, CVec::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(embed_periodic_on_line(
                      PeriodicField(TorusGrid::with_modes(600)), kGrid),
                  std::invalid_argument);
}

TEST_CASE("product estimate ratios stay within a uniform bracket") {
  // || w v ||_{H^{s1}} <= C ||w||_{H^{s1+1}(T)} ||v||_{H^{s1}} with one C
  const Real s1 = 1.5;
  const TorusGrid tg = TorusGrid::with_modes(8);
  std::vector<Real> ratios;
  for (int rep = 0; rep < 100; ++rep) {
    const PeriodicField w = verify::probe_periodic_field(tg, 6, 1000 + rep, 1.0);
    const LineField v = verify::probe_line_field(kGrid, 6, 2000 + rep, 1.0);
    const LineField w_line = embed_periodic_on_line(w, kGrid);
    const LineField wv =
        line_field_from_values(kGrid, w_line.values.cwiseProduct(v.values).eval());
    ratios.push_back(sobolev_norm(wv, s1) / (sobolev_norm(w, s1 + 1.0) * sobolev_norm(v, s1)));
  }
  std::sort(ratios.begin(), ratios.end());
  const Real median = 0.5 * (ratios[49] + ratios[50]);
  CHECK(ratios.back() < 10.0 * median);
}
