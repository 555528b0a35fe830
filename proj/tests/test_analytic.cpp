#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "circlelab/analytic.hpp"
#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

using namespace circlelab;

namespace {

// Independent continuation through the tan-coordinate: with t = tan(pi z) the
// action is t -> (c + d t)/(a + b t) and z' = atan(t')/pi up to the winding.
Cplx affine_chart_complex(const ProjectiveMap& g, Cplx z) {
  const Cplx t = std::tan(M_PI * z);
  const Cplx tp = (g.m[2] + g.m[3] * t) / (g.m[0] + g.m[1] * t);
  Cplx w = std::atan(tp) / M_PI;
  return Cplx(wrap01(w.real()), w.imag());
}

}  // namespace

TEST_CASE("complex_apply: identity and real restriction") {
  const Element id = Element::identity();
  const ComplexPoint z{{0.3, 0.05}, 1};
  const ComplexPoint w = complex_apply(id, z);
  CHECK(std::abs(w.z - z.z) < 1e-12);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> entry(-2.0, 2.0), pt(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    std::array<double, 4> raw;
    do {
      for (auto& e : raw) e = entry(rng);
    } while (std::fabs(raw[0] * raw[3] - raw[1] * raw[2]) < 0.1);
    const Element g{normalize(raw), 1, 0};
    const double x = pt(rng);
    const ComplexPoint w2 = complex_apply(g, {{x, 0.0}, 1});
    CHECK(std::fabs(w2.z.imag()) < 1e-12);
    CHECK(circ_dist(w2.z.real(), apply(g, {x, 1}).x) < 1e-10);
  }
}

TEST_CASE("complex_apply agrees with the affine-chart continuation") {
  const Element d2{ProjectiveMap::diagonal(2.0), 1, 0};
  const ComplexPoint z{{0.5, 0.01}, 1};
  const Cplx mine = complex_apply(d2, z).z;
  const Cplx oracle = affine_chart_complex(d2.base, z.z);
  CHECK(std::abs(mine - oracle) < 1e-9);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> entry(-1.5, 1.5), pt(0.0, 1.0), im(-0.03, 0.03);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 60; ++it) {
    std::array<double, 4> raw;
    do {
      for (auto& e : raw) e = entry(rng);
    } while (std::fabs(raw[0] * raw[3] - raw[1] * raw[2]) < 0.2);
    const Element g{normalize(raw), 1, 0};
    const Cplx z2(pt(rng), im(rng));
    if (std::fabs(z2.real() - 0.5) < 0.05) continue;  // tan-oracle pole
    const Cplx t = std::tan(M_PI * z2);
    if (std::abs(g.base.m[0] + g.base.m[1] * t) < 0.2) continue;
    Cplx mine2;
    try {
      mine2 = complex_apply(g, {z2, 1}).z;
    } catch (const ExtensionLeavesChart&) {
      continue;
    }
    const Cplx oracle2 = affine_chart_complex(g.base, z2);
    CHECK(circ_dist(mine2.real(), wrap01(oracle2.real())) < 1e-9);
    CHECK(mine2.imag() == doctest::Approx(oracle2.imag()).epsilon(1e-8));
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("complex derivative matches finite differences") {
  const Element g{normalize({1.3, 0.2, -0.4, 1.0}), 1, 0};
  const Cplx z(0.27, 0.04);
  const double h = 1e-6;
  const Cplx f1 = complex_apply(g, {z + Cplx(h, 0), 1}).z;
  const Cplx f2 = complex_apply(g, {z - Cplx(h, 0), 1}).z;
  const double fd = std::abs((f1 - f2) / (2 * h));
  CHECK(std::exp(complex_log_derivative(g, {z, 1})) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("hyperbolic maps leave the chart above the repelling point") {
  // diag(lambda) sends 0.5 + i/(pi lambda^2) toward i*infinity in the strip.
  const Element g{ProjectiveMap::diagonal(2.0), 1, 0};
  CHECK_THROWS_AS(complex_apply(g, {{0.5, 0.08}, 1}), ExtensionLeavesChart);
}

TEST_CASE("word prefix is reported on chart exit") {
  const Element big{ProjectiveMap::diagonal(2.0), 1, 0};
  const Element id = Element::identity();
  std::vector<Element> word{id, big, big};
  try {
    complex_apply(word, {{0.5, 0.08}, 1});
    CHECK(false);
  } catch (const ExtensionLeavesChart& e) {
    CHECK(e.prefix >= 1);
  }
}

TEST_CASE("distortion: zero for isometries and the z^2 oracle") {
  const Element rot{ProjectiveMap::rotation(0.37), 1, 0};
  CHECK(distortion(rot, Ball{{0.3, 1}, 0.1}, 64) < 1e-12);
  CHECK(distortion(Element::identity(), Interval{0.2, 0.8}, 64) < 1e-15);

  // Raw oracle: |D z^2| = |2 z| on [0.5, 1.5] has log-ratio extremes log 3.
  const double d = distortion_fn(
      [](Cplx z) { return std::log(std::abs(2.0 * z)); }, 0.5, 1.5, 201);
  CHECK(d == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  // Point region
  const double dp = distortion_fn(
      [](Cplx z) { return std::log(std::abs(2.0 * z)); }, 0.7, 0.7, 8);
  CHECK(dp == doctest::Approx(0.0));
}

TEST_CASE("distortion is monotone under region inclusion (sampled)") {
  const Element g{normalize({1.4, 0.3, 0.1, 0.9}), 1, 0};
  double prev = 0.0;
  for (double r : {0.02, 0.04, 0.08}) {
    const double d = distortion(g, Ball{{0.37, 1}, r}, 128);
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
}

TEST_CASE("distortion subadditivity under composition") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> entry(-1.2, 1.2), pt(0.0, 1.0);
  for (int it = 0; it < 30; ++it) {
    std::array<double, 4> r1, r2;
    do {
      for (auto& e : r1) e = entry(rng);
    } while (std::fabs(r1[0] * r1[3] - r1[1] * r1[2]) < 0.2);
    do {
      for (auto& e : r2) e = entry(rng);
    } while (std::fabs(r2[0] * r2[3] - r2[1] * r2[2]) < 0.2);
    const Element g{normalize(r1), 1, 0};
    const Element h{normalize(r2), 1, 0};
    const CirclePoint x{pt(rng), 1};
    const Ball region{x, 0.02};
    std::vector<Element> word{h, g};  // g o h in application order
    double dgh, dh, dg;
    try {
      dgh = distortion(std::span<const Element>(word), region, 96);
      dh = distortion(h, region, 96);
      // image region: ball image is not a ball; bound via sampled image center
      const CirclePoint hx = apply(h, x);
      const double stretch = derivative(h, x);
      dg = distortion(g, Ball{hx, 0.02 * stretch * 1.5}, 96);
    } catch (const ExtensionLeavesChart&) {
      continue;
    }
    CHECK(dgh <= dg + dh + 1e-9);
  }
}

TEST_CASE("koebe_check: identity, affine, z^2 oracle") {
  const auto idres = koebe_check_fn([](Cplx z) { return z; }, [](Cplx) { return Cplx(1.0); },
                                    Cplx(0.0), 0.2, 0.1);
  CHECK(idres.kappa_measured == doctest::Approx(0.0));
  CHECK(idres.image_contains_ball);

  const auto aff = koebe_check_fn([](Cplx z) { return 1.7 * z + Cplx(0.3, 0.1); },
                                  [](Cplx) { return Cplx(1.7); }, Cplx(0.5), 0.3, 0.15);
  CHECK(aff.kappa_measured == doctest::Approx(0.0));
  CHECK(aff.image_contains_ball);

  // z^2 on B(1, 0.5), r' = 0.25: extremes of |2z| give log(1.25/0.75).
  const auto sq = koebe_check_fn([](Cplx z) { return z * z; }, [](Cplx z) { return 2.0 * z; },
                                 Cplx(1.0), 0.5, 0.25);
  CHECK(sq.kappa_measured == doctest::Approx(std::log(1.25 / 0.75)).epsilon(1e-6));
  CHECK(sq.image_contains_ball);

  // Non-univalent sample: z^2 around 0 hits the symmetric pair.
  CHECK_THROWS_AS(koebe_check_fn([](Cplx z) { return z * z; },
                                 [](Cplx z) { return 2.0 * z; }, Cplx(0.0), 0.2, 0.1),
                  NotUnivalent);
}

TEST_CASE("koebe bound holds for group elements") {
  const Element g{normalize({1.5, 0.4, 0.2, 0.8}), 1, 0};
  std::vector<Element> word{g};
  const auto res = koebe_check(std::span<const Element>(word), {0.3, 1}, 0.1, 0.05, 128);
  CHECK(res.kappa_measured <= kKoebeKappa);
  CHECK(res.image_contains_ball);
}

TEST_CASE("uniform_distortion_radius: isometries reach r_max") {
  std::vector<Element> rots{{ProjectiveMap::rotation(0.3), 1, 0},
                            {ProjectiveMap::rotation(-0.3), 1, 0}};
  CHECK(uniform_distortion_radius(rots, 0.1) == doctest::Approx(kStripRadius));
  std::vector<Element> id{Element::identity()};
  CHECK(uniform_distortion_radius(id, 1e-6) == doctest::Approx(kStripRadius));
}

TEST_CASE("lifted complex apply restricts to the real lift") {
  const Element g{ProjectiveMap::diagonal(2.0), 2, 1};
  for (double x : {0.1, 0.4, 0.9}) {
    const ComplexPoint w = complex_apply(g, {{x, 0.0}, 2});
    CHECK(std::fabs(w.z.imag()) < 1e-12);
    CHECK(circ_dist(w.z.real(), apply(g, {x, 2}).x) < 1e-12);
  }
  const ComplexPoint w = complex_apply(g, {{0.2, 0.02}, 2});
  CHECK(std::fabs(w.z.imag()) > 0.0);
  CHECK(std::fabs(w.z.imag()) <= strip_radius(2) + 1e-12);
}
