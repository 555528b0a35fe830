#include <doctest.h>

#include <cmath>
#include <random>

#include "circlelab/errors.hpp"
#include "circlelab/projective.hpp"
#include "circlelab/util.hpp"

using namespace circlelab;

namespace {

// Independent route: the coordinate t = tan(pi x) = v/u carries the Mobius
// action t -> (c + d t)/(a + b t); valid away from x = 1/2 and the pole.
double affine_chart_apply(const ProjectiveMap& g, double x) {
  const double t = std::tan(M_PI * x);
  const double tp = (g.m[2] + g.m[3] * t) / (g.m[0] + g.m[1] * t);
  return wrap01(std::atan(tp) / M_PI);
}

double fd_derivative(const ProjectiveMap& g, double x, double h = 1e-6) {
  const double a = chart_apply(g, wrap01(x + h));
  const double b = chart_apply(g, wrap01(x - h));
  return std::fabs(circ_diff(b, a)) / (2 * h);
}

}  // namespace

TEST_CASE("normalize: canonical representatives") {
  const auto id = normalize({1, 0, 0, 1});
  CHECK(id.m[0] == doctest::Approx(1.0));
  CHECK(id.m[1] == 0.0);

  const auto neg = normalize({-2, 0, 0, -2});
  for (int i = 0; i < 4; ++i) CHECK(neg.m[i] == doctest::Approx(id.m[i]));

  const auto rot = normalize({0, 2, -2, 0});
  CHECK(rot.m[0] == doctest::Approx(0.0));
  CHECK(rot.m[1] == doctest::Approx(1.0));
  CHECK(rot.m[2] == doctest::Approx(-1.0));
  CHECK(rot.m[3] == doctest::Approx(0.0));

  // Idempotent.
  const auto again = normalize(rot.m);
  for (int i = 0; i < 4; ++i) CHECK(again.m[i] == rot.m[i]);

  CHECK_THROWS_AS(normalize({1, 2, 2, 4}), SingularMatrix);
}

TEST_CASE("chart action matches the affine-chart route") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> entry(-2.0, 2.0), pt(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::array<double, 4> raw;
    do {
      for (auto& e : raw) e = entry(rng);
    } while (std::fabs(raw[0] * raw[3] - raw[1] * raw[2]) < 0.1);
    const ProjectiveMap g = normalize(raw);
    const double x = pt(rng);
    if (std::fabs(x - 0.5) < 1e-3) continue;
    if (std::fabs(g.m[0] + g.m[1] * std::tan(M_PI * x)) < 1e-2) continue;
    CHECK(circ_dist(chart_apply(g, x), affine_chart_apply(g, x)) < 1e-10);
  }
}

TEST_CASE("derivative: formula vs central differences") {
  const ProjectiveMap d2 = ProjectiveMap::diagonal(2.0);
  CHECK(chart_derivative(d2, 0.5) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(chart_derivative(d2, 0.5) == doctest::Approx(fd_derivative(d2, 0.5)).epsilon(1e-5));
  CHECK(chart_apply(d2, 0.5) == doctest::Approx(0.5));

  const ProjectiveMap id;
  CHECK(chart_derivative(id, 0.37) == doctest::Approx(1.0));

  const ProjectiveMap rot = ProjectiveMap::rotation(0.77);
  for (double x : {0.0, 0.21, 0.5, 0.83})
    CHECK(chart_derivative(rot, x) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-2.0, 2.0), pt(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    std::array<double, 4> raw;
    do {
      for (auto& e : raw) e = entry(rng);
    } while (std::fabs(raw[0] * raw[3] - raw[1] * raw[2]) < 0.1);
    const ProjectiveMap g = normalize(raw);
    const double x = pt(rng);
    CHECK(chart_derivative(g, x) ==
          doctest::Approx(fd_derivative(g, x)).epsilon(1e-5));
  }
}

TEST_CASE("rotation acts as chart translation") {
  const double theta = 0.3;
  const ProjectiveMap r = ProjectiveMap::rotation(theta);
  for (double x : {0.1, 0.45, 0.9})
    CHECK(circ_dist(chart_apply(r, x), wrap01(x + theta / M_PI)) < 1e-12);
}

TEST_CASE("fixed points of hyperbolic elements") {
  const ProjectiveMap d2 = ProjectiveMap::diagonal(2.0);
  const auto fp = chart_fixed_points(d2);
  REQUIRE(fp.has_value());
  CHECK(fp->first == doctest::Approx(0.0));   // attracting [1:0]
  CHECK(fp->second == doctest::Approx(0.5));  // repelling [0:1]
  CHECK(chart_derivative(d2, fp->first) < 1.0);
  CHECK(chart_derivative(d2, fp->second) > 1.0);

  CHECK_FALSE(chart_fixed_points(ProjectiveMap::rotation(0.5)).has_value());
}

TEST_CASE("schwarzian vanishes on projective maps") {
  CHECK(std::fabs(schwarzian(ProjectiveMap::identity(), 0.3)) < 1e-6);
  CHECK(std::fabs(schwarzian(ProjectiveMap::diagonal(2.0), 1.0)) < 1e-6);
  // t -> t^2 via the raw 5-point stencil: {t^2, t} = -3/(2 t^2).
  const double raw = schwarzian_fd([](double t) { return t * t; }, 1.0);
  CHECK(raw == doctest::Approx(-1.5).epsilon(1e-5));
  CHECK_THROWS_AS(schwarzian(ProjectiveMap{{0, 1, -1, 0}}, 0.0), NearPole);
}

TEST_CASE("affine chart pole guard") {
  const ProjectiveMap s = normalize({0, -1, 1, 0});
  CHECK_THROWS_AS(affine_apply(s, 0.0), NearPole);
  CHECK(affine_apply(ProjectiveMap::unipotent(1.0), 2.0) == doctest::Approx(3.0));
}
