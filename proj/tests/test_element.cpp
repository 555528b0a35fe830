#include <doctest.h>

#include <cmath>
#include <random>

#include "circlelab/element.hpp"
#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

using namespace circlelab;

TEST_CASE("base chart apply and identity") {
  const Element id = Element::identity();
  CHECK(apply(id, {0.3, 1}).x == doctest::Approx(0.3));
  CHECK(derivative(id, {0.77, 1}) == doctest::Approx(1.0));
  CHECK(is_identity(id));
}

TEST_CASE("deck transformation of the 2-cover") {
  const Element deck = Element::deck(2, 1);
  CHECK(apply(deck, {0.3, 2}).x == doctest::Approx(0.8));
  CHECK(apply(deck, {0.8, 2}).x == doctest::Approx(0.3));
  CHECK(derivative(deck, {0.3, 2}) == doctest::Approx(1.0));
  CHECK_FALSE(is_identity(deck));
  // deck^2 = identity of the 2-cover
  CHECK(is_identity(compose(deck, deck)));
}

TEST_CASE("lift commutes with rotation by 1/k and projects to the base") {
  const Element g{ProjectiveMap::diagonal(2.0), 3, 1};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pt(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const double x = pt(rng);
    const double gx = apply(g, {x, 3}).x;
    // commutes with x -> x + 1/3
    const double shifted = apply(g, {wrap01(x + 1.0 / 3.0), 3}).x;
    CHECK(circ_dist(shifted, wrap01(gx + 1.0 / 3.0)) < 1e-12);
    // projection intertwines with the base action
    const double base = chart_apply(g.base, wrap01(3.0 * x));
    CHECK(circ_dist(wrap01(3.0 * gx), base) < 1e-12);
    // cover derivative equals base derivative at the projected point
    CHECK(derivative(g, {x, 3}) ==
          doctest::Approx(chart_derivative(g.base, wrap01(3.0 * x))).epsilon(1e-12));
  }
}

TEST_CASE("compose tracks branches by winding") {
  const Element g{ProjectiveMap::diagonal(2.0), 2, 1};
  const Element h{ProjectiveMap::rotation(0.4), 2, 0};
  const Element gh = compose(g, h);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pt(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    const double x = pt(rng);
    const double direct = apply(g, apply(h, {x, 2})).x;
    CHECK(circ_dist(apply(gh, {x, 2}).x, direct) < 1e-10);
  }
  // identity composition examples
  const Element id2 = Element::identity(2);
  CHECK(elements_close(compose(g, id2), g));
  CHECK(is_identity(compose(g, inverse(g))));
}

TEST_CASE("inverse undoes the action on the cover") {
  const Element g{ProjectiveMap::diagonal(3.0), 2, 1};
  const Element gi = inverse(g);
  for (double x : {0.05, 0.3, 0.62, 0.99}) {
    CHECK(circ_dist(apply(gi, apply(g, {x, 2})).x, x) < 1e-10);
  }
  // derivative inverse identity at the matching points
  for (double x : {0.1, 0.7}) {
    const CirclePoint p{x, 2};
    CHECK(derivative(gi, apply(g, p)) * derivative(g, p) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("matrix product examples") {
  const Element d2{ProjectiveMap::diagonal(2.0), 1, 0};
  const Element d4 = compose(d2, d2);
  CHECK(d4.base.m[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(d4.base.m[3] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("canonical keys deduplicate roundoff copies") {
  // The same element computed along two multiplication orders.
  const Element a{ProjectiveMap::rotation(0.31), 1, 0};
  const Element b{ProjectiveMap::diagonal(1.7), 1, 0};
  const Element c{ProjectiveMap::unipotent(0.4), 1, 0};
  const Element p1 = compose(compose(a, b), c);
  const Element p2 = compose(a, compose(b, c));
  CHECK(elements_close(p1, p2, 1e-12));
  CHECK(make_key(p1).deck == make_key(p2).deck);

  // Identity reached through a relator-like loop keeps branch 0 on covers.
  const Element g{ProjectiveMap::rotation(0.2), 2, 1};
  const Element loop = compose(inverse(g), g);
  CHECK(is_identity(loop));
}

TEST_CASE("chart mismatch is rejected") {
  const Element g{ProjectiveMap::diagonal(2.0), 2, 0};
  CHECK_THROWS_AS(apply(g, {0.3, 1}), ChartMismatch);
}
