#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

namespace circlelab {

// Real 2x2 matrix modulo scalar, acting on RP^1. The angular chart identifies
// x in [0,1) with the line [cos(pi x) : sin(pi x)]; in this chart the action
// has no poles and the derivative is |det| / |M v(x)|^2.
struct ProjectiveMap {
  // Row-major (a, b; c, d). Canonical form: |det| = 1 and the first entry
  // whose magnitude exceeds 1e-9 * max|entry| is positive.
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

  double det() const { return m[0] * m[3] - m[1] * m[2]; }
  double trace() const { return m[0] + m[3]; }
  int orientation() const { return det() >= 0.0 ? 1 : -1; }

  bool operator==(const ProjectiveMap&) const = default;

  static ProjectiveMap identity() { return {}; }
  // Boundary matrix of the elliptic rotation around i by tangent angle
  // 2*theta; acts on the chart as x -> x + theta/pi.
  static ProjectiveMap rotation(double theta);
  static ProjectiveMap diagonal(double lambda);
  static ProjectiveMap unipotent(double t);
};

// Canonical representative in PGL2; throws SingularMatrix below 1e-14.
ProjectiveMap normalize(const std::array<double, 4>& raw);

ProjectiveMap mul(const ProjectiveMap& g, const ProjectiveMap& h);
ProjectiveMap inverse(const ProjectiveMap& g);

// Chart action on [0,1) and its derivative (always > 0).
double chart_apply(const ProjectiveMap& g, double x);
double chart_derivative(const ProjectiveMap& g, double x);

// Affine-chart action t -> (a t + b)/(c t + d); throws NearPole when
// |c t + d| < 1e-6.
double affine_apply(const ProjectiveMap& g, double t);

// Real fixed points in the angular chart, if any (hyperbolic: 2 with the
// attracting one first, parabolic: both equal, elliptic: none).
std::optional<std::pair<double, double>> chart_fixed_points(const ProjectiveMap& g);

inline bool is_scalar(const ProjectiveMap& g, double tol = 1e-9) {
  return std::fabs(g.m[1]) <= tol && std::fabs(g.m[2]) <= tol &&
         std::fabs(g.m[0] - g.m[3]) <= tol;
}

// Schwarzian derivative {f, t} by 5-point finite differences with step h.
// The ProjectiveMap overload evaluates increments in factored form so the
// stencil works on full-precision differences; it vanishes within 1e-6
// wherever |c t + d| >= 2.5 |c| + 2.5e-3.
double schwarzian(const ProjectiveMap& g, double t, double h = 1e-3);

template <typename Fn>
double schwarzian_fd(Fn&& f, double t, double h = 1e-3) {
  const double f0 = f(t);
  const double p1 = f(t + h) - f0, m1 = f(t - h) - f0;
  const double p2 = f(t + 2 * h) - f0, m2 = f(t - 2 * h) - f0;
  const double d1 = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h);
  const double d2 = (-p2 + 16 * p1 + 16 * m1 - m2) / (12 * h * h);
  const double d3 = (p2 - 2 * p1 + 2 * m1 - m2) / (2 * h * h * h);
  return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

}  // namespace circlelab
