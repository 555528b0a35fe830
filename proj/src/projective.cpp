#include "circlelab/projective.hpp"

#include <cmath>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

ProjectiveMap ProjectiveMap::rotation(double theta) {
  return {{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)}};
}

ProjectiveMap ProjectiveMap::diagonal(double lambda) {
  return normalize({lambda, 0.0, 0.0, 1.0 / lambda});
}

ProjectiveMap ProjectiveMap::unipotent(double t) {
  return {{1.0, t, 0.0, 1.0}};
}

ProjectiveMap normalize(const std::array<double, 4>& raw) {
  const double d = raw[0] * raw[3] - raw[1] * raw[2];
  if (std::fabs(d) < 1e-14) throw SingularMatrix("determinant magnitude below 1e-14");
  const double s = 1.0 / std::sqrt(std::fabs(d));
  std::array<double, 4> m{raw[0] * s, raw[1] * s, raw[2] * s, raw[3] * s};
  double amax = 0.0;
  for (double e : m) amax = std::max(amax, std::fabs(e));
  for (double e : m) {
    if (std::fabs(e) > 1e-9 * amax) {
      if (e < 0.0)
        for (double& x : m) x = -x;
      break;
    }
  }
  return {m};
}

ProjectiveMap mul(const ProjectiveMap& g, const ProjectiveMap& h) {
  const auto& a = g.m;
  const auto& b = h.m;
  return normalize({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                    a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

ProjectiveMap inverse(const ProjectiveMap& g) {
  return normalize({g.m[3], -g.m[1], -g.m[2], g.m[0]});
}

double chart_apply(const ProjectiveMap& g, double x) {
  const double u = std::cos(M_PI * x), v = std::sin(M_PI * x);
  const double up = g.m[0] * u + g.m[1] * v;
  const double vp = g.m[2] * u + g.m[3] * v;
  return wrap01(std::atan2(vp, up) / M_PI);
}

double chart_derivative(const ProjectiveMap& g, double x) {
  const double u = std::cos(M_PI * x), v = std::sin(M_PI * x);
  const double up = g.m[0] * u + g.m[1] * v;
  const double vp = g.m[2] * u + g.m[3] * v;
  return std::fabs(g.det()) / (up * up + vp * vp);
}

double affine_apply(const ProjectiveMap& g, double t) {
  const double den = g.m[2] * t + g.m[3];
  if (std::fabs(den) < 1e-6) throw NearPole("affine chart pole");
  return (g.m[0] * t + g.m[1]) / den;
}

std::optional<std::pair<double, double>> chart_fixed_points(const ProjectiveMap& g) {
  // Eigenvectors of the normalized matrix; only real eigenvalues give fixed
  // points on RP^1.
  const double tr = g.trace(), dt = g.det();
  const double disc = tr * tr - 4.0 * dt;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  auto point_of = [&](double lam) {
    // (M - lam) v = 0; pick the larger row for stability.
    double v1, v2;
    const double r1 = std::hypot(g.m[0] - lam, g.m[1]);
    const double r2 = std::hypot(g.m[2], g.m[3] - lam);
    if (r1 >= r2) {
      v1 = -g.m[1];
      v2 = g.m[0] - lam;
    } else {
      v1 = -(g.m[3] - lam);
      v2 = g.m[2];
    }
    return wrap01(std::atan2(v2, v1) / M_PI);
  };
  const double l1 = (tr + sq) / 2.0, l2 = (tr - sq) / 2.0;
  // Attracting first: derivative at the fixed point of eigenvalue lam is
  // det/lam^2, so the larger |lam| attracts.
  if (std::fabs(l1) >= std::fabs(l2)) return std::make_pair(point_of(l1), point_of(l2));
  return std::make_pair(point_of(l2), point_of(l1));
}

double schwarzian(const ProjectiveMap& g, double t, double h) {
  const double c = g.m[2], d = g.m[3];
  if (std::fabs(c * t + d) < 1e-6) throw NearPole("Schwarzian near pole");
  const double dt = g.det();
  // f(t+s) - f(t) = s det / (D(t+s) D(t)) keeps the stencil cancellations
  // exact at double precision.
  auto inc = [&](double s) { return s * dt / ((c * (t + s) + d) * (c * t + d)); };
  const double p1 = inc(h), m1 = inc(-h), p2 = inc(2 * h), m2 = inc(-2 * h);
  const double d1 = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h);
  const double d2 = (-p2 + 16 * p1 + 16 * m1 - m2) / (12 * h * h);
  const double d3 = (p2 - 2 * p1 + 2 * m1 - m2) / (2 * h * h * h);
  return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

}  // namespace circlelab
