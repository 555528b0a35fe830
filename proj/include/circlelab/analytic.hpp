#pragma once

#include <complex>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "circlelab/element.hpp"

namespace circlelab {

using Cplx = std::complex<double>;

// Strip chart C/Z around the circle; validity radius of the base chart. A
// k-cover point is valid while its projection k*z stays in the base strip,
// so the cover strip has radius r_max / k.
inline constexpr double kStripRadius = 0.25;

// Koebe distortion constant at relative radius 1/2: log 81.
inline const double kKoebeKappa = std::log(81.0);

struct ComplexPoint {
  Cplx z;
  int k = 1;
};

inline double strip_radius(int k) { return kStripRadius / k; }

// Distance on the cylinder C/Z (real parts compared mod 1).
double cyl_dist(Cplx a, Cplx b);

// One analytic-continuation step; words are given in application order
// (front() acts first). Throws ExtensionLeavesChart with the number of
// successfully applied steps.
ComplexPoint complex_apply(const Element& g, const ComplexPoint& z);
ComplexPoint complex_apply(std::span<const Element> word, const ComplexPoint& z);

// log |D(word)(z)| accumulated through the composition.
double complex_log_derivative(const Element& g, const ComplexPoint& z);
double complex_log_derivative(std::span<const Element> word, const ComplexPoint& z);

// Region for distortion sampling: a real arc [lo, hi] (hi may exceed 1 to
// describe wrapping arcs) or a complex ball around a circle point.
struct Interval {
  double lo, hi;
};
struct Ball {
  CirclePoint center;
  double radius;
};
using Region = std::variant<Interval, Ball>;

std::vector<ComplexPoint> sample_region(const Region& region, int n_samples, int k);

// Max over sample pairs of log |Dg(y)| / |Dg(x)|.
double distortion(std::span<const Element> word, const Region& region, int n_samples);
double distortion(const Element& g, const Region& region, int n_samples);

// Raw-callable variant on plain C: dlog(z) = log |Df(z)|.
double distortion_fn(const std::function<double(Cplx)>& dlog, Cplx center, double radius,
                     int n_samples);
double distortion_fn(const std::function<double(Cplx)>& dlog, double lo, double hi,
                     int n_samples);

struct KoebeResult {
  double kappa_measured;
  bool image_contains_ball;
};

// Distortion on B(center, r') plus the Koebe image-ball containment test
// with kappa_0 = log 81; univalence on B(center, r) is pre-checked by a
// sampled injectivity grid (throws NotUnivalent).
KoebeResult koebe_check(std::span<const Element> word, const CirclePoint& center, double r,
                        double r_prime, int n_samples = 256);

// Same test for a raw holomorphic function on plain C.
KoebeResult koebe_check_fn(const std::function<Cplx(Cplx)>& f,
                           const std::function<Cplx(Cplx)>& df, Cplx center, double r,
                           double r_prime, int n_samples = 256);

// Largest radius from a 40-step bisection grid such that every generator has
// distortion <= c on every ball B(y, r) over a verification grid of the
// circle. Throws NoPositiveRadius when even the smallest grid radius fails.
double uniform_distortion_radius(std::span<const Element> gens, double c, int y_grid = 64,
                                 int ball_samples = 48);

}  // namespace circlelab
