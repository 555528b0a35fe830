#include "circlelab/analytic.hpp"

#include <cmath>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// SU(1,1)-type coefficients of the normalized matrix: with u = exp(2 pi i z)
// the chart action becomes u -> (p u + q) / (conj(q) u + conj(p)), and
// |p|^2 - |q|^2 = det.
struct Su11 {
  Cplx p, q;
};

Su11 su11_of(const ProjectiveMap& g) {
  const double a = g.m[0], b = g.m[1], c = g.m[2], d = g.m[3];
  return {Cplx((a + d) / 2.0, (c - b) / 2.0), Cplx((a - d) / 2.0, (c + b) / 2.0)};
}

bool base_apply_raw(const ProjectiveMap& g, Cplx w, Cplx* out) {
  const Su11 s = su11_of(g);
  const Cplx u = std::exp(Cplx(0.0, kTwoPi) * w);
  const Cplx num = s.p * u + s.q;
  const Cplx den = std::conj(s.q) * u + std::conj(s.p);
  if (std::abs(den) < 1e-300 || std::abs(num) < 1e-300) return false;
  const Cplx u2 = num / den;
  const double im = -std::log(std::abs(u2)) / kTwoPi;
  if (!std::isfinite(im) || std::fabs(im) > kStripRadius + 1e-12) return false;
  const double re = wrap01(std::arg(u2) / kTwoPi);
  *out = Cplx(re, im);
  return true;
}

bool base_log_deriv(const ProjectiveMap& g, Cplx w, double* out) {
  // dz'/dz = det * u / ((p u + q)(conj(q) u + conj(p))).
  const Su11 s = su11_of(g);
  const Cplx u = std::exp(Cplx(0.0, kTwoPi) * w);
  const Cplx num = s.p * u + s.q;
  const Cplx den = std::conj(s.q) * u + std::conj(s.p);
  const double mag = std::abs(u) / (std::abs(num) * std::abs(den));
  if (!std::isfinite(mag) || mag <= 0.0) return false;
  *out = std::log(mag);  // |det| = 1 after normalize
  return true;
}

// Analytic continuation of the pinned lift g~ from the real point Re(w)
// vertically to w, tracking the integer winding stepwise.
bool lift_complex(const ProjectiveMap& g, Cplx w, Cplx* out) {
  const double t = w.real();
  const double im = w.imag();
  const double start = lift_value(g, t);
  int steps = 1;
  {
    const double d0 = chart_derivative(g, wrap01(t));
    steps = std::max(1, static_cast<int>(std::ceil(std::fabs(im) * d0 * 16.0)));
    steps = std::min(steps, 1 << 12);
  }
  for (; steps <= (1 << 14); steps *= 2) {
    Cplx prev(start, 0.0);
    bool ok = true;
    for (int j = 1; j <= steps; ++j) {
      const Cplx wj(t, im * j / steps);
      Cplx zb;
      if (!base_apply_raw(g, wj, &zb)) return false;
      const double wind = std::round(prev.real() - zb.real());
      const Cplx val = zb + Cplx(wind, 0.0);
      if (std::fabs(val.real() - prev.real()) > 0.3) {
        ok = false;
        break;
      }
      prev = val;
    }
    if (ok) {
      *out = prev;
      return true;
    }
  }
  return false;
}

bool element_apply_raw(const Element& g, const ComplexPoint& z, ComplexPoint* out) {
  if (g.k == 1) {
    Cplx w;
    if (!base_apply_raw(g.base, z.z, &w)) return false;
    *out = {w, 1};
    return true;
  }
  const Cplx w = static_cast<double>(g.k) * z.z;
  if (std::fabs(w.imag()) > kStripRadius + 1e-12) return false;
  Cplx lifted;
  if (!lift_complex(g.base, w, &lifted)) return false;
  Cplx res = (lifted + Cplx(g.branch, 0.0)) / static_cast<double>(g.k);
  res = Cplx(wrap01(res.real()), res.imag());
  if (std::fabs(res.imag()) > strip_radius(g.k) + 1e-12) return false;
  *out = {res, g.k};
  return true;
}

bool element_log_deriv(const Element& g, const ComplexPoint& z, double* out) {
  // D of the lift at z equals D of the base at the projected point k z.
  const Cplx w = static_cast<double>(g.k) * z.z;
  return base_log_deriv(g.base, w, out);
}

}  // namespace

double cyl_dist(Cplx a, Cplx b) {
  return std::hypot(circ_diff(a.real(), b.real()), a.imag() - b.imag());
}

ComplexPoint complex_apply(const Element& g, const ComplexPoint& z) {
  if (g.k != z.k) throw ChartMismatch("cover degree mismatch in complex_apply");
  ComplexPoint out;
  if (!element_apply_raw(g, z, &out)) throw ExtensionLeavesChart(0);
  return out;
}

ComplexPoint complex_apply(std::span<const Element> word, const ComplexPoint& z) {
  ComplexPoint cur = z;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].k != cur.k) throw ChartMismatch("cover degree mismatch in complex_apply");
    ComplexPoint next;
    if (!element_apply_raw(word[i], cur, &next)) throw ExtensionLeavesChart(i);
    cur = next;
  }
  return cur;
}

double complex_log_derivative(const Element& g, const ComplexPoint& z) {
  if (g.k != z.k) throw ChartMismatch("cover degree mismatch");
  double v;
  if (!element_log_deriv(g, z, &v)) throw ExtensionLeavesChart(0);
  return v;
}

double complex_log_derivative(std::span<const Element> word, const ComplexPoint& z) {
  ComplexPoint cur = z;
  double acc = 0.0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    double v;
    if (!element_log_deriv(word[i], cur, &v)) throw ExtensionLeavesChart(i);
    acc += v;
    ComplexPoint next;
    if (!element_apply_raw(word[i], cur, &next)) throw ExtensionLeavesChart(i);
    cur = next;
  }
  return acc;
}

std::vector<ComplexPoint> sample_region(const Region& region, int n_samples, int k) {
  std::vector<ComplexPoint> pts;
  if (const auto* iv = std::get_if<Interval>(&region)) {
    const int n = std::max(2, n_samples);
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double t = iv->lo + (iv->hi - iv->lo) * i / (n - 1);
      pts.push_back({Cplx(wrap01(t), 0.0), k});
    }
    return pts;
  }
  const auto& ball = std::get<Ball>(region);
  const int n = std::max(8, n_samples);
  pts.push_back({Cplx(ball.center.x, 0.0), ball.center.k});
  const double radii[3] = {ball.radius, ball.radius / 2.0, ball.radius / 4.0};
  const int counts[3] = {n / 2, n / 4, n - n / 2 - n / 4 - 1};
  for (int ring = 0; ring < 3; ++ring) {
    const int m = std::max(4, counts[ring]);
    for (int i = 0; i < m; ++i) {
      const double phi = kTwoPi * i / m;
      pts.push_back({Cplx(wrap01(ball.center.x + radii[ring] * std::cos(phi)),
                          radii[ring] * std::sin(phi)),
                     ball.center.k});
    }
  }
  return pts;
}

namespace {

double distortion_over_samples(std::span<const Element> word,
                               const std::vector<ComplexPoint>& pts) {
  double lo = 1e300, hi = -1e300;
  for (const auto& z : pts) {
    const double v = complex_log_derivative(word, z);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (pts.empty()) return 0.0;
  return hi - lo;
}

}  // namespace

double distortion(std::span<const Element> word, const Region& region, int n_samples) {
  const int k = word.empty() ? 1 : word.front().k;
  return distortion_over_samples(word, sample_region(region, n_samples, k));
}

double distortion(const Element& g, const Region& region, int n_samples) {
  return distortion(std::span<const Element>(&g, 1), region, n_samples);
}

double distortion_fn(const std::function<double(Cplx)>& dlog, Cplx center, double radius,
                     int n_samples) {
  double lo = 1e300, hi = -1e300;
  auto visit = [&](Cplx z) {
    const double v = dlog(z);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  visit(center);
  const int n = std::max(8, n_samples);
  const double radii[3] = {radius, radius / 2.0, radius / 4.0};
  for (double r : radii)
    for (int i = 0; i < n; ++i) visit(center + std::polar(r, kTwoPi * i / n));
  return hi - lo;
}

double distortion_fn(const std::function<double(Cplx)>& dlog, double lo_t, double hi_t,
                     int n_samples) {
  double lo = 1e300, hi = -1e300;
  const int n = std::max(2, n_samples);
  for (int i = 0; i < n; ++i) {
    const double v = dlog(Cplx(lo_t + (hi_t - lo_t) * i / (n - 1), 0.0));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

namespace {

void injectivity_grid_check(const std::function<Cplx(Cplx)>& f, Cplx center, double r,
                            bool cylinder) {
  std::vector<Cplx> pts, imgs;
  pts.push_back(center);
  for (int ring = 1; ring <= 3; ++ring)
    for (int i = 0; i < 16; ++i)
      pts.push_back(center + std::polar(r * ring / 3.0, kTwoPi * (i + 0.31 * ring) / 16.0));
  imgs.reserve(pts.size());
  for (auto& z : pts) imgs.push_back(f(z));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dz = cylinder ? circ_dist(pts[i].real(), pts[j].real()) +
                                       std::fabs(pts[i].imag() - pts[j].imag())
                                 : std::abs(pts[i] - pts[j]);
      const double dw = cylinder ? cyl_dist(imgs[i], imgs[j]) : std::abs(imgs[i] - imgs[j]);
      if (dz > 1e-6 && dw <= 1e-12) throw NotUnivalent("injectivity grid test failed");
    }
}

}  // namespace

KoebeResult koebe_check(std::span<const Element> word, const CirclePoint& center, double r,
                        double r_prime, int n_samples) {
  if (r_prime > r / 2.0 + 1e-15) throw LabError("koebe_check requires r' <= r/2");
  const int k = center.k;
  auto f = [&](Cplx z) { return complex_apply(word, {z, k}).z; };
  injectivity_grid_check(f, Cplx(center.x, 0.0), r, /*cylinder=*/true);

  KoebeResult res;
  res.kappa_measured = distortion(word, Ball{center, r_prime}, n_samples);

  const Cplx fc = f(Cplx(center.x, 0.0));
  const double dlogc =
      complex_log_derivative(word, ComplexPoint{Cplx(center.x, 0.0), k});
  const double rho = r_prime * std::exp(-kKoebeKappa + dlogc);
  double min_bd = 1e300;
  const int m = std::max(64, n_samples);
  for (int i = 0; i < m; ++i) {
    const Cplx z = Cplx(center.x, 0.0) + std::polar(r_prime, kTwoPi * i / m);
    min_bd = std::min(min_bd, cyl_dist(f(z), fc));
  }
  res.image_contains_ball = min_bd >= rho * (1.0 - 1e-9);
  return res;
}

KoebeResult koebe_check_fn(const std::function<Cplx(Cplx)>& f,
                           const std::function<Cplx(Cplx)>& df, Cplx center, double r,
                           double r_prime, int n_samples) {
  if (r_prime > r / 2.0 + 1e-15) throw LabError("koebe_check requires r' <= r/2");
  injectivity_grid_check(f, center, r, /*cylinder=*/false);
  for (int i = 0; i < 32; ++i) {
    const Cplx z = center + std::polar(r * (i % 4 + 1) / 4.0, kTwoPi * i / 32.0);
    if (std::abs(df(z)) <= 0.0) throw NotUnivalent("vanishing derivative in ball");
  }
  KoebeResult res;
  res.kappa_measured = distortion_fn([&](Cplx z) { return std::log(std::abs(df(z))); },
                                     center, r_prime, n_samples);
  const Cplx fc = f(center);
  const double rho = r_prime * std::exp(-kKoebeKappa) * std::abs(df(center));
  double min_bd = 1e300;
  const int m = std::max(64, n_samples);
  for (int i = 0; i < m; ++i)
    min_bd = std::min(min_bd, std::abs(f(center + std::polar(r_prime, kTwoPi * i / m)) - fc));
  res.image_contains_ball = min_bd >= rho * (1.0 - 1e-9);
  return res;
}

double uniform_distortion_radius(std::span<const Element> gens, double c, int y_grid,
                                 int ball_samples) {
  const int k = gens.empty() ? 1 : gens.front().k;
  const double rmax = strip_radius(k);
  auto ok_at = [&](double r) {
    for (const auto& g : gens) {
      for (int i = 0; i < y_grid; ++i) {
        const CirclePoint y{static_cast<double>(i) / y_grid, k};
        try {
          if (distortion(g, Ball{y, r}, ball_samples) > c + 1e-12) return false;
        } catch (const ExtensionLeavesChart&) {
          return false;
        }
      }
    }
    return true;
  };
  if (ok_at(rmax)) return rmax;
  double lo = 0.0, hi = rmax;
  for (int it = 0; it < 40; ++it) {
    const double mid = (lo + hi) / 2.0;
    if (ok_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  if (lo <= rmax * 0x1p-38) throw NoPositiveRadius("no grid radius satisfies the bound");
  return lo;
}

}  // namespace circlelab
