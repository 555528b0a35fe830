#include "circlelab/element.hpp"

#include <cmath>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

namespace {

// Generic pin and test points; algebraic zoo elements never land on the
// resulting branch-window seams.
constexpr double kPinPoint = 0.21375647291;
constexpr double kTestPoint = 0.41377234519;

void require_chart(const Element& g, int k) {
  if (g.k != k) throw ChartMismatch("cover degree mismatch");
}

}  // namespace

double lift_value(const ProjectiveMap& base, double t) {
  const int deg = base.orientation();
  // Pin: g~(x0) is the representative of g(x0) within 1/2 of x0 shifted by
  // the element's displacement window.
  const double v0 = chart_apply(base, kPinPoint);
  const double pin = kPinPoint + circ_diff(kPinPoint, v0);
  // Reduce t into [x0, x0 + 1); g~(t + n) = g~(t) + n * deg.
  const double shift = std::floor(t - kPinPoint);
  const double tr = t - shift;
  const double v = chart_apply(base, wrap01(tr));
  double val;
  if (deg > 0) {
    val = pin + wrap01(v - pin);
  } else {
    val = pin - wrap01(pin - v);
  }
  return val + shift * deg;
}

CirclePoint apply(const Element& g, const CirclePoint& p) {
  require_chart(g, p.k);
  if (g.k == 1) return {chart_apply(g.base, p.x), 1};
  const double lifted = lift_value(g.base, g.k * p.x);
  return {wrap01((lifted + g.branch) / g.k), g.k};
}

double derivative(const Element& g, const CirclePoint& p) {
  require_chart(g, p.k);
  // d/dx (g~(k x) + j)/k = g~'(k x): the cover derivative equals the base
  // derivative at the projected point.
  if (g.k == 1) return chart_derivative(g.base, p.x);
  return chart_derivative(g.base, wrap01(g.k * p.x));
}

double log_derivative(const Element& g, const CirclePoint& p) {
  return std::log(derivative(g, p));
}

namespace {

int nearest_branch(const ProjectiveMap& base, int k, double image_at_test, double test) {
  // image = (lift_value(k*test) + j)/k mod 1 for exactly one j in [0, k).
  const double base_part = lift_value(base, k * test) / k;
  double best = 1e9;
  int best_j = 0;
  for (int j = 0; j < k; ++j) {
    const double d = circ_dist(wrap01(base_part + static_cast<double>(j) / k), image_at_test);
    if (d < best) {
      best = d;
      best_j = j;
    }
  }
  if (best > 1e-6) throw CheckFailed("branch recovery drifted off the deck grid");
  (void)test;
  return best_j;
}

}  // namespace

Element compose(const Element& g, const Element& h) {
  if (g.k != h.k) throw ChartMismatch("cover degree mismatch in compose");
  Element out{mul(g.base, h.base), g.k, 0};
  if (g.k == 1) return out;
  const CirclePoint t{kTestPoint / g.k, g.k};
  const double image = apply(g, apply(h, t)).x;
  out.branch = nearest_branch(out.base, g.k, image, t.x);
  return out;
}

Element inverse(const Element& g) {
  Element out{inverse(g.base), g.k, 0};
  if (g.k == 1) return out;
  const CirclePoint t{kTestPoint / g.k, g.k};
  const double y = apply(g, t).x;
  // The inverse lift is the lift of base^{-1} sending g(t) back to t.
  double best = 1e9;
  int best_j = 0;
  for (int j = 0; j < g.k; ++j) {
    Element cand{out.base, g.k, j};
    const double d = circ_dist(apply(cand, {y, g.k}).x, t.x);
    if (d < best) {
      best = d;
      best_j = j;
    }
  }
  if (best > 1e-6) throw CheckFailed("inverse branch recovery failed");
  out.branch = best_j;
  return out;
}

bool elements_close(const Element& a, const Element& b, double tol) {
  if (a.k != b.k || a.branch != b.branch) return false;
  for (int i = 0; i < 4; ++i)
    if (std::fabs(a.base.m[i] - b.base.m[i]) > tol) return false;
  return true;
}

bool is_identity(const Element& g, double tol) {
  return g.branch == 0 && is_scalar(g.base, tol) && std::fabs(g.base.m[0] - 1.0) <= tol;
}

CanonicalKey make_key(const Element& g) {
  constexpr double q = 1e-9;
  CanonicalKey k;
  for (int i = 0; i < 4; ++i) k.cell[i] = llround(g.base.m[i] / q);
  k.deck = g.branch;
  return k;
}

std::string to_string(const Element& g) {
  std::string s = "[" + fmt_g(g.base.m[0]) + "," + fmt_g(g.base.m[1]) + ";" +
                  fmt_g(g.base.m[2]) + "," + fmt_g(g.base.m[3]) + "]";
  if (g.k > 1) s += "@k" + std::to_string(g.k) + "b" + std::to_string(g.branch);
  return s;
}

}  // namespace circlelab
