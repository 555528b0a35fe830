#include "circlelab/discreteness.hpp"

#include <algorithm>
#include <cmath>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

namespace {

struct ScanResult {
  double c0 = 1e300;
  int index = -1;
};

// Sup distance to the identity over the interval; early exit once the sup
// exceeds the current best.
double c0_distance(const Element& g, double lo, double hi, int samples, double cutoff) {
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    const CirclePoint p{wrap01(x), g.k};
    sup = std::max(sup, circ_dist(apply(g, p).x, p.x));
    if (sup > cutoff) return sup;
  }
  return sup;
}

bool in_band(const Element& g, double lo, double hi, double band_lo, double band_hi,
             int samples) {
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    const double v = log_derivative(g, {wrap01(x), g.k});
    if (v < band_lo || v > band_hi) return false;
  }
  return true;
}

ScanResult scan_prefix(const CayleyBall& ball, std::size_t end, double lo, double hi,
                       double band_lo, double band_hi, int samples, int threads) {
  std::vector<ScanResult> per(ball.size());
  parallel_for(end, threads, [&](std::size_t i) {
    if (i == 0) return;  // identity
    const Element& g = ball.entries[i].g;
    if (!in_band(g, lo, hi, band_lo, band_hi, samples)) return;
    per[i] = {c0_distance(g, lo, hi, samples, 1e300), static_cast<int>(i)};
  });
  ScanResult best;
  for (std::size_t i = 1; i < end; ++i)
    if (per[i].index >= 0 && per[i].c0 < best.c0) best = per[i];
  return best;
}

}  // namespace

ProximityRecord near_identity_search(const CayleyBall& ball, double interval_lo,
                                     double interval_hi, double band_lo, double band_hi,
                                     int samples, int threads) {
  if (!(band_lo < 0.0 && 0.0 < band_hi))
    throw LabError("derivative band must contain 0");
  samples = std::max(samples, 200);
  const ScanResult best = scan_prefix(ball, ball.size(), interval_lo, interval_hi, band_lo,
                                      band_hi, samples, threads);
  if (best.index < 0) throw EmptyCandidateSet("no nontrivial element in derivative band");
  ProximityRecord rec;
  rec.radius = ball.radius;
  rec.best_index = best.index;
  rec.best_word = ball.word_name(best.index);
  rec.c0_distance = best.c0;
  rec.interval_lo = interval_lo;
  rec.interval_hi = interval_hi;
  return rec;
}

DiscretenessProfile discreteness_profile(const GeneratorSet& S, const std::vector<int>& radii,
                                         double interval_lo, double interval_hi,
                                         double band_lo, double band_hi, int samples,
                                         int threads, std::size_t ball_cap) {
  if (radii.empty()) throw LabError("discreteness_profile needs radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw LabError("radii must increase");
  samples = std::max(samples, 200);

  const CayleyBall ball = build_ball(S, radii.back(), ball_cap);
  DiscretenessProfile prof;
  for (int r : radii) {
    const std::size_t end = ball.level_end[r];
    const ScanResult best =
        scan_prefix(ball, end, interval_lo, interval_hi, band_lo, band_hi, samples, threads);
    ProximityRecord rec;
    rec.radius = r;
    rec.interval_lo = interval_lo;
    rec.interval_hi = interval_hi;
    if (best.index >= 0) {
      rec.best_index = best.index;
      rec.best_word = ball.word_name(best.index);
      rec.c0_distance = best.c0;
    } else {
      rec.c0_distance = std::numeric_limits<double>::infinity();
    }
    prof.records.push_back(rec);
  }

  // Verdict: plateau above the floor across the last two radii, or trigger
  // decay across two consecutive radius steps.
  const auto& rs = prof.records;
  prof.verdict = "inconclusive";
  if (rs.size() >= 2) {
    const double last = rs[rs.size() - 1].c0_distance;
    const double prev = rs[rs.size() - 2].c0_distance;
    if (std::isfinite(last) && last >= prof.plateau_floor && last >= prev * (1.0 - 1e-6))
      prof.verdict = "locally discrete (empirical)";
    int decays_in_row = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const double ratio = rs[i].c0_distance / rs[i - 1].c0_distance;
      if (std::isfinite(ratio) && ratio <= prof.decay_ratio_trigger)
        ++decays_in_row;
      else
        decays_in_row = 0;
      if (decays_in_row >= 2) {
        prof.verdict = "non locally discrete (empirical)";
        break;
      }
    }
  }
  return prof;
}

RenormalizationDemo renormalization_demo(const Element& f, const Element& g, int n_max,
                                         double interval_lo, double interval_hi,
                                         int samples) {
  const auto fixed = chart_fixed_points(f.base);
  if (!fixed || f.k != 1)
    throw NoCommonFixedPoint("f must be a base-chart map with real fixed points");
  const double att = fixed->first;
  if (chart_derivative(f.base, att) >= 1.0)
    throw NoCommonFixedPoint("f has no attracting real fixed point");
  const CirclePoint p{att, 1};
  if (circ_dist(apply(g, p).x, p.x) > 1e-8)
    throw NoCommonFixedPoint("g does not fix the attracting point of f");

  RenormalizationDemo demo;
  const Element finv = inverse(f);
  Element h = g;
  std::vector<double> ratios;
  double prev = -1.0;
  for (int n = 0; n <= n_max; ++n) {
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = interval_lo + (interval_hi - interval_lo) * i / (samples - 1);
      const CirclePoint q{wrap01(x), 1};
      sup = std::max(sup, circ_dist(apply(h, q).x, q.x));
    }
    demo.distances.push_back({n, sup});
    if (n > 0 && prev > 1e-12 && sup > 1e-14) ratios.push_back(sup / prev);
    prev = sup;
    h = compose(finv, compose(h, f));
  }
  if (!ratios.empty()) {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = ratios.size() / 2; i < ratios.size(); ++i) {
      acc += std::log(ratios[i]);
      ++used;
    }
    demo.fitted_ratio = std::exp(acc / used);
  }
  return demo;
}

}  // namespace circlelab
