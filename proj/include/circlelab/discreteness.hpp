#pragma once

#include <string>
#include <vector>

#include "circlelab/cayley.hpp"

namespace circlelab {

struct ProximityRecord {
  int radius = 0;
  int best_index = -1;  // ball entry index
  std::string best_word;
  double c0_distance = 0.0;
  double interval_lo = 0.0, interval_hi = 1.0;
};

// Scans all nontrivial ball elements whose log derivative stays inside
// [band_lo, band_hi] on the interval and returns the one minimizing the sup
// chart distance to the identity. Throws EmptyCandidateSet.
ProximityRecord near_identity_search(const CayleyBall& ball, double interval_lo,
                                     double interval_hi, double band_lo, double band_hi,
                                     int samples = 256, int threads = 1);

struct DiscretenessProfile {
  std::vector<ProximityRecord> records;
  std::string verdict;  // "locally discrete (empirical)" | "non locally discrete (empirical)" | "inconclusive"
  // Calibration recorded with every report: the nominal factor-4 decay rule
  // is applied with the 10% chart-distortion slack, i.e. trigger ratio 0.275;
  // the plateau floor is 1e-6.
  double decay_ratio_trigger = 0.275;
  double plateau_floor = 1e-6;
};

DiscretenessProfile discreteness_profile(const GeneratorSet& S, const std::vector<int>& radii,
                                         double interval_lo, double interval_hi,
                                         double band_lo, double band_hi, int samples = 256,
                                         int threads = 1,
                                         std::size_t ball_cap = kDefaultBallCap);

struct RenormalizationDemo {
  std::vector<std::pair<int, double>> distances;  // (n, c0 distance of f^-n g f^n)
  double fitted_ratio = 0.0;                      // geometric mean of late-step ratios
};

// Conjugation collapse near a hyperbolic fixed point. Requires f to have an
// attracting real fixed point and g to fix the same point within 1e-8.
RenormalizationDemo renormalization_demo(const Element& f, const Element& g, int n_max,
                                         double interval_lo, double interval_hi,
                                         int samples = 256);

}  // namespace circlelab
