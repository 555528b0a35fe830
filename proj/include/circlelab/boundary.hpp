#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "circlelab/expansion.hpp"

namespace circlelab {

// Finite representative of a boundary direction: the prefix of a greedy
// c-line of expansion based at the identity.
struct BoundaryDirection {
  CirclePoint x;
  double c = 0.0;
  std::vector<Element> prefix;  // E_0 .. E_N
};

// Greedy c-line at x truncated at `depth`; requires depth >= 10.
BoundaryDirection omega(const GeneratorSet& S, const CirclePoint& x, int depth, double c);

// Direction of the translated line at g(x): elements E_m g^{-1}.
BoundaryDirection translate_direction(const BoundaryDirection& d, const Element& g);

// Gromov product (d1[N], d2[N])_e >= threshold at the deepest common depth N
// whose three distances are measurable in the ball; throws OutOfBall when no
// depth is measurable.
bool same_direction(const CayleyBall& ball, const BoundaryDirection& d1,
                    const BoundaryDirection& d2, int threshold);
double direction_gromov_product(const CayleyBall& ball, const BoundaryDirection& d1,
                                const BoundaryDirection& d2, int* depth_used = nullptr);

// D_x(e, g_n) for each prefix element of the ray.
std::vector<double> cocycle_profile(const CirclePoint& x, std::span<const Element> ray);

// Two-segment affine fit of a profile (rise then fall); breakpoint chosen by
// least total squared error.
struct ProfileFit {
  double slope_rise = 0.0;
  double slope_fall = 0.0;
  int breakpoint = 0;
};
ProfileFit fit_two_segments(std::span<const double> profile);

// Per-group direction-identity threshold: half of the Gromov self-product
// reachable at the deepest ball-measurable depth, floored at 2. The paper
// gives "large product" without a scale; this pins one and reports it.
int calibrate_direction_threshold(const GeneratorSet& S, const CayleyBall& ball, double c,
                                  int depth, int probes = 8);

struct FiberEstimate {
  std::vector<std::pair<double, double>> intervals;  // disjoint circle arcs
  int cardinality = 0;
  std::vector<char> hits;  // per grid point
};

std::vector<BoundaryDirection> grid_directions(const GeneratorSet& S, int grid, int depth,
                                               double c, int threads = 1);

// Clusters the grid points whose direction matches `target` into intervals;
// throws InconclusiveClustering when two clusters are separated by fewer
// than 2 grid points.
FiberEstimate cluster_fiber(const CayleyBall& ball,
                            std::span<const BoundaryDirection> grid_dirs,
                            const BoundaryDirection& target, int threshold);

FiberEstimate fiber_cardinality(const GeneratorSet& S, const CayleyBall& ball,
                                const BoundaryDirection& target, int x_grid_size,
                                int threshold, int depth, int threads = 1);

struct DegreeReport {
  int k_estimate = 0;
  bool constant_fibers = false;
  int n_directions = 0;
  int grid = 0;
  int threshold = 0;
  int depth = 0;
  std::map<int, int> histogram;
  std::vector<FiberEstimate> fibers;
};

// Fiber cardinality over sampled directions; k_estimate is the common value
// (the histogram records any Claim-4 violation instead of crashing).
DegreeReport covering_degree(const GeneratorSet& S, const CayleyBall& ball, int n_directions,
                             int x_grid_size, int threshold, double c, int depth,
                             std::uint64_t seed = 0, int threads = 1);

}  // namespace circlelab
