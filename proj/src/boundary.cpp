#include "circlelab/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

BoundaryDirection omega(const GeneratorSet& S, const CirclePoint& x, int depth, double c) {
  if (depth < 10) throw InvalidDepth("omega needs depth >= 10");
  const ExpansionLine line =
      build_expansion_line(S, x, c, depth, Element::identity(S.k));
  return {x, c, line.elements};
}

BoundaryDirection translate_direction(const BoundaryDirection& d, const Element& g) {
  BoundaryDirection out;
  out.x = apply(g, d.x);
  out.c = d.c;
  const Element ginv = inverse(g);
  out.prefix.reserve(d.prefix.size());
  for (const auto& e : d.prefix) out.prefix.push_back(compose(e, ginv));
  return out;
}

double direction_gromov_product(const CayleyBall& ball, const BoundaryDirection& d1,
                                const BoundaryDirection& d2, int* depth_used) {
  const std::size_t len = std::min(d1.prefix.size(), d2.prefix.size());
  if (len == 0) throw OutOfBall("empty direction prefix");
  const Element e = Element::identity(ball.gens.k);
  for (std::size_t n = len; n-- > 1;) {
    try {
      const double p = gromov_product(ball, e, d1.prefix[n], d2.prefix[n]);
      if (depth_used) *depth_used = static_cast<int>(n);
      return p;
    } catch (const OutOfBall&) {
      continue;
    }
  }
  throw OutOfBall("no comparable prefix depth inside ball");
}

bool same_direction(const CayleyBall& ball, const BoundaryDirection& d1,
                    const BoundaryDirection& d2, int threshold) {
  return direction_gromov_product(ball, d1, d2) >= static_cast<double>(threshold);
}

std::vector<double> cocycle_profile(const CirclePoint& x, std::span<const Element> ray) {
  std::vector<double> out;
  out.reserve(ray.size());
  for (const auto& g : ray) out.push_back(log_derivative(g, x));
  return out;
}

ProfileFit fit_two_segments(std::span<const double> profile) {
  const int n = static_cast<int>(profile.size());
  ProfileFit fit;
  if (n < 4) return fit;
  auto ls_slope = [&](int lo, int hi, double* err) {
    // least squares y = a + b t over t in [lo, hi]
    const int m = hi - lo + 1;
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (int t = lo; t <= hi; ++t) {
      st += t;
      sy += profile[t];
      stt += static_cast<double>(t) * t;
      sty += t * profile[t];
    }
    const double denom = m * stt - st * st;
    const double b = denom == 0 ? 0.0 : (m * sty - st * sy) / denom;
    const double a = (sy - b * st) / m;
    double e = 0;
    for (int t = lo; t <= hi; ++t) {
      const double r = profile[t] - (a + b * t);
      e += r * r;
    }
    *err = e;
    return b;
  };
  double best_err = 1e300;
  for (int b = 1; b < n - 2; ++b) {
    double e1, e2;
    const double s1 = ls_slope(0, b, &e1);
    const double s2 = ls_slope(b, n - 1, &e2);
    if (e1 + e2 < best_err) {
      best_err = e1 + e2;
      fit.slope_rise = s1;
      fit.slope_fall = s2;
      fit.breakpoint = b;
    }
  }
  return fit;
}

int calibrate_direction_threshold(const GeneratorSet& S, const CayleyBall& ball, double c,
                                  int depth, int probes) {
  // Self-product of a direction at depth N equals the prefix norm; take half
  // of the deepest-measurable norm, medianized over probe points.
  std::vector<int> norms;
  for (int i = 0; i < probes; ++i) {
    const CirclePoint x{(i + 0.5) / probes, S.k};
    BoundaryDirection d;
    try {
      d = omega(S, x, depth, c);
    } catch (const NoExpandingGenerator&) {
      continue;
    }
    for (std::size_t n = d.prefix.size(); n-- > 1;) {
      if (auto idx = ball.find(d.prefix[n])) {
        norms.push_back(ball.entries[*idx].norm);
        break;
      }
    }
  }
  if (norms.empty()) throw OutOfBall("direction threshold calibration found no prefix");
  std::sort(norms.begin(), norms.end());
  const int median = norms[norms.size() / 2];
  return std::max(2, median / 2);
}

std::vector<BoundaryDirection> grid_directions(const GeneratorSet& S, int grid, int depth,
                                               double c, int threads) {
  std::vector<BoundaryDirection> dirs(grid);
  parallel_for(grid, threads, [&](std::size_t i) {
    dirs[i] = omega(S, {static_cast<double>(i) / grid, S.k}, depth, c);
  });
  return dirs;
}

FiberEstimate cluster_fiber(const CayleyBall& ball,
                            std::span<const BoundaryDirection> grid_dirs,
                            const BoundaryDirection& target, int threshold) {
  const int n = static_cast<int>(grid_dirs.size());
  FiberEstimate est;
  est.hits.assign(n, 0);
  for (int i = 0; i < n; ++i)
    est.hits[i] = same_direction(ball, grid_dirs[i], target, threshold) ? 1 : 0;

  const int total_hits = static_cast<int>(std::count(est.hits.begin(), est.hits.end(), 1));
  if (total_hits == 0) {
    est.cardinality = 0;
    return est;
  }
  if (total_hits == n) {
    est.cardinality = 1;
    est.intervals.push_back({0.0, 1.0});
    return est;
  }
  // Circular runs of hits; gaps shorter than 2 grid points are inconclusive.
  int start = 0;
  while (est.hits[start]) ++start;  // start on a miss
  int i = start;
  std::vector<std::pair<int, int>> runs;
  int gap = 0;
  int run_begin = -1;
  for (int cnt = 0; cnt < n; ++cnt) {
    i = (start + cnt) % n;
    if (est.hits[i]) {
      if (run_begin < 0) {
        if (!runs.empty() && gap < 2)
          throw InconclusiveClustering("clusters separated by fewer than 2 grid points");
        run_begin = i;
      }
    } else {
      if (run_begin >= 0) {
        runs.push_back({run_begin, (i - 1 + n) % n});
        run_begin = -1;
        gap = 0;
      }
      ++gap;
    }
  }
  if (run_begin >= 0) runs.push_back({run_begin, i});
  est.cardinality = static_cast<int>(runs.size());
  for (auto [b, e] : runs)
    est.intervals.push_back({static_cast<double>(b) / n, static_cast<double>(e) / n});
  return est;
}

FiberEstimate fiber_cardinality(const GeneratorSet& S, const CayleyBall& ball,
                                const BoundaryDirection& target, int x_grid_size,
                                int threshold, int depth, int threads) {
  if (x_grid_size < 256) throw LabError("fiber_cardinality needs grid >= 256");
  const auto dirs = grid_directions(S, x_grid_size, depth, target.c, threads);
  return cluster_fiber(ball, dirs, target, threshold);
}

DegreeReport covering_degree(const GeneratorSet& S, const CayleyBall& ball, int n_directions,
                             int x_grid_size, int threshold, double c, int depth,
                             std::uint64_t seed, int threads) {
  if (n_directions <= 0) throw InvalidSampleCount("covering_degree needs n_directions > 0");
  DegreeReport rep;
  rep.n_directions = n_directions;
  rep.grid = x_grid_size;
  rep.threshold = threshold;
  rep.depth = depth;

  const auto dirs = grid_directions(S, x_grid_size, depth, c, threads);
  auto rng = make_rng(seed, 0xd17);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  for (int j = 0; j < n_directions; ++j) {
    const double x = wrap01((j + jitter(rng)) / n_directions);
    const BoundaryDirection target = omega(S, {x, S.k}, depth, c);
    rep.fibers.push_back(cluster_fiber(ball, dirs, target, threshold));
    rep.histogram[rep.fibers.back().cardinality]++;
  }
  rep.constant_fibers = rep.histogram.size() == 1;
  // Mode of the histogram as the degree estimate.
  int best_count = -1;
  for (const auto& [card, count] : rep.histogram)
    if (count > best_count) {
      best_count = count;
      rep.k_estimate = card;
    }
  return rep;
}

}  // namespace circlelab
