#include "circlelab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

ExpansionConstants uniform_constants(const GeneratorSet& S, int grid_size, int threads) {
  if (grid_size < 64) throw LabError("uniform_constants needs grid_size >= 64");
  const int n = grid_size;
  const double h = 1.0 / n;
  const std::size_t gcount = S.gens.size();
  std::vector<double> vals(static_cast<std::size_t>(n) * gcount);
  parallel_for(n, threads, [&](std::size_t i) {
    const CirclePoint x{static_cast<double>(i) / n, S.k};
    for (std::size_t g = 0; g < gcount; ++g)
      vals[i * gcount + g] = log_derivative(S.gens[g].g, x);
  });

  ExpansionConstants out;
  out.grid_size = n;
  out.witness.assign(n, 0);
  double min_max = 1e300, max_all = -1e300;
  for (int i = 0; i < n; ++i) {
    double best = -1e300;
    int besti = 0;
    for (std::size_t g = 0; g < gcount; ++g) {
      const double v = vals[i * gcount + g];
      if (v > best) {
        best = v;
        besti = static_cast<int>(g);
      }
      max_all = std::max(max_all, v);
    }
    out.witness[i] = besti;
    min_max = std::min(min_max, best);
  }
  double slope = 0.0;
  for (int i = 0; i < n; ++i)
    for (std::size_t g = 0; g < gcount; ++g) {
      const double d = std::fabs(vals[((i + 1) % n) * gcount + g] - vals[i * gcount + g]) / h;
      slope = std::max(slope, d);
    }
  out.margin = slope * h;  // 2 * L_sampled * (h/2)
  out.c_lower = min_max - out.margin;
  out.c_upper = max_all + out.margin;
  out.expanding = out.c_lower > 0.0;
  return out;
}

double derivative_cocycle(const CirclePoint& x, const Element& g1, const Element& g2) {
  return log_derivative(g2, x) - log_derivative(g1, x);
}

double equivariance_residual(const CirclePoint& x, const Element& g, const Element& g1,
                             const Element& g2) {
  const Element ginv = inverse(g);
  const CirclePoint gx = apply(g, x);
  const double lhs = derivative_cocycle(gx, compose(g1, ginv), compose(g2, ginv));
  return std::fabs(lhs - derivative_cocycle(x, g1, g2));
}

ExpansionLine build_expansion_line(const GeneratorSet& S, const CirclePoint& x, double c,
                                   int length, const Element& start) {
  if (x.k != S.k) throw ChartMismatch("base point chart mismatch");
  ExpansionLine line;
  line.x = x;
  line.c = c;
  line.elements.push_back(start);
  line.points.push_back(apply(start, x));
  line.cocycle.push_back(log_derivative(start, x));
  for (int step = 1; step <= length; ++step) {
    const CirclePoint& xm = line.points.back();
    double best = -1e300;
    int besti = -1;
    for (std::size_t g = 0; g < S.gens.size(); ++g) {
      const double v = log_derivative(S.gens[g].g, xm);
      if (v > best) {
        best = v;
        besti = static_cast<int>(g);
      }
    }
    if (best < c) throw NoExpandingGenerator(step, xm.x);
    const Element& s = S.gens[besti].g;
    line.steps.push_back(besti);
    line.elements.push_back(compose(s, line.elements.back()));
    line.points.push_back(apply(s, xm));
    line.cocycle.push_back(line.cocycle.back() + best);
  }
  return line;
}

bool verify_line(const ExpansionLine& line, double c, double tol) {
  const std::size_t n = line.cocycle.size();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = m + 1; l < n; ++l)
      if (line.cocycle[l] - line.cocycle[m] < c * static_cast<double>(l - m) - tol)
        return false;
  return true;
}

LineAudit line_quasi_geodesic_audit(const CayleyBall& ball, const ExpansionLine& line,
                                    double c, double c_upper) {
  LineAudit audit;
  audit.alpha_used = c_upper / c;
  if (!verify_line(line, c)) return audit;
  audit.passes = quasi_geodesic_check(ball, line.elements, audit.alpha_used, 0.0);
  double tight = 1.0;
  for (std::size_t m = 0; m < line.elements.size(); ++m)
    for (std::size_t l = m + 1; l < line.elements.size(); ++l) {
      const Element q = compose(line.elements[l], inverse(line.elements[m]));
      if (auto idx = ball.find(q)) {
        const double d = ball.entries[*idx].norm;
        const double gap = static_cast<double>(l - m);
        if (d > 0) tight = std::max({tight, d / gap, gap / d});
      }
    }
  audit.alpha_tight = tight;
  return audit;
}

ConvergenceResult convergence_experiment(const GeneratorSet& S, const CirclePoint& x, double c,
                                         const Element& e_start, const Element& f_start,
                                         int max_depth, const CayleyBall& ball,
                                         double c_upper) {
  const int d0 = distance(ball, e_start, f_start);
  const double gamma1 = c_upper / c;
  const double gamma2 = std::max(0.0, (kKoebeKappa - c_upper) / c);
  const double threshold = gamma1 * d0 + gamma2;
  const int start = static_cast<int>(std::ceil(threshold - 1e-12));
  if (max_depth < start)
    throw LabError("max_depth below the gamma threshold " + fmt_g(threshold));

  const ExpansionLine lineE = build_expansion_line(S, x, c, max_depth, e_start);
  const ExpansionLine lineF = build_expansion_line(S, x, c, max_depth, f_start);

  for (int sum = 2 * start; sum <= 2 * max_depth; ++sum) {
    for (int m = std::max(start, sum - max_depth); m <= std::min(max_depth, sum - start);
         ++m) {
      const int n = sum - m;
      const double gap = lineF.cocycle[n] - lineE.cocycle[m];
      // Strict sub-c gap; the two-sided bound keeps Lemma-6.2-style derivative
      // control on both sides.
      if (std::fabs(gap) < c - 1e-9) {
        ConvergenceResult res;
        res.m = m;
        res.n = n;
        res.cocycle_gap = gap;
        res.threshold = threshold;
        const Element q = compose(lineF.elements[n], inverse(lineE.elements[m]));
        if (auto idx = ball.find(q)) res.distance = ball.entries[*idx].norm;
        return res;
      }
    }
  }
  throw NoMatchingDepths("no sub-c cocycle gap up to depth " + std::to_string(max_depth));
}

ExpansionGraph build_expansion_graph(const CayleyBall& ball, const CirclePoint& x,
                                     double c_lower) {
  ExpansionGraph graph;
  graph.x = x;
  graph.c_lower = c_lower;
  const std::size_t n = ball.size();
  graph.out.assign(n, {});
  graph.undirected.assign(n, {});

  std::vector<double> logd(n);
  for (std::size_t i = 0; i < n; ++i) logd[i] = log_derivative(ball.entries[i].g, x);

  // Candidate steps w with |w| <= 2 (so that d(g0, w g0) <= 2).
  const std::size_t near_end =
      ball.level_end[std::min<std::size_t>(2, ball.level_end.size() - 1)];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 1; w < near_end; ++w) {
      const Element g1 = compose(ball.entries[w].g, ball.entries[i].g);
      const auto j = ball.find(g1);
      if (!j) continue;
      if (logd[*j] - logd[i] >= c_lower / 2.0) {
        graph.out[i].push_back(*j);
        ++graph.edge_count;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int j : graph.out[i]) {
      graph.undirected[i].push_back(j);
      graph.undirected[j].push_back(static_cast<int>(i));
    }
  for (auto& adj : graph.undirected) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return graph;
}

int min_interior_out_degree(const ExpansionGraph& graph, const CayleyBall& ball) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (ball.entries[i].norm < ball.radius - 1)
      best = std::min(best, static_cast<int>(graph.out[i].size()));
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

QuasiIsometryAudit quasi_isometry_audit(const ExpansionGraph& graph, const CayleyBall& ball,
                                        int threads) {
  QuasiIsometryAudit audit;
  const std::size_t n = ball.size();
  std::vector<int> interior;
  for (std::size_t i = 0; i < n; ++i)
    if (ball.entries[i].norm <= ball.radius - 2) interior.push_back(static_cast<int>(i));
  for (int i : interior)
    if (graph.undirected[i].empty()) audit.disconnected_interior = true;

  struct Worst {
    double r1 = 0.0, r2 = 0.0;
    bool fail = false;
    std::size_t pairs = 0;
  };
  std::vector<Worst> per_src(interior.size());

  parallel_for(interior.size(), threads, [&](std::size_t idx) {
    const int src = interior[idx];
    // BFS in the undirected graph over the whole ball vertex set.
    std::vector<int> dg(n, -1);
    std::queue<int> q;
    dg[src] = 0;
    q.push(src);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : graph.undirected[v])
        if (dg[w] < 0) {
          dg[w] = dg[v] + 1;
          q.push(w);
        }
    }
    Worst& worst = per_src[idx];
    const Element inv_src = inverse(ball.entries[src].g);
    for (int dst : interior) {
      if (dst == src) continue;
      const Element quot = compose(ball.entries[dst].g, inv_src);
      const auto qi = ball.find(quot);
      if (!qi) continue;
      const int d = ball.entries[*qi].norm;
      ++worst.pairs;
      if (dg[dst] < 0) {
        worst.fail = true;
        continue;
      }
      const int dgam = dg[dst];
      if (d > 0 && dgam > 0) {
        worst.r1 = std::max(worst.r1, static_cast<double>(d) / dgam);
        worst.r2 = std::max(worst.r2, static_cast<double>(dgam) / d);
      }
      if (d > 2 * dgam || dgam > 2 * d) worst.fail = true;
    }
  });

  bool fail = false;
  for (const auto& w : per_src) {
    fail = fail || w.fail;
    audit.max_ratio_d_over_dgamma = std::max(audit.max_ratio_d_over_dgamma, w.r1);
    audit.max_ratio_dgamma_over_d = std::max(audit.max_ratio_dgamma_over_d, w.r2);
    audit.pairs_checked += w.pairs;
  }
  audit.passes = !fail && !audit.disconnected_interior;
  return audit;
}

double univalent_radius_along_line(const ExpansionLine& line, const GeneratorSet& S,
                                   double c) {
  const auto gens = S.elements();
  const double r = uniform_distortion_radius(gens, c);

  // Proof assertion: (E_n)^{-1} = s_1^{-1} ... s_n^{-1} maps B(x_n, r) into
  // B(x_0, r).
  std::vector<Element> inv_word;
  for (std::size_t n = 1; n < line.elements.size(); ++n) {
    inv_word.insert(inv_word.begin(), inverse(S.gens[line.steps[n - 1]].g));
    const CirclePoint& xn = line.points[n];
    const Cplx x0(line.points[0].x, 0.0);
    for (int i = 0; i < 48; ++i) {
      const double phi = 2.0 * M_PI * i / 48;
      const ComplexPoint z{Cplx(xn.x + r * std::cos(phi), r * std::sin(phi)), S.k};
      ComplexPoint img;
      try {
        img = complex_apply(std::span<const Element>(inv_word), z);
      } catch (const ExtensionLeavesChart&) {
        throw CheckFailed("line inverse extension left the chart at depth " +
                          std::to_string(n));
      }
      if (cyl_dist(img.z, x0) > r * (1.0 + 1e-6) + 1e-9)
        throw CheckFailed("line inverse ball containment failed at depth " +
                          std::to_string(n));
    }
  }
  return r;
}

}  // namespace circlelab
