#include "circlelab/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

GeneratorSet symmetric_closure(const std::vector<NamedElement>& raw, int k) {
  GeneratorSet S;
  S.k = k;
  auto push_unique = [&S](const std::string& name, const Element& g) {
    for (const auto& have : S.gens)
      if (elements_close(have.g, g)) return;
    S.gens.push_back({name, g});
  };
  for (const auto& n : raw) {
    if (is_identity(n.g)) continue;
    push_unique(n.name, n.g);
  }
  const std::size_t base_count = S.gens.size();
  for (std::size_t i = 0; i < base_count; ++i) {
    const Element inv = inverse(S.gens[i].g);
    push_unique(S.gens[i].name + "'", inv);
  }
  return S;
}

std::optional<int> CayleyBall::find(const Element& g) const {
  CanonicalKey key = make_key(g);
  CanonicalKey probe = key;
  for (int d0 = -1; d0 <= 1; ++d0)
    for (int d1 = -1; d1 <= 1; ++d1)
      for (int d2 = -1; d2 <= 1; ++d2)
        for (int d3 = -1; d3 <= 1; ++d3) {
          probe.cell = {key.cell[0] + d0, key.cell[1] + d1, key.cell[2] + d2,
                        key.cell[3] + d3};
          auto it = index_.find(probe);
          if (it != index_.end() && elements_close(entries[it->second].g, g)) {
            return it->second;
          }
        }
  return std::nullopt;
}

void CayleyBall::insert(const Element& g, int norm, int pred, int gen) {
  index_.emplace(make_key(g), static_cast<int>(entries.size()));
  entries.push_back({g, norm, pred, gen});
}

std::vector<int> CayleyBall::word_of(int idx) const {
  std::vector<int> w;
  while (idx > 0) {
    w.push_back(entries[idx].gen);
    idx = entries[idx].pred;
  }
  return w;
}

std::string CayleyBall::word_name(int idx) const {
  if (idx == 0) return "e";
  std::string s;
  for (int gi : word_of(idx)) {
    if (!s.empty()) s += ".";
    s += gens.gens[gi].name;
  }
  return s;
}

CayleyBall build_ball(const GeneratorSet& S, int radius, std::size_t cap) {
  if (radius < 0 || S.gens.empty()) throw LabError("build_ball needs radius >= 0, |S| >= 1");
  CayleyBall ball;
  ball.radius = radius;
  ball.gens = S;
  ball.insert(Element::identity(S.k), 0, -1, -1);
  ball.level_end.push_back(1);
  std::size_t lo = 0, hi = 1;
  for (int r = 1; r <= radius; ++r) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t gi = 0; gi < S.gens.size(); ++gi) {
        const Element h = compose(S.gens[gi].g, ball.entries[i].g);
        if (ball.find(h)) continue;
        if (ball.size() >= cap) throw BallTooLarge("ball exceeds configured cap");
        ball.insert(h, r, static_cast<int>(i), static_cast<int>(gi));
      }
    }
    lo = hi;
    hi = ball.size();
    ball.level_end.push_back(hi);
  }
  return ball;
}

int distance(const CayleyBall& ball, const Element& g1, const Element& g2) {
  const Element q = compose(g2, inverse(g1));
  if (auto idx = ball.find(q)) return ball.entries[*idx].norm;
  throw OutOfBall("quotient outside ball");
}

double gromov_product(const CayleyBall& ball, const Element& g, const Element& h1,
                      const Element& h2) {
  const int a = distance(ball, g, h1);
  const int b = distance(ball, g, h2);
  const int c = distance(ball, h1, h2);
  return (a + b - c) / 2.0;
}

std::vector<std::vector<Element>> enumerate_geodesics(const CayleyBall& ball,
                                                      const Element& g1, const Element& g2,
                                                      std::size_t cap) {
  const Element q = compose(g2, inverse(g1));
  const auto qidx = ball.find(q);
  if (!qidx) throw OutOfBall("endpoints too far apart for this ball");
  const int n = ball.entries[*qidx].norm;

  std::vector<std::vector<Element>> out;
  std::vector<Element> path;
  path.push_back(Element::identity(ball.gens.k));

  // DFS over steps that reduce the distance to q by exactly one; any path of
  // length d(e, q) is a geodesic.
  auto rec = [&](auto&& self, const Element& v, int rem) -> void {
    if (out.size() >= cap) return;
    if (rem == 0) {
      std::vector<Element> translated;
      translated.reserve(path.size());
      for (const auto& p : path) translated.push_back(compose(p, g1));
      out.push_back(std::move(translated));
      return;
    }
    for (const auto& s : ball.gens.gens) {
      const Element w = compose(s.g, v);
      const Element rest = compose(q, inverse(w));
      const auto ridx = ball.find(rest);
      if (!ridx || ball.entries[*ridx].norm != rem - 1) continue;
      path.push_back(w);
      self(self, w, rem - 1);
      path.pop_back();
      if (out.size() >= cap) return;
    }
  };
  rec(rec, Element::identity(ball.gens.k), n);
  return out;
}

namespace {

// Sphere BFS around p, reporting the first-hit level for each target set;
// stops once every target is hit or the level cap is reached.
std::vector<int> first_hit_levels(const GeneratorSet& S, const Element& p,
                                  const std::vector<std::vector<CanonicalKey>>& targets,
                                  int level_cap) {
  std::vector<std::unordered_set<CanonicalKey, KeyHash>> tsets(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t)
    tsets[t].insert(targets[t].begin(), targets[t].end());
  std::vector<int> hit(targets.size(), -1);
  auto check = [&](const Element& v, int level) {
    const CanonicalKey key = make_key(v);
    for (std::size_t t = 0; t < tsets.size(); ++t)
      if (hit[t] < 0 && tsets[t].count(key)) hit[t] = level;
  };
  std::unordered_set<CanonicalKey, KeyHash> seen;
  std::vector<Element> frontier{p};
  seen.insert(make_key(p));
  check(p, 0);
  for (int level = 1; level <= level_cap; ++level) {
    if (std::all_of(hit.begin(), hit.end(), [](int h) { return h >= 0; })) break;
    std::vector<Element> next;
    for (const auto& v : frontier)
      for (const auto& s : S.gens) {
        Element w = compose(s.g, v);
        if (!seen.insert(make_key(w)).second) continue;
        check(w, level);
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return hit;
}

// The exact-key membership above can miss a roundoff copy sitting one
// quantization cell away; anchor both sides on ball-canonical entries so the
// keys agree bit-for-bit.
std::vector<CanonicalKey> keys_of(const CayleyBall& ball, const std::vector<Element>& elems) {
  std::vector<CanonicalKey> keys;
  keys.reserve(elems.size());
  for (const auto& e : elems) {
    if (auto idx = ball.find(e))
      keys.push_back(make_key(ball.entries[*idx].g));
    else
      keys.push_back(make_key(e));
  }
  return keys;
}

double delta_for_triple(const CayleyBall& ball, const Element& a, const Element& b,
                        const Element& c, std::size_t geodesic_cap) {
  // Geodesic fans per unordered side {i, j}.
  std::vector<std::vector<Element>> side01 = enumerate_geodesics(ball, a, b, geodesic_cap);
  std::vector<std::vector<Element>> side12 = enumerate_geodesics(ball, b, c, geodesic_cap);
  std::vector<std::vector<Element>> side02 = enumerate_geodesics(ball, a, c, geodesic_cap);
  const std::vector<std::vector<Element>>* sides[3][2] = {
      {&side01, &side12},  // include side02, cover 01 + 12
      {&side01, &side02},  // include side12
      {&side12, &side02},  // include side01
  };
  const std::vector<std::vector<Element>>* included[3] = {&side02, &side12, &side01};

  double delta = 0.0;
  const int level_cap = 2 * ball.radius + 2;
  for (int role = 0; role < 3; ++role) {
    // Collect the fan of the included side.
    std::vector<Element> fan;
    std::unordered_set<CanonicalKey, KeyHash> fan_seen;
    for (const auto& geo : *included[role])
      for (const auto& p : geo)
        if (fan_seen.insert(make_key(p)).second) fan.push_back(p);

    for (const auto& p : fan) {
      double side_worst[2];
      for (int s = 0; s < 2; ++s) {
        const auto& geos = *sides[role][s];
        std::vector<std::vector<CanonicalKey>> targets;
        targets.reserve(geos.size());
        for (const auto& geo : geos) targets.push_back(keys_of(ball, geo));
        const std::vector<int> hits = first_hit_levels(ball.gens, p, targets, level_cap);
        int worst = 0;
        for (int h : hits) worst = std::max(worst, h < 0 ? level_cap + 1 : h);
        side_worst[s] = worst;
      }
      delta = std::max(delta, std::min(side_worst[0], side_worst[1]));
    }
  }
  return delta;
}

}  // namespace

double delta_estimate(const CayleyBall& ball, const DeltaOptions& opts) {
  const std::size_t n = ball.size();
  if (n < 3) return 0.0;
  std::vector<std::array<std::size_t, 3>> triples;
  const double total = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
  if (total <= static_cast<double>(opts.triple_cap)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) triples.push_back({i, j, l});
  } else {
    auto rng = make_rng(opts.seed, 0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (triples.size() < opts.triple_cap) {
      std::size_t i = pick(rng), j = pick(rng), l = pick(rng);
      if (i == j || j == l || i == l) continue;
      triples.push_back({i, j, l});
    }
  }

  std::vector<double> vals(triples.size(), 0.0);
  parallel_for(triples.size(), opts.threads, [&](std::size_t t) {
    const auto& tr = triples[t];
    const Element& a = ball.entries[tr[0]].g;
    const Element& b = ball.entries[tr[1]].g;
    const Element& c = ball.entries[tr[2]].g;
    try {
      vals[t] = delta_for_triple(ball, a, b, c, opts.geodesic_cap);
    } catch (const OutOfBall&) {
      vals[t] = 0.0;  // pairwise quotient not measurable at this radius
    }
  });
  double delta = 0.0;
  for (double v : vals) delta = std::max(delta, v);
  return delta;
}

bool quasi_geodesic_check(const CayleyBall& ball, std::span<const Element> seq, double alpha,
                          double beta) {
  const std::size_t n = seq.size();
  if (n < 2) return true;
  // Cumulative step lengths give a certified upper bound on d.
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    cum[i + 1] = cum[i] + distance(ball, seq[i], seq[i + 1]);

  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = m + 1; l < n; ++l) {
      const double gap = static_cast<double>(l - m);
      const double lower = gap / alpha - beta;
      const double upper = alpha * gap + beta;
      const Element q = compose(seq[l], inverse(seq[m]));
      if (auto idx = ball.find(q)) {
        const int d = ball.entries[*idx].norm;
        if (d + 1e-9 < lower || d > upper + 1e-9) return false;
      } else {
        // d >= radius + 1, d <= cum path length.
        if (lower > ball.radius + 1 + 1e-9)
          throw OutOfBall("quasi-geodesic lower bound not certifiable at this radius");
        if (cum[l] - cum[m] > upper + 1e-9)
          throw OutOfBall("quasi-geodesic upper bound not certifiable at this radius");
      }
    }
  return true;
}

double nearest_distinct_pair(const CayleyBall& ball, std::size_t pair_cap,
                             std::uint64_t seed) {
  const std::size_t n = ball.size();
  if (n < 2) return 0.0;
  auto dist = [&](std::size_t i, std::size_t j) {
    const auto& a = ball.entries[i].g;
    const auto& b = ball.entries[j].g;
    if (a.branch != b.branch) return 1e300;
    double m = 0.0;
    for (int t = 0; t < 4; ++t) m = std::max(m, std::fabs(a.base.m[t] - b.base.m[t]));
    return m;
  };
  double best = 1e300;
  const double total = static_cast<double>(n) * (n - 1) / 2.0;
  if (total <= static_cast<double>(pair_cap)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, dist(i, j));
  } else {
    auto rng = make_rng(seed, 0xd157);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t it = 0; it < pair_cap; ++it) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i != j) best = std::min(best, dist(i, j));
    }
  }
  return best;
}

}  // namespace circlelab
