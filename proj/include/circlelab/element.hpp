#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "circlelab/projective.hpp"

namespace circlelab {

// Point of the k-fold cyclic cover of RP^1 (k = 1 is the base chart). The
// covering map is x -> k x mod 1; charts are never mixed in one computation.
struct CirclePoint {
  double x = 0.0;
  int k = 1;
};

// Group element: a projective map together with cover data. For k > 1 the
// element is the lift of `base` selected by `branch` in [0, k): if g~ is the
// pinned lift of the base chart action to R, the element acts by
// x -> (g~(k x) + branch) / k mod 1, which commutes with rotation by 1/k.
struct Element {
  ProjectiveMap base;
  int k = 1;
  int branch = 0;

  static Element identity(int k = 1) { return {ProjectiveMap::identity(), k, 0}; }
  static Element deck(int k, int j) { return {ProjectiveMap::identity(), k, j}; }
};

// Pinned lift of the base chart action, evaluated at any real t. The pin
// fixes g~(x0) to the representative of g(x0) nearest x0's window for a fixed
// generic x0; this keeps branch labels stable under roundoff for elements
// that move the chart seam (the value-at-0 pin is unstable exactly there).
double lift_value(const ProjectiveMap& base, double t);

CirclePoint apply(const Element& g, const CirclePoint& p);
double derivative(const Element& g, const CirclePoint& p);
double log_derivative(const Element& g, const CirclePoint& p);

// Matrix product with canonical base; the composite branch is recovered by
// winding count at a test point. Requires equal k.
Element compose(const Element& g, const Element& h);
Element inverse(const Element& g);

bool is_identity(const Element& g, double tol = 1e-8);
bool elements_close(const Element& a, const Element& b, double tol = 1e-8);

// Quantized fingerprint for deduplication (grid 1e-9 per entry + deck index);
// lookups probe the 3^4 neighbor cells, and hits are confirmed entrywise at
// 1e-8. Distinct ball elements in the zoo sit far above both scales.
struct CanonicalKey {
  std::array<std::int64_t, 4> cell;
  int deck;

  bool operator==(const CanonicalKey&) const = default;
};

CanonicalKey make_key(const Element& g);

struct KeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    for (auto c : k.cell) mix(static_cast<std::uint64_t>(c));
    mix(static_cast<std::uint64_t>(k.deck));
    return static_cast<std::size_t>(h);
  }
};

std::string to_string(const Element& g);

}  // namespace circlelab
