#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "circlelab/element.hpp"

namespace circlelab {

struct NamedElement {
  std::string name;
  Element g;
};

// Finite symmetric generating set; construction closes under inverses and
// deduplicates canonical elements.
struct GeneratorSet {
  std::vector<NamedElement> gens;
  int k = 1;

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(gens.size());
    for (const auto& n : gens) out.push_back(n.g);
    return out;
  }
};

GeneratorSet symmetric_closure(const std::vector<NamedElement>& raw, int k);

struct BallEntry {
  Element g;
  int norm;
  int pred;  // index of the BFS predecessor, -1 for the identity
  int gen;   // generator index with g = gens[gen] * entries[pred]
};

// Ball of the Cayley graph with edges {g, sg}; d(g1, g2) = |g2 g1^{-1}|.
class CayleyBall {
 public:
  int radius = 0;
  GeneratorSet gens;
  std::vector<BallEntry> entries;
  std::vector<std::size_t> level_end;  // entries[0, level_end[r]) have norm <= r

  std::optional<int> find(const Element& g) const;
  bool contains(const Element& g) const { return find(g).has_value(); }
  std::size_t size() const { return entries.size(); }

  // Shortest word as generator indices in product order:
  // g = gens[w[0]] * gens[w[1]] * ... * gens[w.back()].
  std::vector<int> word_of(int idx) const;
  std::string word_name(int idx) const;

  void insert(const Element& g, int norm, int pred, int gen);

 private:
  std::unordered_map<CanonicalKey, int, KeyHash> index_;
};

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

CayleyBall build_ball(const GeneratorSet& S, int radius, std::size_t cap = kDefaultBallCap);

// Word metric via the ball; throws OutOfBall when g2 g1^{-1} is not stored.
int distance(const CayleyBall& ball, const Element& g1, const Element& g2);

double gromov_product(const CayleyBall& ball, const Element& g, const Element& h1,
                      const Element& h2);

std::vector<std::vector<Element>> enumerate_geodesics(const CayleyBall& ball,
                                                      const Element& g1, const Element& g2,
                                                      std::size_t cap = 64);

struct DeltaOptions {
  std::size_t triple_cap = 20'000;
  std::size_t geodesic_cap = 64;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Thin-triangle constant over sampled triples and all enumerated geodesic
// choices; exhaustive when the triple count fits the cap.
double delta_estimate(const CayleyBall& ball, const DeltaOptions& opts = {});

// Certified check of alpha^{-1}|n-m| - beta <= d(g_m,g_n) <= alpha|n-m| + beta.
// Pairs whose quotient lies outside the ball are certified via d >= radius+1
// and the cumulative step-length upper bound; throws OutOfBall only when a
// pair cannot be decided either way.
bool quasi_geodesic_check(const CayleyBall& ball, std::span<const Element> seq, double alpha,
                          double beta);

// Min over stored distinct same-deck pairs of the entrywise matrix distance.
double nearest_distinct_pair(const CayleyBall& ball, std::size_t pair_cap = 4'000'000,
                             std::uint64_t seed = 0);

}  // namespace circlelab
