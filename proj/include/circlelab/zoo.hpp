#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circlelab/cayley.hpp"

namespace circlelab {

struct GroupExpectation {
  std::optional<bool> expanding;
  std::optional<bool> discrete;
  std::optional<int> degree;
};

// A constructed example group. Constructors run their self-verification
// oracle and never return a spec that fails it.
struct GroupSpec {
  std::string name;
  int k = 1;
  GeneratorSet S;                        // symmetric closure of base_gens
  std::vector<NamedElement> base_gens;   // defining generators (no inverses)
  std::vector<std::vector<std::string>> relators;  // words over gen names, X' = inverse
  GroupExpectation expected;
  int enrichment_radius = 1;  // ball radius whose elements make the expanding set
};

// Evaluates a relator word against the spec's symmetric generating set.
Element evaluate_word(const GroupSpec& spec, const std::vector<std::string>& tokens);

// Working generating set for expansion experiments: all nontrivial elements
// of the ball of the given radius (symmetric by construction).
GeneratorSet enriched_generators(const GroupSpec& spec, int radius);

// Hyperbolic (p,q,r) rotation group from triangle trigonometry; oracle checks
// a^p = b^q = (ab)^r = id within 1e-8.
GroupSpec triangle_group(int p, int q, int r);

// Genus-2 surface group from the regular octagon with vertex angle pi/4;
// oracle checks the commutator relator within 1e-6 and a small-radius
// discreteness plateau.
GroupSpec surface_group(int genus = 2);

// Lift to the k-fold cover by exhaustive branch search over the generators;
// oracle: every relator lifts to the trivial deck element.
GroupSpec lift_group(const GroupSpec& spec, int k_new);

// PSL(2, Z) with S = (0,-1;1,0), T = (1,1;0,1); non-cocompact contrast case.
GroupSpec modular_group();

// Two hyperbolic elements with disjoint ping-pong intervals around the four
// axis endpoints 0, 1/4, 1/2, 3/4; `separation` is the diagonal eigenvalue.
GroupSpec schottky_group(double separation);

// diag(2, 1/2) and unipotent(1): solvable, non locally discrete.
GroupSpec affine_nondiscrete();

// zoo:<ref> names understood by the CLI, e.g. "triangle:2,3,7".
std::vector<std::string> zoo_list();
GroupSpec zoo_lookup(const std::string& ref);

}  // namespace circlelab
