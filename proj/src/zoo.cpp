#include "circlelab/zoo.hpp"

#include <cmath>
#include <complex>

#include "circlelab/discreteness.hpp"
#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

namespace {

Element find_generator(const GroupSpec& spec, const std::string& token) {
  for (const auto& g : spec.S.gens)
    if (g.name == token) return g.g;
  throw LabError("unknown generator token '" + token + "' in relator");
}

void check_relators(const GroupSpec& spec, double tol) {
  for (const auto& rel : spec.relators) {
    const Element prod = evaluate_word(spec, rel);
    if (!is_identity(prod, tol)) {
      std::string w;
      for (const auto& t : rel) w += t;
      throw OracleFailed("relator " + w + " does not evaluate to the identity");
    }
  }
}

}  // namespace

Element evaluate_word(const GroupSpec& spec, const std::vector<std::string>& tokens) {
  Element acc = Element::identity(spec.k);
  for (const auto& t : tokens) acc = compose(acc, find_generator(spec, t));
  return acc;
}

GeneratorSet enriched_generators(const GroupSpec& spec, int radius) {
  const CayleyBall ball = build_ball(spec.S, radius);
  std::vector<NamedElement> gens;
  for (std::size_t i = 1; i < ball.size(); ++i)
    gens.push_back({ball.word_name(static_cast<int>(i)), ball.entries[i].g});
  return symmetric_closure(gens, spec.k);
}

GroupSpec triangle_group(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2) throw LabError("triangle orders must be >= 2");
  const double alpha = M_PI / p, beta = M_PI / q, gamma = M_PI / r;
  if (alpha + beta + gamma >= M_PI - 1e-12)
    throw NotHyperbolic("angle sum must be below pi");
  // Side AB along the imaginary axis, length from the hyperbolic law of
  // cosines; a and b are the rotations by 2 pi / p and 2 pi / q at A and B.
  const double cosh_s =
      (std::cos(alpha) * std::cos(beta) + std::cos(gamma)) / (std::sin(alpha) * std::sin(beta));
  const double s = std::acosh(cosh_s);
  const ProjectiveMap a =
      normalize({std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha)});
  const ProjectiveMap b = normalize({std::cos(beta), std::exp(s) * std::sin(beta),
                                     -std::exp(-s) * std::sin(beta), std::cos(beta)});

  GroupSpec spec;
  spec.name = "triangle(" + std::to_string(p) + "," + std::to_string(q) + "," +
              std::to_string(r) + ")";
  spec.k = 1;
  spec.base_gens = {{"a", {a, 1, 0}}, {"b", {b, 1, 0}}};
  spec.S = symmetric_closure(spec.base_gens, 1);
  spec.relators.push_back(std::vector<std::string>(p, "a"));
  spec.relators.push_back(std::vector<std::string>(q, "b"));
  std::vector<std::string> rel_ab;
  for (int i = 0; i < r; ++i) {
    rel_ab.push_back("a");
    rel_ab.push_back("b");
  }
  spec.relators.push_back(rel_ab);
  spec.expected.expanding = true;
  spec.expected.discrete = true;
  spec.enrichment_radius = 2;
  check_relators(spec, 1e-8);
  return spec;
}

namespace {

// SU(1,1)-type matrices [[p, q], [conj(q), conj(p)]] acting on the unit disk
// in the u = exp(2 pi i x) boundary coordinate.
struct DiskMap {
  std::complex<double> p{1.0, 0.0}, q{0.0, 0.0};
};

DiskMap disk_mul(const DiskMap& a, const DiskMap& b) {
  return {a.p * b.p + a.q * std::conj(b.q), a.p * b.q + a.q * std::conj(b.p)};
}

DiskMap disk_inverse(const DiskMap& a) { return {std::conj(a.p), -a.q}; }

DiskMap disk_translate(std::complex<double> P) {
  const double s = std::sqrt(1.0 - std::norm(P));
  return {{1.0 / s, 0.0}, P / s};
}

DiskMap disk_rotate(double chi) {
  return {std::polar(1.0, chi / 2.0), {0.0, 0.0}};
}

// Isometry taking (origin, direction 0) to (P, direction chi).
DiskMap disk_frame(std::complex<double> P, double chi) {
  return disk_mul(disk_translate(P), disk_rotate(chi));
}

ProjectiveMap disk_to_real(const DiskMap& d) {
  // Inverse of p = ((a+d) + i(c-b))/2, q = ((a-d) + i(c+b))/2.
  const double a = d.p.real() + d.q.real();
  const double dd = d.p.real() - d.q.real();
  const double c = d.p.imag() + d.q.imag();
  const double b = d.q.imag() - d.p.imag();
  return normalize({a, b, c, dd});
}

double geodesic_direction(std::complex<double> from, std::complex<double> to) {
  return std::arg((to - from) / (1.0 - std::conj(from) * to));
}

}  // namespace

GroupSpec surface_group(int genus) {
  if (genus != 2) throw UnsupportedGenus("only genus 2 is supported");
  // Regular octagon with vertex angle pi/4: cosh(circumradius) = cot^2(pi/8).
  const double cot8 = 1.0 / std::tan(M_PI / 8.0);
  const double rad_e = std::tanh(std::acosh(cot8 * cot8) / 2.0);
  std::complex<double> V[9];
  for (int j = 0; j < 9; ++j)
    V[j] = std::polar(rad_e, M_PI / 8.0 + (M_PI / 4.0) * (j % 8));

  // Side j runs V_j -> V_{j+1}; generator for sides (src, dst) maps the src
  // side reversed onto the dst side: V_src -> V_{dst+1}, V_{src+1} -> V_dst.
  auto pairing = [&](int src, int dst) {
    const DiskMap from = disk_frame(V[src], geodesic_direction(V[src], V[src + 1]));
    const DiskMap to = disk_frame(V[dst + 1], geodesic_direction(V[dst + 1], V[dst]));
    return Element{disk_to_real(disk_mul(to, disk_inverse(from))), 1, 0};
  };

  GroupSpec spec;
  spec.name = "surface(2)";
  spec.k = 1;
  // Orientations chosen so that the vertex cycle reads the commutator word
  // [a,b][c,d] literally.
  spec.base_gens = {{"a", pairing(2, 0)},
                    {"b", pairing(1, 3)},
                    {"c", pairing(6, 4)},
                    {"d", pairing(5, 7)}};
  spec.S = symmetric_closure(spec.base_gens, 1);
  spec.relators.push_back({"a", "b", "a'", "b'", "c", "d", "c'", "d'"});
  spec.expected.expanding = true;
  spec.expected.discrete = true;
  spec.expected.degree = 1;
  spec.enrichment_radius = 1;
  check_relators(spec, 1e-6);
  {
    const DiscretenessProfile prof =
        discreteness_profile(spec.S, {3, 4, 5}, 0.05, 0.95, -8.0, 8.0, 200, 1);
    if (prof.verdict != "locally discrete (empirical)")
      throw OracleFailed("surface group discreteness oracle: " + prof.verdict);
  }
  return spec;
}

GroupSpec lift_group(const GroupSpec& spec, int k_new) {
  if (spec.k != 1) throw LabError("lift_group expects a base (k = 1) spec");
  if (k_new == 1) return spec;
  if (k_new < 1) throw LabError("cover degree must be positive");
  const int n = static_cast<int>(spec.base_gens.size());

  auto try_assignment = [&](const std::vector<int>& js) {
    GroupSpec lifted;
    lifted.k = k_new;
    for (int i = 0; i < n; ++i)
      lifted.base_gens.push_back(
          {spec.base_gens[i].name, Element{spec.base_gens[i].g.base, k_new, js[i]}});
    lifted.S = symmetric_closure(lifted.base_gens, k_new);
    lifted.relators = spec.relators;
    for (const auto& rel : spec.relators) {
      if (!is_identity(evaluate_word(lifted, rel), 1e-6)) return std::optional<GroupSpec>{};
    }
    return std::optional<GroupSpec>{std::move(lifted)};
  };

  // Exhaustive search over k^n assignments (n <= 4, k <= 3 in the zoo).
  std::vector<int> js(n, 0);
  while (true) {
    if (auto lifted = try_assignment(js)) {
      lifted->name = spec.name + ":lift" + std::to_string(k_new);
      lifted->expected = spec.expected;
      if (spec.expected.degree) lifted->expected.degree = *spec.expected.degree * k_new;
      lifted->enrichment_radius = spec.enrichment_radius;
      return *lifted;
    }
    int i = 0;
    while (i < n && ++js[i] == k_new) js[i++] = 0;
    if (i == n) break;
  }
  throw NoConsistentLift("no branch assignment lifts all relators");
}

GroupSpec modular_group() {
  GroupSpec spec;
  spec.name = "modular";
  spec.k = 1;
  spec.base_gens = {{"S", {normalize({0, -1, 1, 0}), 1, 0}},
                    {"T", {normalize({1, 1, 0, 1}), 1, 0}}};
  spec.S = symmetric_closure(spec.base_gens, 1);
  spec.relators.push_back({"S", "S"});
  spec.relators.push_back({"S", "T", "S", "T", "S", "T"});
  spec.expected.expanding = false;
  spec.expected.discrete = true;
  check_relators(spec, 1e-9);
  return spec;
}

GroupSpec schottky_group(double separation) {
  const double lambda = separation;
  GroupSpec spec;
  spec.name = "schottky(" + fmt_g(separation) + ")";
  spec.k = 1;
  if (!(lambda > 1.0)) throw PingPongFails("separation must exceed 1");
  const ProjectiveMap g1 = ProjectiveMap::diagonal(lambda);
  const ProjectiveMap rot = ProjectiveMap::rotation(M_PI / 4.0);
  const ProjectiveMap g2 = mul(mul(rot, g1), inverse(rot));
  spec.base_gens = {{"a", {g1, 1, 0}}, {"b", {g2, 1, 0}}};
  spec.S = symmetric_closure(spec.base_gens, 1);
  spec.expected.discrete = true;
  spec.expected.expanding = false;

  // Ping-pong on the four intervals of radius 1/16 around 0, 1/4, 1/2, 3/4:
  // each generator must map the complement of its repelling interval inside
  // its attracting interval (endpoint arithmetic through the lift).
  const double rho = 1.0 / 16.0;
  struct Pair {
    ProjectiveMap g;
    double att, rep;
  };
  const Pair pairs[4] = {{g1, 0.0, 0.5},
                         {inverse(g1), 0.5, 0.0},
                         {g2, 0.25, 0.75},
                         {inverse(g2), 0.75, 0.25}};
  for (const auto& pp : pairs) {
    const double lo = pp.rep + rho, hi = pp.rep + 1.0 - rho;
    const double img_lo = lift_value(pp.g, lo);
    const double img_hi = lift_value(pp.g, hi);
    const double len = std::fabs(img_hi - img_lo);
    const bool ends_inside = circ_dist(wrap01(img_lo), pp.att) <= rho &&
                             circ_dist(wrap01(img_hi), pp.att) <= rho;
    if (!ends_inside || len >= 2.0 * rho)
      throw PingPongFails("interval inclusion fails at separation " + fmt_g(separation));
  }
  return spec;
}

GroupSpec affine_nondiscrete() {
  GroupSpec spec;
  spec.name = "affine";
  spec.k = 1;
  spec.base_gens = {{"f", {ProjectiveMap::diagonal(2.0), 1, 0}},
                    {"g", {ProjectiveMap::unipotent(1.0), 1, 0}}};
  spec.S = symmetric_closure(spec.base_gens, 1);
  spec.relators.push_back({"f", "g", "f'", "g'", "g'", "g'", "g'"});  // f g f^-1 = g^4
  spec.expected.discrete = false;
  spec.expected.expanding = false;
  // Common fixed point at [1:0] (chart 0).
  for (const auto& g : spec.S.gens)
    if (circ_dist(apply(g.g, {0.0, 1}).x, 0.0) > 1e-10)
      throw OracleFailed("affine generators must fix [1:0]");
  check_relators(spec, 1e-9);
  return spec;
}

std::vector<std::string> zoo_list() {
  return {"triangle:<p>,<q>,<r>", "surface:2",      "surface:2:lift:<k>",
          "modular",              "schottky:<sep>", "affine"};
}

GroupSpec zoo_lookup(const std::string& ref) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t lo = 0;
    while (true) {
      const auto pos = s.find(sep, lo);
      parts.push_back(s.substr(lo, pos - lo));
      if (pos == std::string::npos) break;
      lo = pos + 1;
    }
    return parts;
  };
  const auto parts = split(ref, ':');
  try {
    if (parts[0] == "triangle" && parts.size() == 2) {
      const auto nums = split(parts[1], ',');
      if (nums.size() != 3) throw ParseError("triangle ref needs p,q,r");
      return triangle_group(std::stoi(nums[0]), std::stoi(nums[1]), std::stoi(nums[2]));
    }
    if (parts[0] == "surface") {
      if (parts.size() == 2) return surface_group(std::stoi(parts[1]));
      if (parts.size() == 4 && parts[2] == "lift")
        return lift_group(surface_group(std::stoi(parts[1])), std::stoi(parts[3]));
    }
    if (parts[0] == "modular" && parts.size() == 1) return modular_group();
    if (parts[0] == "schottky" && parts.size() == 2)
      return schottky_group(std::stod(parts[1]));
    if (parts[0] == "affine" && parts.size() == 1) return affine_nondiscrete();
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed zoo reference: " + ref);
  }
  throw ParseError("unknown zoo reference: " + ref);
}

}  // namespace circlelab
