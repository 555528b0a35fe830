#include "circlelab/groupio.hpp"

#include <fstream>

#include <json.hpp>

#include "circlelab/errors.hpp"

namespace circlelab {

using nlohmann::json;

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("group file parse error: ") + e.what());
  }
  GroupSpec spec;
  try {
    spec.name = doc.value("name", "unnamed");
    spec.k = doc.value("k", 1);
    if (spec.k < 1) throw ParseError("k must be >= 1");
    for (const auto& g : doc.at("generators")) {
      const auto mat = g.at("matrix");
      if (!mat.is_array() || mat.size() != 4)
        throw ParseError("generator matrix must have 4 entries");
      const ProjectiveMap m = normalize(
          {mat[0].get<double>(), mat[1].get<double>(), mat[2].get<double>(),
           mat[3].get<double>()});
      spec.base_gens.push_back(
          {g.at("name").get<std::string>(), Element{m, spec.k, g.value("branch", 0)}});
    }
    if (doc.contains("relators"))
      for (const auto& rel : doc["relators"])
        spec.relators.push_back(rel.get<std::vector<std::string>>());
    if (doc.contains("expected")) {
      const auto& e = doc["expected"];
      if (e.contains("expanding")) spec.expected.expanding = e["expanding"].get<bool>();
      if (e.contains("discrete")) spec.expected.discrete = e["discrete"].get<bool>();
      if (e.contains("degree")) spec.expected.degree = e["degree"].get<int>();
    }
    spec.enrichment_radius = doc.value("enrichment", 1);
  } catch (const json::exception& e) {
    throw ParseError(std::string("group file field error: ") + e.what());
  }
  spec.S = symmetric_closure(spec.base_gens, spec.k);
  if (spec.S.gens.empty()) throw ParseError("group needs at least one generator");
  for (const auto& rel : spec.relators) {
    if (!is_identity(evaluate_word(spec, rel), 1e-6)) {
      std::string w;
      for (const auto& t : rel) w += t;
      throw OracleFailed("relator " + w + " fails on loaded group");
    }
  }
  return spec;
}

GroupSpec load_group(const std::string& path_or_ref) {
  if (path_or_ref.rfind("zoo:", 0) == 0) return zoo_lookup(path_or_ref.substr(4));
  return load_group_file(path_or_ref);
}

std::string group_to_json(const GroupSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["k"] = spec.k;
  doc["generators"] = json::array();
  for (const auto& g : spec.base_gens) {
    json jg;
    jg["name"] = g.name;
    jg["matrix"] = {g.g.base.m[0], g.g.base.m[1], g.g.base.m[2], g.g.base.m[3]};
    if (spec.k > 1) jg["branch"] = g.g.branch;
    doc["generators"].push_back(jg);
  }
  if (!spec.relators.empty()) doc["relators"] = spec.relators;
  json e;
  if (spec.expected.expanding) e["expanding"] = *spec.expected.expanding;
  if (spec.expected.discrete) e["discrete"] = *spec.expected.discrete;
  if (spec.expected.degree) e["degree"] = *spec.expected.degree;
  if (!e.empty()) doc["expected"] = e;
  doc["enrichment"] = spec.enrichment_radius;
  return doc.dump(2);
}

}  // namespace circlelab
