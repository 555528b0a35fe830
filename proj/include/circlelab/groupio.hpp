#pragma once

#include <string>

#include "circlelab/zoo.hpp"

namespace circlelab {

// Group-definition JSON:
//   {name, k, generators: [{name, matrix: [a,b,c,d], branch?}],
//    relators?: [["a","b","a'"], ...], expected?: {expanding?, discrete?, degree?},
//    enrichment?}
// Matrices are row-major reals, normalized on load; missing inverses are
// added by symmetry closure; relators, when present, are verified as the
// load-time oracle.
GroupSpec load_group_file(const std::string& path);

// Accepts either a file path or a "zoo:<ref>" reference.
GroupSpec load_group(const std::string& path_or_ref);

std::string group_to_json(const GroupSpec& spec);

}  // namespace circlelab
