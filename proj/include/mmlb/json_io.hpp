#pragma once

#include <string>

#include "mmlb/distribution.hpp"
#include "mmlb/jf_solver.hpp"
#include "mmlb/report.hpp"

namespace mmlb {

/// Reads and parses a JSON file; errors name the path.
Json read_json_file(const std::string& path);

/// {"pmf": [...]}
Distribution distribution_from_json(const Json& j);
Json to_json(const Distribution& d);

/// {"members": [{"pmf": [...]}, ...], "prior": [...], "labels": [...]};
/// prior and labels are optional.
Ensemble ensemble_from_json(const Json& j);
Json to_json(const Ensemble& ens);

/// {"candidates": [{"pmf": [...]}, ...], "assignment": [...]}; assignment is
/// optional.
CoveringFamily covering_from_json(const Json& j);

}  // namespace mmlb
