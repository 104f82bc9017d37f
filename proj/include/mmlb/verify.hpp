#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmlb/distribution.hpp"
#include "mmlb/report.hpp"

namespace mmlb {

/// Suite names accepted by run_verify, "all" last.
const std::vector<std::string>& verify_suites();

/// Runs one invariant suite (or "all") on seeded random instances plus any
/// `extra` ensembles. The report lists, per check, the number of cases, the
/// smallest slack observed (margin by which the inequality held; negative
/// means violated) and the tolerance, and sets "passed". Output depends only
/// on (suite, seed, extra).
Json run_verify(const std::string& suite, std::uint64_t seed, const std::vector<Ensemble>& extra = {});

}  // namespace mmlb
