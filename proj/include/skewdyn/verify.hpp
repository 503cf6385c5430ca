#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "skewdyn/config.hpp"
#include "skewdyn/regions.hpp"

namespace skewdyn {

// Suites: monomial, hull, invariance, semiconjugate; "all" runs each in turn.
std::vector<std::string> suite_names();

// Writes one "<suite> <check>: PASS|FAIL <detail>" line per check and returns
// true when every check passes.  Output depends only on the suite and cfg.
bool run_suite(const std::string& name, const RunConfig& cfg, std::ostream& out);

// Single invariance run on a user map; prints the report and up to
// eight witnesses, true when no sample leaves the wedge.
bool run_invariance(const SkewProduct& f, const WedgeSpec& spec, std::uint64_t samples, std::uint64_t seed,
                    std::ostream& out);

}  // namespace skewdyn
