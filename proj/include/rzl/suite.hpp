#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rzl/config.hpp"

namespace rzl {

struct CriterionResult {
    int id = 0;
    bool pass = false;
    bool informational = false; // reported but never gates
    std::string detail;
    double seconds = 0.0;
};

// Run one numbered acceptance criterion (1..11), or all of them with id = 0.
// Prints "criterion N: PASS/FAIL -- detail" per criterion to log if given.
// Failures are reported, not thrown; an exception inside a criterion is a
// failure of that criterion.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, int id = 0,
                                            std::ostream* log = nullptr);

// true iff every non-informational criterion passed
bool all_pass(const std::vector<CriterionResult>& results);

} // namespace rzl
