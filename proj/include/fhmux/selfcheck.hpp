// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace fhmux {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the built-in validation suite against the default parameters
// (lambda_u=5, lambda_r=1, a=b=3.5). `ids` selects a subset; empty runs all.
// `threads` caps worker threads for the Monte Carlo checks; 0 picks the
// hardware count. Each criterion carries a runtime budget; exceeding it
// fails the criterion even when the numbers agree.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            int threads = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fhmux
