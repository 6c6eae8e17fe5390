// SPDX-License-Identifier: Apache-2.0
//
// Runs the full validation suite against the default parameters and prints
// one line per criterion. Exit code 0 iff every criterion passes.

#include <cstdio>

#include "fhmux/selfcheck.hpp"

int main() {
    const auto results = fhmux::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        std::printf("%-4s %2d  %-26s %8.3f s  %s\n", r.pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
