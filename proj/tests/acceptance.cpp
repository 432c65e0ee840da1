// Acceptance gate: one criterion per invocation (argv[1] = 1..11), or all of
// them when run bare.  Prints one PASS/FAIL line per criterion; exit 0 iff
// every non-informational criterion passed.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "rzl/config.hpp"
#include "rzl/suite.hpp"

int main(int argc, char** argv) {
    long id = 0;
    if (argc > 2) {
        std::fprintf(stderr, "usage: %s [criterion 1..11]\n", argv[0]);
        return 2;
    }
    if (argc == 2) {
        char* end = nullptr;
        id = std::strtol(argv[1], &end, 10);
        if (!end || *end != '\0' || id < 1 || id > 11) {
            std::fprintf(stderr, "usage: %s [criterion 1..11]\n", argv[0]);
            return 2;
        }
    }
    try {
        rzl::RunConfig cfg = rzl::RunConfig::from_env();
        std::vector<rzl::CriterionResult> rs = rzl::run_acceptance(cfg, id, &std::cout);
        return rzl::all_pass(rs) ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
