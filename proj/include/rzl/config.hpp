#pragma once

#include <cstdlib>
#include <string>

#include "rzl/errors.hpp"
#include "rzl/mpcore.hpp"

namespace rzl {

// Run-wide knobs shared by the CLI subcommands.  Defaults first, then
// RZL_* environment variables, then command-line flags (parsed elsewhere).
struct RunConfig {
    long digits = 40;            // working decimal digits
    long mobius_limit = 1000000; // sieve ceiling
    std::string zeros_file;      // empty = bundled table
    int csv_digits = 17;
    int threads = 1;

    PrecisionContext ctx() const { return PrecisionContext(digits); }

    static long env_long(const char* name, long lo, long hi, long fallback) {
        const char* s = std::getenv(name);
        if (!s || !*s)
            return fallback;
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end == s || *end != '\0' || v < lo || v > hi)
            throw input_error(std::string(name) + ": expected integer in [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "], got \"" + s + "\"");
        return v;
    }

    static RunConfig from_env() {
        RunConfig c;
        c.digits = env_long("RZL_DIGITS", 15, 100000, c.digits);
        c.mobius_limit = env_long("RZL_MOBIUS_LIMIT", 1000, 2000000000L, c.mobius_limit);
        c.csv_digits = (int)env_long("RZL_CSV_DIGITS", 6, 40, c.csv_digits);
        c.threads = (int)env_long("RZL_THREADS", 0, 4096, c.threads);
        if (const char* z = std::getenv("RZL_ZEROS_FILE"); z && *z)
            c.zeros_file = z;
        return c;
    }
};

} // namespace rzl
