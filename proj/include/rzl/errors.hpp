#pragma once

#include <stdexcept>
#include <string>

namespace rzl {

// Error taxonomy used across the library.  The CLI maps these to exit codes:
// usage problems are caught by the flag parser (exit 2); everything below
// surfaces as exit 3.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain (pole, bad range, ...).
struct domain_error : error {
    using error::error;
};

// Input data problem (zeros file parse failure, non-monotone ordinates, ...).
struct input_error : error {
    using error::error;
};

// Request exceeds a resource budget (precision cap, table size, allocation).
struct resource_error : error {
    using error::error;
};

// Numerical failure at runtime (quadrature non-convergence, lost bracket, ...).
struct numeric_error : error {
    using error::error;
};

} // namespace rzl
