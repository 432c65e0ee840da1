#pragma once

#include <string>
#include <vector>

#include "rzl/bigcomplex.hpp"
#include "rzl/mpcore.hpp"

namespace rzl {

// Per-zero data for the spectral expansion of c_k.  For the zero
// rho = 1/2 + i gamma,
//   coefficient = Gamma(1 - rho/2) / zeta'(rho) = a + i b,
// and the zero's contribution to k^{3/4} c_k oscillates with amplitude
// |coefficient| = modulus.
struct ZeroCoefficient {
    long index = 0; // 1-based position in the ordinate list
    BigReal gamma;
    BigComplex rho;
    BigReal a, b;
    BigReal modulus;
};

// Ordinates file: one positive imaginary part per line, ascending, '#'
// starts a comment.  Each value must carry at least 15 significant digits;
// values are parsed at their full stated precision.
std::vector<BigReal> load_zeros(const std::string& path, long count);

// Path used when the caller passes none: $RZL_ZEROS_FILE if set, else the
// file bundled with the source tree.
std::string default_zeros_path();

// Gamma(1 - rho/2) / zeta'(rho) for rho = 1/2 + i gamma.  Rejects gamma that
// is not actually near a zero (|zeta(rho)| above tolerance), which catches
// typos in ordinate files before they silently poison every downstream sum.
ZeroCoefficient compute_coefficient(const BigReal& gamma, const PrecisionContext& ctx);

// First `count` coefficients from an ordinates file ("" = default path).
std::vector<ZeroCoefficient> coefficient_table(long count, const PrecisionContext& ctx,
                                               const std::string& path = "");

} // namespace rzl
