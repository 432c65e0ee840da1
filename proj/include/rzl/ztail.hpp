#pragma once

#include <memory>
#include <vector>

#include "rzl/mpcore.hpp"
#include "rzl/sieve.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

// Exact Mobius tails of the inverse-zeta Dirichlet series at even arguments:
//
//   delta[i] = sum_{n>N} mu(n) n^{-(2i+2)} = 1/zeta(2i+2) - sum_{n<=N} mu(n) n^{-(2i+2)}
//
// This is the quantity that turns every truncated-at-N Mobius sum in the
// library into an identity: binomial-expand whatever weight sits on n^{-2}
// (powers (1-1/n^2)^k, exponentials, geometric factors) and the n>N remainder
// collapses onto these deltas.  The subtraction cancels about (2i+1) log2 N
// bits, so the table is built at an elevated precision and the entries keep
// their full width.
//
// Entries are cached per (N, base_prec, imax) and shared process-wide; the
// returned pointer stays valid forever.
std::shared_ptr<const std::vector<BigReal>> mobius_tail_deltas(long N, long imax,
                                                               mpfr_prec_t base_prec,
                                                               const MobiusTable& table);

// N-selection used by the Mobius-weighted c_k machinery: at least
// 4 sqrt(k+1) * safety (series in the tail converges like (k/N^2)^j), rounded
// up to a power-of-two bucket so delta tables are shared across nearby k.
long mobius_tail_bucket(long k, double safety);

} // namespace rzl
