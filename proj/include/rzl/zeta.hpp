#pragma once

#include <vector>

#include "rzl/mpcore.hpp"
#include "rzl/sieve.hpp"

namespace rzl {

// zeta(2k) and 1/zeta(2k) for 1 <= k <= max_index, all at one fixed binary
// precision.  Small indices use the Bernoulli closed form
//   zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!),
// large ones the direct Dirichlet sum (which needs only ~2^{P/2k} terms and
// quickly beats hauling around huge Bernoulli rationals).
class ZetaEvenTable {
  public:
    ZetaEvenTable(mpfr_prec_t prec, long max_index);

    mpfr_prec_t prec() const { return prec_; }
    long max_index() const { return (long)values_.size(); }

    const BigReal& value(long k) const;   // zeta(2k), 1-indexed
    const BigReal& inverse(long k) const; // 1/zeta(2k)
    // f_j = 1/zeta(2j+2), j >= 0: the base sequence of the binomial transform.
    const BigReal& f(long j) const { return inverse(j + 1); }

    void extend(long max_index);

  private:
    void build(long from_k, long to_k);
    mpfr_prec_t prec_;
    long bernoulli_cutoff_;
    std::vector<BigReal> values_, inverses_;
};

// Process-wide cache of tables keyed by precision; tables grow monotonically.
// The returned reference stays valid for the process lifetime.
const ZetaEvenTable& even_zeta_table(mpfr_prec_t prec, long max_index);

// zeta at even integer 2k.  k = 0 gives zeta(0) = -1/2; negative k rejected.
BigReal zeta_even(long k, const PrecisionContext& ctx);

// Euler-Maclaurin zeta and zeta' on the real axis (s >= 1.5) and in the
// strip/right half-plane for complex s (0 < Re s, |Im s| <= 1000).
BigReal zeta_real(const BigReal& s, const PrecisionContext& ctx);
BigReal zeta_deriv_real(const BigReal& s, const PrecisionContext& ctx);
// One pass for both; the Abel-integral quadrature calls this in its inner loop.
std::pair<BigReal, BigReal> zeta_and_deriv_real(const BigReal& s, const PrecisionContext& ctx);

BigComplex zeta_complex(const BigComplex& s, const PrecisionContext& ctx);
BigComplex zeta_deriv_complex(const BigComplex& s, const PrecisionContext& ctx);

// Truncated Mobius-Dirichlet series for 1/zeta(s), real s >= 2, with the
// rigorous tail bound N^{1-s}/(s-1).
struct DirichletInv {
    BigReal value;
    BigReal tail_bound;
    long terms;
};
DirichletInv inv_zeta_dirichlet(const BigReal& s, long N, const MobiusTable& table,
                                const PrecisionContext& ctx);

} // namespace rzl
