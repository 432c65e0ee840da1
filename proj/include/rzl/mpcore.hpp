#pragma once

#include <gmpxx.h>

#include "rzl/bigcomplex.hpp"
#include "rzl/bigreal.hpp"
#include "rzl/errors.hpp"

namespace rzl {

// Decimal digits -> MPFR bits, with a small headroom word.
inline mpfr_prec_t bits_for_digits(long digits) {
    return (mpfr_prec_t)(digits * 3.3219280948873623 + 1) + 8;
}

// Working-precision policy shared by every operation.  `digits` is what the
// caller sees; `guard_digits` pad the internals; `series_tail_factor`
// stretches truncation lengths (N, kmax, ...) beyond their minimal estimates.
class PrecisionContext {
  public:
    PrecisionContext() : PrecisionContext(40) {}
    explicit PrecisionContext(long digits, long guard_digits = 10,
                              double series_tail_factor = 1.5)
        : digits_(digits), guard_(guard_digits), tail_(series_tail_factor) {
        if (digits_ < 15) throw domain_error("PrecisionContext: digits must be >= 15");
        if (guard_ < 10) throw domain_error("PrecisionContext: guard_digits must be >= 10");
        if (!(tail_ > 0)) throw domain_error("PrecisionContext: series_tail_factor must be > 0");
    }

    long digits() const { return digits_; }
    long guard_digits() const { return guard_; }
    double series_tail_factor() const { return tail_; }

    // Bits including the guard; internal evaluations run at this width.
    mpfr_prec_t prec() const { return bits_for_digits(digits_ + guard_); }
    // Bits for the visible digits only (used when rounding results back down).
    mpfr_prec_t out_prec() const { return bits_for_digits(digits_); }

    PrecisionContext with_digits(long d) const { return PrecisionContext(d, guard_, tail_); }
    PrecisionContext plus_digits(long d) const { return PrecisionContext(digits_ + d, guard_, tail_); }

  private:
    long digits_;
    long guard_;
    double tail_;
};

// Exact integer/rational helpers.
mpz_class factorial_z(unsigned long n);
mpz_class binomial_z(unsigned long n, unsigned long k);

// Bernoulli number B_n for even n (plus the B_1 = -1/2 convention), as an
// exact rational rounded once to ctx precision.  Backed by a cached
// tangent-number triangle, so repeated calls are cheap.
BigReal bernoulli(long n, const PrecisionContext& ctx);
mpq_class bernoulli_q(long n); // exact form, n even, n >= 0

// Gamma on real and complex arguments.  Real axis delegates to MPFR; complex
// values go through argument-shifted Stirling with reflection for Re z < 1/2.
BigReal gamma(const BigReal& x, const PrecisionContext& ctx);
BigComplex gamma(const BigComplex& z, const PrecisionContext& ctx);

// sqrt(2 pi k) k^k e^{-k + 1/(12k+1)} < k! < sqrt(2 pi k) k^k e^{-k + 1/(12k)}.
std::pair<BigReal, BigReal> stirling_factorial_bounds(long k,
                                                      const PrecisionContext& ctx = PrecisionContext());

} // namespace rzl
