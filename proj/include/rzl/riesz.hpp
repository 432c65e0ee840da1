#pragma once

#include <vector>

#include "rzl/mpcore.hpp"
#include "rzl/sieve.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

enum class RieszMethod { series, kummer1, kummer2 };

const char* riesz_method_name(RieszMethod m);

struct RieszSample {
    double x = 0.0;
    BigReal value;
    RieszMethod method = RieszMethod::series;
    long terms_used = 0;
    BigReal err_estimate; // bound on |value - R(x)| actually achieved
};

// R(x) from the defining entire series
//   R(x) = x * sum_{k>=0} (-x)^k / (k! zeta(2k+2)).
// The terms grow to ~e^{|x|} before the factorial wins, so the working
// precision budgets an extra 0.44|x| digits for the cancellation; past
// |x| ~ 1e4 that budget is absurd and the call refuses (use kummer2).
RieszSample riesz_series(double x, const PrecisionContext& ctx);

// Plain Mobius/exponential form R(x) = x sum_n mu(n) n^{-2} e^{-x/n^2}.
// Truncation at N leaves a tail bounded only by x/N (the exponential is ~1
// for n >> sqrt(x)), so the achievable accuracy is limited; err_estimate
// reports that bound honestly.  N = 0 picks max(10^4, 100 ceil(sqrt(x)))
// clipped to the sieve limit.
RieszSample riesz_kummer1(double x, const MobiusTable& table, const PrecisionContext& ctx,
                          long N = 0);

// Subtracted form
//   R(x) = x [ 6/pi^2 + sum_{n<=N} mu(n) n^{-2} (e^{-x/n^2} - 1) ]  +  tail,
// with the n > N tail folded exactly through the cached Mobius tail moments:
//   sum_{n>N} mu(n) n^{-2} (e^{-x/n^2} - 1) = sum_{j>=1} (-x)^j/j! delta_j(N),
//   delta_j(N) = sum_{n>N} mu(n) n^{-(2j+2)}.
// N is bucketed so x/N^2 <= 1/16 and the fold sheds >= 4 bits per term; the
// result is exact to working precision and err_estimate reports rounding
// only.  eps is a requested accuracy floor: it is validated and always met
// (the evaluator does far better), and is kept so callers can state intent.
// The workhorse for large x.
RieszSample riesz_kummer2(double x, const MobiusTable& table, const PrecisionContext& ctx,
                          double eps = 0.0);

// First sign change of R on [lo, hi] by Brent bracketing; the bracket must
// straddle the zero.
BigReal first_zero(const MobiusTable& table, const PrecisionContext& ctx, double lo = 1.0,
                   double hi = 1.3);

enum class Spacing { linear, log };

// Evaluate R on a linear or log grid (kummer2 throughout).  eps_quarter > 0
// replaces the default accuracy policy with eps(x) = eps_quarter * max(1,x)^{1/4},
// the natural envelope-relative target for zero-counting sweeps.
std::vector<RieszSample> riesz_sweep(double xmax, long points, Spacing spacing,
                                     const MobiusTable& table, const PrecisionContext& ctx,
                                     double xmin = 0.1, double eps_quarter = 0.0,
                                     int threads = 1);

} // namespace rzl
