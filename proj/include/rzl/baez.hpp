#pragma once

#include <vector>

#include "rzl/mpcore.hpp"
#include "rzl/sieve.hpp"
#include "rzl/zeros.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

enum class CkMethod { binomial, moebius, difftable, spectral };

const char* ck_method_name(CkMethod m);

struct CkRecord {
    long k = 0;
    BigReal value;
    CkMethod method = CkMethod::binomial;
    long precision_digits = 0; // decimal digits the computation worked at
    BigReal err_estimate;
};

// Working precision that keeps the alternating binomial sum
//   c_k = sum_j (-1)^j C(k,j) / zeta(2j+2)
// meaningful despite its ~ 2^k blowup before cancellation: the result is
// ~ k^{-3/4} while partial sums reach C(k,k/2) ~ 2^k.
long ck_rule_digits(long k, const PrecisionContext& ctx);

// Direct alternating sum.  Carried out at prec + k + 8 bits, where every
// product C(k,j) f_j and every subtraction is an exact dyadic operation, so
// the result is the correctly-rounded binomial transform of the stored f_j
// -- bit-identical to the difference-table evaluation at the same precision.
CkRecord ck_binomial(long k, const PrecisionContext& ctx);

// Mobius form c_k = sum_n mu(n) n^{-2} (1 - n^{-2})^k, truncated at a
// power-of-two bucket N ~ 4 sqrt(k) with the n > N remainder restored
// exactly through the inverse-zeta tail deltas.  Cost is O(N) per k with no
// precision blowup; the only route to k in the 10^5..10^6 range.
CkRecord ck_moebius(long k, const MobiusTable& table, const PrecisionContext& ctx);

// Full forward-difference table of f_j = 1/zeta(2j+2): row k holds
// f_l^{(k)} = f_l^{(k-1)} - f_{l+1}^{(k-1)}, and c_k = f_0^{(k)}.  Built with
// a rolling row at the same exact-dyadic precision as ck_binomial.
class DiffTable {
  public:
    DiffTable(long kmax, const PrecisionContext& ctx);

    long kmax() const { return kmax_; }
    long precision_digits() const { return digits_; }

    const BigReal& base(long l) const;  // f_l = f_l^{(0)}
    const BigReal& ck(long k) const;    // f_0^{(k)} = c_k
    // f_l^{(k)} recomputed on demand from the base row (needs l + k <= kmax)
    BigReal diff(long l, long k) const;
    CkRecord record(long k) const;

  private:
    long kmax_;
    long digits_;
    mpfr_prec_t prec_;
    std::vector<BigReal> base_, ck_;
};

DiffTable ck_difftable(long kmax, const PrecisionContext& ctx);

// Two-term spectral model from the zeta-zero coefficients:
//   c_{k-1} ~ k^{-3/4} sum_i [ a_i cos(g_i ln k / 2) - b_i sin(g_i ln k / 2) ].
// Asymptotic only -- meaningless below k ~ 100, an approximation above.
CkRecord ck_spectral(long k, const std::vector<ZeroCoefficient>& coeffs);

// c_k on the grid {0, stride, 2 stride, ...} <= kmax.  The moebius engine
// shares one sieve prefix and one delta table across the sweep and advances
// the (1-1/n^2)^k powers incrementally, restarting every block of 64 grid
// points so results are bit-identical regardless of thread count.  Note the
// sweep fixes N from kmax, so individual samples can differ from a standalone
// ck_moebius call in the far tail of the error budget (same value within
// err_estimate, not bit-identical).
std::vector<CkRecord> ck_sweep(long kmax, CkMethod method, long stride, const MobiusTable& table,
                               const PrecisionContext& ctx, int threads = 1);

} // namespace rzl
