#include "rzl/ztail.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace rzl {

namespace {

std::mutex g_delta_mutex;
// key: (N, bucketed base precision, imax rounded up)
std::map<std::tuple<long, mpfr_prec_t, long>, std::shared_ptr<const std::vector<BigReal>>>
    g_delta_cache;

std::shared_ptr<const std::vector<BigReal>> build_deltas(long N, long imax, mpfr_prec_t prec,
                                                         const MobiusTable& table) {
    // Cancellation: delta[i] ~ N^{-(2i+1)} while both sides are O(1), so we
    // lose about (2i+2) log2 N bits at the top of the ladder.
    const double lg = std::log2((double)N);
    const mpfr_prec_t pmax = prec + (mpfr_prec_t)((2.0 * imax + 2.0) * lg) + 64;

    auto packed = table.packed_upto(N);
    const size_t cnt = packed_count_upto(*packed, N);

    // prefix[i] = sum_{2<=n<=N} mu(n) n^{-(2i+2)}, accumulated ascending so the
    // big n=2,3,... terms land on small partial sums.
    std::vector<BigReal> prefix((size_t)imax + 1, BigReal(0L, pmax));
    BigReal w(pmax), t(pmax);
    for (size_t idx = 1; idx < cnt; ++idx) { // skip n = 1
        const unsigned long n = packed->n[idx];
        mpfr_set_ui(w.raw(), n * n, MPFR_RNDN); // n <= 1e9 so n^2 fits, exact
        mpfr_ui_div(w.raw(), 1u, w.raw(), MPFR_RNDN);
        t = w;
        if (packed->sign[idx] > 0) {
            for (long i = 0; i <= imax; ++i) {
                prefix[(size_t)i] += t;
                if (i < imax)
                    t *= w;
            }
        } else {
            for (long i = 0; i <= imax; ++i) {
                prefix[(size_t)i] -= t;
                if (i < imax)
                    t *= w;
            }
        }
        // n^{-(2i+2)} underflows relevance once below 2^-pmax; prune depth.
        // (cheap test: for n >= 2^(pmax/(2 imax)) the top rungs vanish, but
        // the inner loop already costs little compared to the division)
    }

    const ZetaEvenTable& zt = even_zeta_table(pmax, imax + 1);
    auto out = std::make_shared<std::vector<BigReal>>();
    out->reserve((size_t)imax + 1);
    for (long i = 0; i <= imax; ++i) {
        BigReal d = zt.inverse(i + 1) - BigReal(1L, pmax) - prefix[(size_t)i]; // minus mu(1)=1
        out->push_back(d);
    }
    return out;
}

} // namespace

std::shared_ptr<const std::vector<BigReal>> mobius_tail_deltas(long N, long imax,
                                                               mpfr_prec_t base_prec,
                                                               const MobiusTable& table) {
    if (N < 2)
        throw domain_error("mobius_tail_deltas: N must be >= 2");
    if (N > table.limit())
        throw domain_error("mobius_tail_deltas: N exceeds sieve limit");
    if (imax < 0)
        throw domain_error("mobius_tail_deltas: imax must be >= 0");
    const mpfr_prec_t pb = ((base_prec + 63) / 64) * 64;
    const long im = ((imax + 15) / 16) * 16;
    const auto key = std::make_tuple(N, pb, im);
    std::lock_guard<std::mutex> lock(g_delta_mutex);
    auto it = g_delta_cache.find(key);
    if (it != g_delta_cache.end())
        return it->second;
    auto built = build_deltas(N, im, pb, table);
    g_delta_cache.emplace(key, built);
    return built;
}

long mobius_tail_bucket(long k, double safety) {
    if (safety < 1.0)
        safety = 1.0;
    const double nmin = 4.0 * std::sqrt((double)k + 1.0) * safety;
    long bucket = 64;
    while ((double)bucket < nmin)
        bucket *= 2;
    return bucket;
}

} // namespace rzl
