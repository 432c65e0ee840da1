#include "rzl/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rzl/parallel.hpp"
#include "rzl/ztail.hpp"

namespace rzl {

const char* riesz_method_name(RieszMethod m) {
    switch (m) {
    case RieszMethod::series: return "series";
    case RieszMethod::kummer1: return "kummer1";
    case RieszMethod::kummer2: return "kummer2";
    }
    return "?";
}

RieszSample riesz_series(double x, const PrecisionContext& ctx) {
    if (!std::isfinite(x))
        throw domain_error("riesz_series: x must be finite");
    if (std::fabs(x) > 1.0e4)
        throw resource_error("riesz_series: |x| > 1e4 needs ~0.44|x| guard digits; use kummer2");

    // cancellation: terms peak near e^{|x|} while R(x) = O(x^{1/4})
    const long extra = (long)std::ceil(std::fabs(x) * 0.4342944819032518) + 10;
    const long wdigits = ctx.digits() + ctx.guard_digits() + extra;
    const mpfr_prec_t p = bits_for_digits(wdigits);

    const ZetaEvenTable* zt = &even_zeta_table(p, 80);
    BigReal xb(x, p);
    BigReal q(1L, p);  // (-x)^k / k!
    BigReal sum(0L, p), term(p), maxmag(1L, p);
    // run until the terms sink below the accumulation's own roundoff floor
    // (relative to the largest partial sum): the cancellation peak is ~e^{|x|},
    // so any earlier stop leaves tol * maxmag of it unresolved
    const BigReal tol = pow2(8 - (long)p, 64);
    const long kcap = 40 * wdigits + 3 * (long)std::ceil(std::fabs(x)) + 64;
    long k = 0;
    for (;; ++k) {
        if (k + 1 >= zt->max_index())
            zt = &even_zeta_table(p, zt->max_index() + 64);
        term = q * zt->f(k); // f(k) = 1/zeta(2k+2)
        sum += term;
        BigReal a = abs(sum);
        if (a > maxmag)
            maxmag = a;
        if ((double)k > std::fabs(x) && abs(term) < tol * maxmag)
            break;
        if (k > kcap)
            throw numeric_error("riesz_series: series failed to converge (internal)");
        q *= xb;
        q /= BigReal(-(k + 1L), 64);
    }

    RieszSample out;
    out.x = x;
    out.method = RieszMethod::series;
    out.terms_used = k + 1;
    out.value = (xb * sum).rounded_to(ctx.prec());
    // truncation (next term, geometrically dominated) + accumulated roundoff
    BigReal err = abs(xb) * abs(term) * BigReal(ctx.series_tail_factor(), 64);
    err += abs(xb) * maxmag * BigReal((double)(k + 2), 64) * pow2(1 - p, 64);
    err += abs(out.value) * pow2(2 - ctx.prec(), 64);
    out.err_estimate = err.rounded_to(64);
    return out;
}

namespace {

// shared Mobius/exponential kernel: sum over squarefree n <= N of
//   mu(n) n^{-2} * (subtract_one ? expm1(-x/n^2) : exp(-x/n^2))
BigReal mobius_exp_sum(const BigReal& xw, long N, bool subtract_one,
                       const MobiusTable::Packed& packed, mpfr_prec_t p) {
    const size_t cnt = packed_count_upto(packed, N);
    BigReal acc(0L, p), t(p);
    // terms with x/n^2 > (p+16) ln 2 are exactly -1 (subtracted form) or
    // negligible (plain form) at this precision
    const double xd = xw.to_double();
    const double big = (double)(p + 16) * 0.6931471805599453;
    for (size_t i = 0; i < cnt; ++i) {
        const unsigned long n = packed.n[i];
        const unsigned long nsq = n * n;
        const double ratio = xd / (double)nsq;
        if (ratio > big) {
            if (subtract_one) {
                mpfr_set_si(t.raw(), -1, MPFR_RNDN);
                mpfr_div_ui(t.raw(), t.raw(), nsq, MPFR_RNDN);
                if (packed.sign[i] > 0)
                    acc += t;
                else
                    acc -= t;
            }
            continue; // plain form: e^{-x/n^2} < 2^-(p+16)
        }
        mpfr_div_ui(t.raw(), xw.raw(), nsq, MPFR_RNDN);
        mpfr_neg(t.raw(), t.raw(), MPFR_RNDN);
        if (subtract_one)
            mpfr_expm1(t.raw(), t.raw(), MPFR_RNDN);
        else
            mpfr_exp(t.raw(), t.raw(), MPFR_RNDN);
        mpfr_div_ui(t.raw(), t.raw(), nsq, MPFR_RNDN);
        if (packed.sign[i] > 0)
            acc += t;
        else
            acc -= t;
    }
    return acc;
}

long kummer2_bucket(double x, double safety) {
    // smallest 64 * 2^j with N >= 4 sqrt(x+1) * safety, so x/N^2 <= 1/16 and
    // the tail fold sheds >= 4 bits per term; power-of-two buckets keep the
    // cached delta tables shared across nearby x
    const double nmin = 4.0 * std::sqrt(x + 1.0) * safety;
    long b = 64;
    while ((double)b < nmin && b < (1L << 61))
        b *= 2;
    return b;
}

} // namespace

RieszSample riesz_kummer1(double x, const MobiusTable& table, const PrecisionContext& ctx,
                          long N) {
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("riesz_kummer1: x must be finite and >= 0");
    if (N == 0)
        N = std::min(table.limit(), std::max(10000L, 100L * (long)std::ceil(std::sqrt(x))));
    if (N < 1)
        throw domain_error("riesz_kummer1: N must be >= 1");
    if (N > table.limit())
        throw domain_error("riesz_kummer1: needs N = " + std::to_string(N) +
                           " but sieve limit is " + std::to_string(table.limit()));
    const mpfr_prec_t p = ctx.prec() + 16 + (long)std::ceil(std::log2(1.0 + x));
    if (x == 0.0) {
        RieszSample out;
        out.x = 0.0;
        out.method = RieszMethod::kummer1;
        out.value = BigReal(0L, ctx.prec());
        out.err_estimate = BigReal(0L, 64);
        return out;
    }
    BigReal xw(x, p);
    auto packed = table.packed_upto(N);
    BigReal acc = mobius_exp_sum(xw, N, false, *packed, p);
    RieszSample out;
    out.x = x;
    out.method = RieszMethod::kummer1;
    out.terms_used = (long)packed_count_upto(*packed, N);
    out.value = (xw * acc).rounded_to(ctx.prec());
    // |mu| <= 1 tail: x * sum_{n>N} n^{-2} < x/N -- this form cannot do better
    out.err_estimate = (BigReal(x, 64) / BigReal(N, 64)).rounded_to(64);
    return out;
}

RieszSample riesz_kummer2(double x, const MobiusTable& table, const PrecisionContext& ctx,
                          double eps) {
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("riesz_kummer2: x must be finite and >= 0");
    if (eps < 0.0 || !std::isfinite(eps))
        throw domain_error("riesz_kummer2: eps must be >= 0");
    if (x == 0.0) {
        RieszSample out;
        out.x = 0.0;
        out.method = RieszMethod::kummer2;
        out.value = BigReal(0L, ctx.prec());
        out.err_estimate = BigReal(0L, 64);
        return out;
    }
    const double safety = std::max(1.0, ctx.series_tail_factor());
    const long N = kummer2_bucket(x, safety);
    if (N > table.limit())
        throw domain_error("riesz_kummer2: x = " + std::to_string(x) + " needs sieve up to N = " +
                           std::to_string(N) + " but limit is " + std::to_string(table.limit()));
    const mpfr_prec_t p =
        ctx.prec() + 16 + std::max(0L, (long)std::ceil(std::log2(std::max(1.0, x))));
    BigReal xw(x, p);
    auto packed = table.packed_upto(N);
    BigReal head = mobius_exp_sum(xw, N, true, *packed, p);
    head += even_zeta_table(p, 1).inverse(1); // + 6/pi^2

    // fold the n > N remainder exactly: binomial-free exchange of the two
    // absolutely convergent sums gives
    //   sum_{n>N} mu(n) n^{-2} (e^{-x/n^2} - 1) = sum_{j>=1} (-x)^j/j! delta_j,
    // and x/N^2 <= 1/16 makes the terms shed >= 4 bits each
    const double lnr = std::log((double)N * (double)N / x);
    const long imax =
        std::max(48L, (long)std::ceil(((double)p + 32.0) * 0.6931471805599453 / lnr) + 8);
    auto deltas = mobius_tail_deltas(N, imax, p, table);

    BigReal fold(0L, p);
    BigReal wabs(1L, p); // x^j / j!
    const BigReal thr = (abs(head) + BigReal(1L, 64)) * pow2(-(long)(p + 24), 64);
    BigReal lastmag(0L, 64);
    int streak = 0;
    bool converged = false;
    for (size_t j = 1; j < deltas->size(); ++j) {
        wabs *= xw;
        mpfr_div_ui(wabs.raw(), wabs.raw(), (unsigned long)j, MPFR_RNDN);
        BigReal term = wabs * (*deltas)[j];
        if (j & 1u)
            fold -= term;
        else
            fold += term;
        lastmag = abs(term).rounded_to(64);
        if (lastmag < thr) {
            if (++streak >= 2) {
                converged = true;
                break;
            }
        } else {
            streak = 0;
        }
    }
    if (!converged)
        throw numeric_error("riesz_kummer2: tail fold failed to converge");

    RieszSample out;
    out.x = x;
    out.method = RieszMethod::kummer2;
    out.terms_used = (long)packed_count_upto(*packed, N);
    out.value = (xw * (head + fold)).rounded_to(ctx.prec());
    // the representation is exact, so only rounding remains: ~terms_used
    // accumulations at 2^-p on O(1) partial sums (all scaled by x), the fold
    // cutoff, and the final rounding
    const BigReal rb = BigReal(2L * (out.terms_used + imax + 8), 64) * pow2(-(long)p, 64);
    out.err_estimate = (BigReal(x, 64) * (lastmag + thr + rb) +
                        abs(out.value) * pow2(1 - (long)ctx.prec(), 64))
                           .rounded_to(64);
    if (eps > 0.0 && out.err_estimate > BigReal(eps, 64))
        throw numeric_error("riesz_kummer2: eps request is below the achievable rounding "
                            "floor at digits = " +
                            std::to_string(ctx.digits()) + "; raise digits");
    return out;
}

BigReal first_zero(const MobiusTable& table, const PrecisionContext& ctx, double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo))
        throw domain_error("first_zero: need 0 < lo < hi");
    const double eps = 1.0e-13;
    auto f = [&](double x) { return riesz_kummer2(x, table, ctx, eps).value.to_double(); };
    double fa = f(lo), fb = f(hi);
    if (!(fa > 0.0) || !(fb < 0.0))
        throw numeric_error("first_zero: R does not change sign from + to - on bracket");
    // Brent's method on the double-ized evaluations; R' ~ -0.18 near the root
    // so 1e-13 evaluation noise keeps signs trustworthy to ~1e-12 of the root.
    double a = lo, b = hi, c = a, fc = fa;
    double d = b - a, e = d;
    const double tolx = 1.0e-12;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * tolx;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0)
            return BigReal(b, ctx.prec());
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, pq, qq;
            if (a == c) {
                pq = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                double q = fa / fc, r = fb / fc;
                pq = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pq > 0.0)
                qq = -qq;
            pq = std::fabs(pq);
            if (2.0 * pq < std::min(3.0 * xm * qq - std::fabs(tol1 * qq), std::fabs(e * qq))) {
                e = d;
                d = pq / qq;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw numeric_error("first_zero: bracketing did not converge in 200 iterations");
}

std::vector<RieszSample> riesz_sweep(double xmax, long points, Spacing spacing,
                                     const MobiusTable& table, const PrecisionContext& ctx,
                                     double xmin, double eps_quarter, int threads) {
    if (!(xmax > 0.0) || !std::isfinite(xmax))
        throw domain_error("riesz_sweep: xmax must be positive and finite");
    if (points < 1 || points > 1000000L)
        throw domain_error("riesz_sweep: points must be in [1, 1e6]");
    if (spacing == Spacing::log && !(xmin > 0.0 && xmin < xmax))
        throw domain_error("riesz_sweep: log spacing needs 0 < xmin < xmax");
    if (eps_quarter < 0.0)
        throw domain_error("riesz_sweep: eps_quarter must be >= 0");

    std::vector<double> xs((size_t)points);
    if (points == 1) {
        xs[0] = xmax;
    } else if (spacing == Spacing::linear) {
        for (long i = 0; i < points; ++i)
            xs[(size_t)i] = xmax * (double)(i + 1) / (double)points;
    } else {
        const double lr = std::log(xmax / xmin) / (double)(points - 1);
        for (long i = 0; i < points; ++i)
            xs[(size_t)i] = xmin * std::exp(lr * (double)i);
        xs.back() = xmax;
    }

    // pre-grow the packed sieve view once so workers never race to build it
    {
        long nmax = kummer2_bucket(xmax, std::max(1.0, ctx.series_tail_factor()));
        if (nmax > table.limit())
            throw domain_error("riesz_sweep: needs sieve up to " + std::to_string(nmax) +
                               " but limit is " + std::to_string(table.limit()));
        (void)table.packed_upto(nmax);
    }

    std::vector<RieszSample> out((size_t)points);
    const long block = 256;
    const long nblocks = (points + block - 1) / block;
    parallel_blocks(nblocks, threads, [&](long b) {
        const long k0 = b * block, k1 = std::min(points, k0 + block);
        for (long i = k0; i < k1; ++i) {
            const double x = xs[(size_t)i];
            const double eps =
                eps_quarter > 0.0 ? eps_quarter * std::pow(std::max(1.0, x), 0.25) : 0.0;
            out[(size_t)i] = riesz_kummer2(x, table, ctx, eps);
        }
    });
    return out;
}

} // namespace rzl
