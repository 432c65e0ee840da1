#include "rzl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <gmpxx.h>

#include "rzl/parallel.hpp"
#include "rzl/quadrature.hpp"
#include "rzl/ztail.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

BigReal verify_generating_identity(double x, long kmax, const PrecisionContext& ctx) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("verify_generating_identity: x must be positive and finite");
    if (kmax < 4)
        throw domain_error("verify_generating_identity: kmax must be >= 4");
    if (kmax > 2000)
        throw resource_error("verify_generating_identity: kmax capped at 2000");

    DiffTable dt(kmax, ctx);
    const mpfr_prec_t p = ctx.prec() + 64;
    BigReal xb(x, p);
    BigReal q(1L, p), lhs(0L, p); // q = x^k / k!
    for (long k = 0; k <= kmax; ++k) {
        lhs += dt.ck(k) * q;
        q *= xb;
        q /= BigReal(k + 1L, 64);
    }
    RieszSample r = riesz_series(x, ctx);
    BigReal rhs = exp(xb) * r.value.rounded_to(p) / xb;
    BigReal residual = abs(lhs - rhs) / (abs(rhs) + BigReal("1e-30", p));
    return residual.rounded_to(ctx.prec());
}

std::vector<BoundReport> verify_bound(long kmin, long kmax, const MobiusTable& table,
                                      const PrecisionContext& ctx, long samples, int threads) {
    if (kmin < 1 || kmax < kmin)
        throw domain_error("verify_bound: need 1 <= kmin <= kmax");
    if (samples < 0)
        throw domain_error("verify_bound: samples must be >= 0");

    std::vector<long> ks;
    if (samples == 0 || samples >= kmax - kmin + 1) {
        ks.reserve((size_t)(kmax - kmin + 1));
        for (long k = kmin; k <= kmax; ++k)
            ks.push_back(k);
    } else if (samples == 1) {
        ks.push_back(kmin);
    } else {
        const double lr = std::log((double)kmax / (double)kmin) / (double)(samples - 1);
        long prev = 0;
        for (long i = 0; i < samples; ++i) {
            long k = (long)std::llround((double)kmin * std::exp(lr * (double)i));
            k = std::min(std::max(k, kmin), kmax);
            if (k != prev) {
                ks.push_back(k);
                prev = k;
            }
        }
    }

    // Appendix constants, evaluated once
    const mpfr_prec_t cp = 128;
    const BigReal pi = const_pi(cp);
    const BigReal sqrtpi = sqrt(pi);
    const BigReal c32 = sqrtpi * BigReal(3L, cp) / BigReal(16L, cp);
    const BigReal c2 = BigReal(27L, cp) / (BigReal(2L, cp) * exp(BigReal(3L, cp)));
    const BigReal c52 = sqrtpi / BigReal(144L, cp);
    const BigReal c3 = BigReal(128L, cp) * exp(BigReal(-4L, cp));

    // pre-build shared state before going parallel
    {
        const long nmax = mobius_tail_bucket(kmax, ctx.series_tail_factor());
        if (nmax > table.limit())
            throw domain_error("verify_bound: kmax needs sieve up to " + std::to_string(nmax));
        (void)mobius_tail_deltas(nmax, 48, ctx.prec() + 24, table);
        const double epsmax = 6.0e-5 * std::pow((double)kmax, -0.75);
        (void)table.packed_upto(
            std::min(table.limit(), (long)(1.2 * std::cbrt((double)kmax / (3.0 * epsmax))) + 64));
    }

    std::vector<BoundReport> out(ks.size());
    const long block = 32;
    const long nblocks = ((long)ks.size() + block - 1) / block;
    parallel_blocks(nblocks, threads, [&](long b) {
        const long i0 = b * block, i1 = std::min((long)ks.size(), i0 + block);
        for (long i = i0; i < i1; ++i) {
            const long k = ks[(size_t)i];
            // R(k)/k needs to be resolved well below the k^{-7/4} oscillation
            // of the difference itself
            const double epsk = 6.0e-5 * std::pow((double)k, -0.75);
            RieszSample r = riesz_kummer2((double)k, table, ctx, epsk);
            CkRecord c = ck_moebius(k, table, ctx);
            const mpfr_prec_t p = ctx.prec() + 16;
            BigReal kb((long)k, p);
            BoundReport rep;
            rep.k = k;
            rep.lhs = abs(r.value.rounded_to(p) / kb - c.value.rounded_to(p));
            BigReal lk = log(kb);
            rep.rhs_leading = c32 * exp(lk * BigReal(-1.5, 64));
            rep.rhs_full = rep.rhs_leading + c2 * exp(lk * BigReal(-2.0, 64)) +
                           c52 * exp(lk * BigReal(-2.5, 64)) + c3 * exp(lk * BigReal(-3.0, 64));
            rep.holds = rep.lhs <= rep.rhs_full;
            out[(size_t)i] = std::move(rep);
        }
    });
    return out;
}

BigReal alternating_sum(const PrecisionContext& ctx) {
    const mpfr_prec_t p = ctx.prec() + 16;
    const long kmax = (long)p + 8; // 2^-k term floor
    const ZetaEvenTable& zt = even_zeta_table(p, kmax);
    BigReal acc(0L, p), term(p);
    for (long k = 1; k <= kmax; ++k) {
        mpfr_div_2ui(term.raw(), zt.inverse(k).raw(), (unsigned long)k, MPFR_RNDN);
        acc += term;
    }
    return acc.rounded_to(ctx.prec());
}

BigReal abel_integral_check(const PrecisionContext& ctx) {
    const mpfr_prec_t p = ctx.prec() + 16;
    // tail past X: |zeta'/zeta^2| ~ ln2 * 2^-x, so the remainder is ~ 2^-X
    const long X = 2 * (long)std::ceil((double)(ctx.digits() + 4) * 3.3219280948873623 / 2.0);
    BigReal tol0 = pow(BigReal(10L, p), BigReal(-(ctx.digits() + 4), 64));

    auto f = [&](const BigReal& x) {
        auto zd = zeta_and_deriv_real(x, ctx);
        BigReal v = zd.second / (zd.first * zd.first);
        return v.rounded_to(p);
    };

    BigReal total(1L, p);
    BigReal two_pow(1L, p); // 2^-m
    for (long m = 1; 2 * m < X; ++m) {
        mpfr_div_2ui(two_pow.raw(), BigReal(1L, p).raw(), (unsigned long)m, MPFR_RNDN);
        BigReal a(2L * m, p), b(2L * m + 2, p);
        BigReal tol_m = tol0;
        mpfr_div_2ui(tol_m.raw(), tol0.raw(), (unsigned long)m, MPFR_RNDN);
        BigReal seg = integrate(f, a, b, tol_m, p);
        total += (BigReal(1L, p) - two_pow) * seg;
    }
    return total.rounded_to(ctx.prec());
}

PowerSeriesCheck power_series_identity(double s, long kmax, const PrecisionContext& ctx) {
    if (!(s >= -1.0) || !(s < 0.5))
        throw domain_error("power_series_identity: s must lie in [-1, 1/2)");
    if (kmax < 1)
        throw domain_error("power_series_identity: kmax must be >= 1");
    if (kmax > 2000)
        throw resource_error("power_series_identity: kmax capped at 2000");

    const mpfr_prec_t p = ctx.prec() + 32;
    const BigReal sb(s, p);
    const BigReal one(1L, p);

    // rhs: geometric reshuffle 1/(1-s) sum_j t^j f_j with t = -s/(1-s), |t| <= 1/2
    BigReal t = -sb / (one - sb);
    const ZetaEvenTable* zt = &even_zeta_table(p, 64);
    BigReal rhs(0L, p), tp(1L, p), term(p);
    for (long j = 0;; ++j) {
        if (j + 1 >= zt->max_index())
            zt = &even_zeta_table(p, zt->max_index() + 64);
        term = tp * zt->f(j);
        rhs += term;
        if (abs(term) < pow2(-(p + 8), 64) * (abs(rhs) + one))
            break;
        tp *= t;
        if (j > 4 * (long)p)
            throw numeric_error("power_series_identity: geometric side failed to converge");
    }
    rhs /= (one - sb);

    BigReal lhs(0L, p);
    if (s == -1.0) {
        // naive truncation converges like K^-3/4 here; use the closed form
        lhs = alternating_sum(ctx).rounded_to(p);
    } else {
        DiffTable dt(kmax, ctx);
        BigReal sp(1L, p);
        for (long k = 0; k <= kmax; ++k) {
            lhs += dt.ck(k) * sp;
            sp *= sb;
        }
    }

    PowerSeriesCheck out;
    out.lhs = lhs.rounded_to(ctx.prec());
    out.rhs = rhs.rounded_to(ctx.prec());
    out.residual = abs(lhs - rhs).rounded_to(64);
    return out;
}

PartialSums partial_sums(long Kmax, const MobiusTable& table, const PrecisionContext& ctx,
                         int threads) {
    if (Kmax < 0)
        throw domain_error("partial_sums: Kmax must be >= 0");
    if (Kmax > 200000L)
        throw resource_error("partial_sums: Kmax capped at 2e5 at desk scale");
    const long N = mobius_tail_bucket(Kmax + 1, ctx.series_tail_factor());
    if (N > table.limit())
        throw resource_error("partial_sums: needs sieve up to " + std::to_string(N) +
                             " (tail series requires K < N^2)");

    const mpfr_prec_t p = ctx.prec() + 24;
    auto packed = table.packed_upto(N);
    const size_t cnt = packed_count_upto(*packed, N);
    const long imax = 48;
    auto deltas = mobius_tail_deltas(N, imax, p, table);
    const BigReal sstar = alternating_sum(ctx);

    // K-independent pieces: Mertens prefix, sum of mu/(2n^2-1), and the
    // tail constant T1 = sum_t 2^-t delta[t-1]
    const long mert = table.mertens_prefix(N);
    std::vector<BigReal> qs, rs; // q_n = 1-1/n^2, r_n = 1/(2n^2-1)
    qs.reserve(cnt);
    rs.reserve(cnt);
    BigReal a0(0L, p);
    {
        BigReal q(p), r(p), d(p);
        for (size_t i = 0; i < cnt; ++i) {
            const unsigned long nsq = (unsigned long)packed->n[i] * packed->n[i];
            mpfr_set_ui(d.raw(), nsq, MPFR_RNDN); // exact
            mpfr_ui_div(q.raw(), nsq - 1, d.raw(), MPFR_RNDN);
            mpfr_set_ui(d.raw(), 2 * nsq - 1, MPFR_RNDN); // exact
            mpfr_ui_div(r.raw(), 1, d.raw(), MPFR_RNDN);
            qs.push_back(q);
            rs.push_back(r);
            if (packed->sign[i] > 0)
                a0 += r;
            else
                a0 -= r;
        }
    }
    BigReal t1(0L, p);
    {
        BigReal term(p);
        for (long t = 1; t <= imax + 1; ++t) {
            mpfr_div_2ui(term.raw(), (*deltas)[(size_t)t - 1].raw(), (unsigned long)t, MPFR_RNDN);
            t1 += term;
        }
    }

    PartialSums out;
    out.alt_limit = sstar;
    out.trace.resize((size_t)Kmax + 1);

    const long block = 4096;
    const long nblocks = (Kmax / block) + 1;
    parallel_blocks(nblocks, threads, [&](long bi) {
        const long K0 = bi * block;
        const long K1 = std::min(Kmax, K0 + block - 1);
        // pw_n = q_n^{K+1}, restarted here so the trace is partition-independent
        std::vector<BigReal> pw;
        pw.reserve(cnt);
        {
            BigReal t(p);
            for (size_t i = 0; i < cnt; ++i) {
                mpfr_pow_ui(t.raw(), qs[i].raw(), (unsigned long)(K0 + 1), MPFR_RNDN);
                pw.push_back(t);
            }
        }
        BigReal accp(p), acca(p), t(p), tailp(p), taila(p), dterm(p), w(p);
        const BigReal thr = pow2(-(p + 16), 64);
        for (long K = K0; K <= K1; ++K) {
            // prefix sums over n <= N (raw mpfr: this pair of loops is the
            // bulk of the run time)
            mpfr_set_zero(accp.raw(), 1);
            mpfr_set_zero(acca.raw(), 1);
            for (size_t i = 1; i < cnt; ++i) { // n = 1: q = 0 contributes nothing
                mpfr_mul(t.raw(), pw[i].raw(), rs[i].raw(), MPFR_RNDN);
                if (packed->sign[i] > 0) {
                    mpfr_add(accp.raw(), accp.raw(), pw[i].raw(), MPFR_RNDN);
                    mpfr_add(acca.raw(), acca.raw(), t.raw(), MPFR_RNDN);
                } else {
                    mpfr_sub(accp.raw(), accp.raw(), pw[i].raw(), MPFR_RNDN);
                    mpfr_sub(acca.raw(), acca.raw(), t.raw(), MPFR_RNDN);
                }
            }
            // n > N remainder via the delta identities:
            //   plain: sum_{j>=1} (-1)^{j+1} C(K+1,j) delta[j-1]
            //   alt:   T1 - sigma * sum_m w_m delta[m-1],
            //          w_{m+1} = (w_m + (-1)^m C(K+1,m))/2, w_1 = 1/2
            mpfr_set_zero(tailp.raw(), 1);
            mpfr_set_zero(taila.raw(), 1);
            mpfr_set_d(w.raw(), 0.5, MPFR_RNDN);
            mpz_class c(K + 1); // C(K+1, j) at j = 1
            long quiet = 0;
            for (long j = 1; j <= imax + 1; ++j) {
                const mpfr_srcptr dj = (*deltas)[(size_t)j - 1].raw();
                mpfr_mul_z(dterm.raw(), dj, c.get_mpz_t(), MPFR_RNDN);
                if (j & 1)
                    mpfr_add(tailp.raw(), tailp.raw(), dterm.raw(), MPFR_RNDN);
                else
                    mpfr_sub(tailp.raw(), tailp.raw(), dterm.raw(), MPFR_RNDN);
                mpfr_mul(t.raw(), w.raw(), dj, MPFR_RNDN);
                mpfr_add(taila.raw(), taila.raw(), t.raw(), MPFR_RNDN);
                if (abs(dterm) < thr && abs(t) < thr) {
                    if (++quiet >= 2)
                        break;
                } else {
                    quiet = 0;
                }
                // advance w to w_{j+1} (uses C(K+1,j)) and c to C(K+1,j+1)
                if (j & 1)
                    mpfr_sub_z(w.raw(), w.raw(), c.get_mpz_t(), MPFR_RNDN);
                else
                    mpfr_add_z(w.raw(), w.raw(), c.get_mpz_t(), MPFR_RNDN);
                mpfr_div_2ui(w.raw(), w.raw(), 1, MPFR_RNDN);
                c *= (K + 1 - j);
                c /= (j + 1);
            }

            const bool odd = (K & 1) != 0; // sigma = (-1)^{K+1} = +1 iff K odd
            PartialSumTrace& tr = out.trace[(size_t)K];
            tr.K = K;
            BigReal splain = BigReal(mert, p) - accp + tailp;
            BigReal salt = odd ? (a0 - acca + t1 - taila) : (a0 + acca + t1 + taila);
            tr.s_plain = splain.rounded_to(ctx.prec());
            tr.s_alt = salt.rounded_to(ctx.prec());
            tr.distance_plain = abs(splain + 2L).rounded_to(64);
            tr.distance_alt = abs(salt - sstar).rounded_to(64);

            if (K < K1)
                for (size_t i = 1; i < cnt; ++i)
                    pw[i] *= qs[i];
        }
    });

    out.first_crossing = -1;
    for (const PartialSumTrace& tr : out.trace)
        if (tr.s_plain < -2.0) {
            out.first_crossing = tr.K;
            break;
        }
    return out;
}

BigReal approx_identity_33(long k, const PrecisionContext& ctx) {
    if (k < 1)
        throw domain_error("approx_identity_33: k must be >= 1");
    if (k > 2000)
        throw resource_error("approx_identity_33: k capped at 2000 (series precision)");
    RieszSample r = riesz_series((double)k, ctx);
    CkRecord c = ck_binomial(k, ctx);
    const mpfr_prec_t p = std::max(r.value.prec(), c.value.prec());
    BigReal diff = abs(r.value.rounded_to(p) / BigReal(k, p) - c.value.rounded_to(p));
    return diff.rounded_to(ctx.prec());
}

BigReal approx_identity_34(double x, long kmax, const PrecisionContext& ctx) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("approx_identity_34: x must be positive and finite");
    if (kmax < 4)
        throw domain_error("approx_identity_34: kmax must be >= 4");
    if (kmax > 2000)
        throw resource_error("approx_identity_34: kmax capped at 2000");

    const mpfr_prec_t p = ctx.prec() + 64;
    BigReal xb(x, p);
    BigReal q = xb; // x^k / k! at k = 1
    BigReal sum(0L, p);
    for (long k = 1; k <= kmax; ++k) {
        RieszSample rk = riesz_series((double)k, ctx);
        sum += rk.value.rounded_to(p) * q / BigReal(k, 64);
        q *= xb;
        q /= BigReal(k + 1L, 64);
    }
    RieszSample r = riesz_series(x, ctx);
    BigReal ref = exp(xb) * r.value.rounded_to(p) / xb;
    BigReal residual = abs(ref - sum) / (abs(ref) + BigReal("1e-30", p));
    return residual.rounded_to(ctx.prec());
}

BigReal polya_szego_check(double delta, double x, const PrecisionContext& ctx) {
    if (!(delta >= 0.0) || !(delta < 1.5))
        throw domain_error("polya_szego_check: delta must lie in [0, 3/2)");
    if (!(x >= 50.0) || !std::isfinite(x))
        throw domain_error("polya_szego_check: x must be >= 50 (asymptotic regime)");

    const mpfr_prec_t p = ctx.prec() + 32;
    BigReal xb(x, p), db(delta, p);
    BigReal q = xb; // x^k / k!
    BigReal acc(0L, p), term(p);
    const BigReal tol = pow2(-(p + 8), 64);
    for (long k = 1;; ++k) {
        if (delta == 0.0)
            term = q;
        else
            term = q * exp(log(BigReal(k, p)) * -db);
        acc += term;
        if ((double)k > x && term < tol * acc)
            break;
        if (k > 10 * (long)x + 40 * (long)p)
            throw numeric_error("polya_szego_check: series failed to terminate");
        q *= xb;
        q /= BigReal(k + 1L, 64);
    }
    BigReal ratio = acc * exp(log(xb) * db - xb);
    return ratio.rounded_to(ctx.prec());
}

} // namespace rzl
