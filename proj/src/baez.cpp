#include "rzl/baez.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <gmpxx.h>

#include "rzl/parallel.hpp"
#include "rzl/ztail.hpp"

namespace rzl {

const char* ck_method_name(CkMethod m) {
    switch (m) {
    case CkMethod::binomial: return "binomial";
    case CkMethod::moebius: return "moebius";
    case CkMethod::difftable: return "difftable";
    case CkMethod::spectral: return "spectral";
    }
    return "?";
}

long ck_rule_digits(long k, const PrecisionContext& ctx) {
    const double lg = std::log10((double)std::max(k, 2L));
    return std::max(ctx.digits(), (long)std::ceil((double)k * lg) + 30);
}

namespace {

// c_k at an explicit digit count; the public entry points wrap it.
// W = prec + k + 8 extra bits make every product and subtraction exact:
// the f_j lie in (1/2, 2] with lsb >= 2^-prec, binomial weights add <= k+1
// bits, so partial sums stay below 2^{k+2} with lsb unchanged.
BigReal ck_binomial_raw(long k, long digits) {
    const mpfr_prec_t p = bits_for_digits(digits);
    const mpfr_prec_t w = p + (mpfr_prec_t)k + 8;
    const ZetaEvenTable& zt = even_zeta_table(p, k + 1);
    BigReal acc(0L, w), term(w);
    mpz_class c(1); // C(k, j)
    for (long j = 0; j <= k; ++j) {
        mpfr_mul_z(term.raw(), zt.f(j).raw(), c.get_mpz_t(), MPFR_RNDN); // exact at w
        if (j & 1)
            acc -= term;
        else
            acc += term;
        if (j < k) {
            c *= (k - j);
            c /= (j + 1);
        }
    }
    return acc.rounded_to(p); // the single rounding in the whole computation
}

} // namespace

CkRecord ck_binomial(long k, const PrecisionContext& ctx) {
    if (k < 0)
        throw domain_error("ck_binomial: k must be >= 0");
    if (k > 2000)
        throw resource_error("ck_binomial: k > 2000 needs ~k log10 k digits; use the moebius form");
    const long digits = ck_rule_digits(k, ctx);
    CkRecord out;
    out.k = k;
    out.method = CkMethod::binomial;
    out.precision_digits = digits;
    out.value = ck_binomial_raw(k, digits);
    // empirical error: rerun 20 digits deeper; the dyadic argument above says
    // the only error source is the rounding of the stored f_j
    BigReal deeper = ck_binomial_raw(k, digits + 20);
    out.err_estimate = (abs(out.value - deeper) + abs(out.value) * pow2(1 - out.value.prec(), 64))
                           .rounded_to(64);
    return out;
}

CkRecord ck_moebius(long k, const MobiusTable& table, const PrecisionContext& ctx) {
    if (k < 0)
        throw domain_error("ck_moebius: k must be >= 0");
    const long N = mobius_tail_bucket(k, ctx.series_tail_factor());
    if (N > table.limit())
        throw domain_error("ck_moebius: k = " + std::to_string(k) + " needs sieve up to " +
                           std::to_string(N) + " but limit is " + std::to_string(table.limit()));
    const mpfr_prec_t p = ctx.prec() + 24;

    auto packed = table.packed_upto(N);
    const size_t cnt = packed_count_upto(*packed, N);
    BigReal main(0L, p), q(p), t(p);
    for (size_t i = 1; i < cnt; ++i) { // n = 1 has q = 0
        const unsigned long n = packed->n[i];
        const unsigned long nsq = n * n;
        mpfr_set_ui(q.raw(), nsq - 1, MPFR_RNDN); // exact
        mpfr_div_ui(q.raw(), q.raw(), nsq, MPFR_RNDN); // 1 - 1/n^2, one rounding
        mpfr_pow_ui(t.raw(), q.raw(), (unsigned long)k, MPFR_RNDN);
        mpfr_div_ui(t.raw(), t.raw(), nsq, MPFR_RNDN);
        if (packed->sign[i] > 0)
            main += t;
        else
            main -= t;
    }
    if (k == 0)
        main += 1L; // n = 1 term (1 - 1/1)^0 = 1

    // exact n > N remainder: binomial-expand (1-1/n^2)^k and fold each power
    // onto delta[j] = sum_{n>N} mu(n) n^{-(2j+2)}
    const long imax = 48;
    auto deltas = mobius_tail_deltas(N, imax, p, table);
    BigReal tail(0L, p), dterm(p);
    const BigReal thr = pow2(-(p + 24), 64) * (abs(main) + BigReal(1L, 64));
    mpz_class c(1);
    long small_streak = 0;
    bool converged = false;
    for (long j = 0; j < (long)deltas->size(); ++j) {
        mpfr_mul_z(dterm.raw(), (*deltas)[(size_t)j].raw(), c.get_mpz_t(), MPFR_RNDN);
        if (j & 1)
            tail -= dterm;
        else
            tail += dterm;
        if (abs(dterm) < thr) {
            if (++small_streak >= 2) {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
        if (j < k) {
            c *= (k - j);
            c /= (j + 1);
        } else {
            converged = true; // C(k,j) = 0 beyond j = k
            break;
        }
    }
    if (!converged)
        throw numeric_error("ck_moebius: tail series did not converge (k too large for bucket)");

    CkRecord out;
    out.k = k;
    out.method = CkMethod::moebius;
    out.precision_digits = ctx.digits();
    out.value = (main + tail).rounded_to(ctx.prec());
    out.err_estimate =
        (abs(dterm) + abs(out.value) * pow2(2 - ctx.prec(), 64) + pow2(-(p - 8), 64))
            .rounded_to(64);
    return out;
}

DiffTable::DiffTable(long kmax, const PrecisionContext& ctx) : kmax_(kmax) {
    if (kmax < 0)
        throw domain_error("ck_difftable: kmax must be >= 0");
    if (kmax > 2000)
        throw resource_error("ck_difftable: kmax > 2000 needs ~k log10 k digits; use the moebius form");
    digits_ = ck_rule_digits(kmax, ctx);
    prec_ = bits_for_digits(digits_);
    const mpfr_prec_t w = prec_ + (mpfr_prec_t)kmax + 8;
    const ZetaEvenTable& zt = even_zeta_table(prec_, kmax + 1);

    base_.reserve((size_t)kmax + 1);
    for (long l = 0; l <= kmax; ++l)
        base_.push_back(zt.f(l));

    // rolling row at the exact-dyadic width; row[l] after pass k holds f_l^(k)
    std::vector<BigReal> row;
    row.reserve(base_.size());
    for (const BigReal& b : base_)
        row.push_back(b.rounded_to(w)); // exact widening
    ck_.reserve(base_.size());
    ck_.push_back(row[0].rounded_to(prec_));
    for (long k = 1; k <= kmax; ++k) {
        for (long l = 0; l <= kmax - k; ++l)
            row[(size_t)l] -= row[(size_t)l + 1]; // exact: reads original row[l+1]
        ck_.push_back(row[0].rounded_to(prec_));
    }
}

const BigReal& DiffTable::base(long l) const {
    if (l < 0 || l > kmax_)
        throw domain_error("DiffTable::base: index out of range");
    return base_[(size_t)l];
}

const BigReal& DiffTable::ck(long k) const {
    if (k < 0 || k > kmax_)
        throw domain_error("DiffTable::ck: k out of range");
    return ck_[(size_t)k];
}

BigReal DiffTable::diff(long l, long k) const {
    if (l < 0 || k < 0 || l + k > kmax_)
        throw domain_error("DiffTable::diff: needs l + k <= kmax");
    const mpfr_prec_t w = prec_ + (mpfr_prec_t)kmax_ + 8;
    BigReal acc(0L, w), term(w);
    mpz_class c(1);
    for (long i = 0; i <= k; ++i) {
        mpfr_mul_z(term.raw(), base_[(size_t)(l + i)].raw(), c.get_mpz_t(), MPFR_RNDN);
        if (i & 1)
            acc -= term;
        else
            acc += term;
        if (i < k) {
            c *= (k - i);
            c /= (i + 1);
        }
    }
    return acc.rounded_to(prec_);
}

CkRecord DiffTable::record(long k) const {
    CkRecord out;
    out.k = k;
    out.method = CkMethod::difftable;
    out.precision_digits = digits_;
    out.value = ck(k);
    // exact arithmetic on f_j rounded at prec_: worst case sum C(k,j) ulp(f_j)
    out.err_estimate = pow2((mpfr_prec_t)k + 2 - prec_, 64);
    return out;
}

DiffTable ck_difftable(long kmax, const PrecisionContext& ctx) { return DiffTable(kmax, ctx); }

CkRecord ck_spectral(long k, const std::vector<ZeroCoefficient>& coeffs) {
    if (k < 100)
        throw domain_error("ck_spectral: asymptotic model needs k >= 100");
    if (coeffs.empty())
        throw domain_error("ck_spectral: empty coefficient table");
    const mpfr_prec_t p = coeffs[0].gamma.prec();
    const BigReal lnk = log(BigReal(k, p));
    BigReal acc(0L, p), theta(p), c(p), s(p);
    for (const ZeroCoefficient& zc : coeffs) {
        theta = zc.gamma * lnk;
        theta /= BigReal(2L, 64);
        mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
        acc += zc.a * c - zc.b * s;
    }
    BigReal scale = exp(lnk * BigReal(-0.75, 64));
    CkRecord out;
    out.k = k - 1; // the model approximates c_{k-1}
    out.method = CkMethod::spectral;
    out.precision_digits = (long)((double)p / 3.3219280948873623);
    out.value = scale * acc;
    out.err_estimate = BigReal(64); // NaN: no rigorous bound for a model
    return out;
}

namespace {

std::vector<CkRecord> ck_sweep_moebius(long kmax, long stride, const MobiusTable& table,
                                       const PrecisionContext& ctx, int threads) {
    const long N = mobius_tail_bucket(kmax, ctx.series_tail_factor());
    if (N > table.limit())
        throw domain_error("ck_sweep: kmax = " + std::to_string(kmax) + " needs sieve up to " +
                           std::to_string(N) + " but limit is " + std::to_string(table.limit()));
    const mpfr_prec_t p = ctx.prec() + 24;
    auto packed = table.packed_upto(N);
    const size_t cnt = packed_count_upto(*packed, N);
    const long imax = 48;
    auto deltas = mobius_tail_deltas(N, imax, p, table);

    const long npts = kmax / stride + 1;
    std::vector<CkRecord> out((size_t)npts);

    // per-n stride multiplier (1 - 1/n^2)^stride, shared by all blocks
    std::vector<BigReal> qstep;
    qstep.reserve(cnt);
    {
        BigReal q(p), qs(p);
        for (size_t i = 0; i < cnt; ++i) {
            const unsigned long nsq = (unsigned long)packed->n[i] * packed->n[i];
            mpfr_set_ui(q.raw(), nsq - 1, MPFR_RNDN);
            mpfr_div_ui(q.raw(), q.raw(), nsq, MPFR_RNDN);
            mpfr_pow_ui(qs.raw(), q.raw(), (unsigned long)stride, MPFR_RNDN);
            qstep.push_back(qs);
        }
    }

    const long block = 64; // grid points per block; power restart at block head
    const long nblocks = (npts + block - 1) / block;
    parallel_blocks(nblocks, threads, [&](long b) {
        const long i0 = b * block, i1 = std::min(npts, i0 + block);
        // restart the incremental powers from scratch at the block head
        std::vector<BigReal> pw;
        pw.reserve(cnt);
        {
            const unsigned long k0 = (unsigned long)(i0 * stride);
            BigReal q(p), t(p);
            for (size_t i = 0; i < cnt; ++i) {
                const unsigned long nsq = (unsigned long)packed->n[i] * packed->n[i];
                mpfr_set_ui(q.raw(), nsq - 1, MPFR_RNDN);
                mpfr_div_ui(q.raw(), q.raw(), nsq, MPFR_RNDN);
                mpfr_pow_ui(t.raw(), q.raw(), k0, MPFR_RNDN);
                pw.push_back(t);
            }
        }
        BigReal main(p), t(p), tail(p), dterm(p);
        for (long i = i0; i < i1; ++i) {
            const long k = i * stride;
            mpfr_set_zero(main.raw(), 1);
            for (size_t idx = 1; idx < cnt; ++idx) {
                const unsigned long nsq = (unsigned long)packed->n[idx] * packed->n[idx];
                mpfr_div_ui(t.raw(), pw[idx].raw(), nsq, MPFR_RNDN);
                if (packed->sign[idx] > 0)
                    main += t;
                else
                    main -= t;
            }
            if (k == 0)
                main += 1L;

            mpfr_set_zero(tail.raw(), 1);
            mpz_class c(1);
            const BigReal thr = pow2(-(p + 24), 64) * (abs(main) + BigReal(1L, 64));
            long small_streak = 0;
            for (long j = 0; j < (long)deltas->size(); ++j) {
                mpfr_mul_z(dterm.raw(), (*deltas)[(size_t)j].raw(), c.get_mpz_t(), MPFR_RNDN);
                if (j & 1)
                    tail -= dterm;
                else
                    tail += dterm;
                if (abs(dterm) < thr) {
                    if (++small_streak >= 2)
                        break;
                } else {
                    small_streak = 0;
                }
                if (j < k) {
                    c *= (k - j);
                    c /= (j + 1);
                } else {
                    break;
                }
            }

            CkRecord& rec = out[(size_t)i];
            rec.k = k;
            rec.method = CkMethod::moebius;
            rec.precision_digits = ctx.digits();
            rec.value = (main + tail).rounded_to(ctx.prec());
            rec.err_estimate =
                (abs(dterm) + abs(rec.value) * pow2(2 - ctx.prec(), 64) + pow2(-(p - 8), 64))
                    .rounded_to(64);

            if (i + 1 < i1)
                for (size_t idx = 1; idx < cnt; ++idx)
                    pw[idx] *= qstep[idx];
        }
    });
    return out;
}

} // namespace

std::vector<CkRecord> ck_sweep(long kmax, CkMethod method, long stride, const MobiusTable& table,
                               const PrecisionContext& ctx, int threads) {
    if (kmax < 0)
        throw domain_error("ck_sweep: kmax must be >= 0");
    if (stride < 1)
        throw domain_error("ck_sweep: stride must be >= 1");
    switch (method) {
    case CkMethod::moebius:
        return ck_sweep_moebius(kmax, stride, table, ctx, threads);
    case CkMethod::binomial: {
        if (kmax > 2000)
            throw resource_error("ck_sweep: binomial engine capped at kmax = 2000; use moebius");
        // serial: per-k precision varies, and concurrent growth of the shared
        // zeta tables would invalidate references other workers hold
        std::vector<CkRecord> out;
        out.reserve((size_t)(kmax / stride + 1));
        for (long k = 0; k <= kmax; k += stride)
            out.push_back(ck_binomial(k, ctx));
        return out;
    }
    case CkMethod::difftable: {
        DiffTable dt = ck_difftable(kmax, ctx);
        std::vector<CkRecord> out;
        out.reserve((size_t)(kmax / stride + 1));
        for (long k = 0; k <= kmax; k += stride)
            out.push_back(dt.record(k));
        return out;
    }
    case CkMethod::spectral:
        throw domain_error("ck_sweep: spectral needs a coefficient table; use ck_spectral per k");
    }
    throw domain_error("ck_sweep: unknown method");
}

} // namespace rzl
