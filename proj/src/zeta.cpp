#include "rzl/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

namespace rzl {

// ---------------------------------------------------------------- even table

ZetaEvenTable::ZetaEvenTable(mpfr_prec_t prec, long max_index) : prec_(prec) {
    bernoulli_cutoff_ = std::max(32L, (long)(prec / 12));
    if (max_index < 1) max_index = 1;
    build(1, max_index);
}

void ZetaEvenTable::extend(long max_index) {
    if (max_index <= (long)values_.size()) return;
    build((long)values_.size() + 1, max_index);
}

const BigReal& ZetaEvenTable::value(long k) const {
    if (k < 1 || k > (long)values_.size()) throw domain_error("ZetaEvenTable: index out of range");
    return values_[(size_t)k - 1];
}

const BigReal& ZetaEvenTable::inverse(long k) const {
    if (k < 1 || k > (long)inverses_.size()) throw domain_error("ZetaEvenTable: index out of range");
    return inverses_[(size_t)k - 1];
}

void ZetaEvenTable::build(long from_k, long to_k) {
    values_.reserve((size_t)to_k);
    inverses_.reserve((size_t)to_k);
    mpfr_prec_t p = prec_;

    long kb = std::min(to_k, bernoulli_cutoff_);
    if (from_k <= kb) {
        // closed form, with (2 pi)^{2k} and (2k)! carried incrementally
        BigReal two_pi_sq = const_pi(p) * 2L;
        two_pi_sq *= two_pi_sq;
        BigReal tp = pow(two_pi_sq, (unsigned long)from_k);
        mpz_class fact = factorial_z(2 * (unsigned long)from_k);
        for (long k = from_k; k <= kb; ++k) {
            mpq_class b = bernoulli_q(2 * k); // sign (-1)^{k+1} makes it positive
            BigReal v(p);
            mpfr_set_q(v.raw(), b.get_mpq_t(), MPFR_RNDN);
            mpfr_abs(v.raw(), v.raw(), MPFR_RNDN);
            v *= tp;
            BigReal den(p);
            mpfr_set_z(den.raw(), fact.get_mpz_t(), MPFR_RNDN);
            v /= den * 2L;
            values_.push_back(v);
            inverses_.push_back(1L / v);
            if (k < kb) {
                tp *= two_pi_sq;
                fact *= (2 * k + 1) * (2 * k + 2);
            }
        }
    }

    long k0 = std::max(from_k, kb + 1);
    if (k0 > to_k) return;

    // direct sums: keep n^{-2k} per n, multiply by n^{-2} at each k step,
    // dropping n once its contribution falls below the last bit
    long nmax = (long)std::pow(2.0, (double)(p + 8) / (2.0 * k0)) + 1;
    nmax = std::max(nmax, 2L);
    std::vector<BigReal> pw;   // n^{-2k} for n = 2..nmax
    std::vector<BigReal> step; // n^{-2}
    for (long n = 2; n <= nmax; ++n) {
        BigReal inv_n2 = 1L / (BigReal((long)n, p) * (long)n);
        step.push_back(inv_n2);
        pw.push_back(pow(inv_n2, (unsigned long)k0));
    }
    size_t active = pw.size();
    for (long k = k0; k <= to_k; ++k) {
        BigReal acc(0L, p);
        for (size_t i = active; i-- > 0;) acc += pw[i]; // small-to-large
        BigReal v = acc + 1L;
        values_.push_back(v);
        inverses_.push_back(1L / v);
        while (active > 0 && mpfr_get_exp(pw[active - 1].raw()) < -(long)(p + 8)) --active;
        if (k < to_k)
            for (size_t i = 0; i < active; ++i) pw[i] *= step[i];
    }
}

const ZetaEvenTable& even_zeta_table(mpfr_prec_t prec, long max_index) {
    static std::mutex mu;
    static std::map<mpfr_prec_t, std::unique_ptr<ZetaEvenTable>> tables;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = tables[prec];
    if (!slot)
        slot = std::make_unique<ZetaEvenTable>(prec, max_index);
    else
        slot->extend(max_index);
    return *slot;
}

BigReal zeta_even(long k, const PrecisionContext& ctx) {
    if (k < 0) throw domain_error("zeta_even: negative index");
    if (k == 0) return BigReal(-0.5, ctx.prec());
    if (k > 10000) throw resource_error("zeta_even: index capped at 10^4");
    return even_zeta_table(ctx.prec(), k).value(k);
}

// ------------------------------------------------------- Euler-Maclaurin core

namespace {

// cached ln n at (at least) the requested precision
const BigReal& cached_ln(long n, mpfr_prec_t p) {
    static std::mutex mu;
    static std::map<mpfr_prec_t, std::deque<BigReal>> cache;
    std::lock_guard<std::mutex> lk(mu);
    // round precision up to a bucket so different ctx sizes share entries
    mpfr_prec_t bucket = ((p + 255) / 256) * 256;
    auto& v = cache[bucket];
    while ((long)v.size() < n) {
        BigReal l((long)(v.size() + 1), bucket);
        mpfr_log(l.raw(), l.raw(), MPFR_RNDN);
        v.push_back(std::move(l));
    }
    return v[(size_t)n - 1];
}

// B_{2j}/(2j)! rounded to p bits
BigReal em_coef(long j, mpfr_prec_t p) {
    mpq_class c = bernoulli_q(2 * j);
    mpz_class f = factorial_z(2 * (unsigned long)j);
    c /= mpq_class(f);
    BigReal r(p);
    mpfr_set_q(r.raw(), c.get_mpq_t(), MPFR_RNDN);
    return r;
}

// Euler-Maclaurin for zeta(s) and optionally zeta'(s), complex s.
// zeta(s) = sum_{n<=M} n^{-s} + M^{1-s}/(s-1) - M^{-s}/2
//           + sum_j B_{2j}/(2j)! (s)_{2j-1} M^{-s-2j+1},
// error ~ first omitted correction term.
struct EmOut {
    BigComplex z, dz;
};

EmOut zeta_em(const BigComplex& s, mpfr_prec_t p, bool want_deriv) {
    double im = std::fabs(s.im.to_double());
    long M = std::max<long>(24, (long)(0.33 * (double)p + 0.75 * im + 12));
    BigComplex acc(BigReal(0L, p), BigReal(0L, p));
    BigComplex dacc(BigReal(0L, p), BigReal(0L, p));
    for (long n = M; n >= 1; --n) { // small terms first
        const BigReal& ln_n = cached_ln(n, p);
        BigComplex t = pow_int_neg(ln_n, s);
        acc = acc + t;
        if (want_deriv) dacc = dacc - t * ln_n;
    }
    const BigReal& lnM = cached_ln(M, p);
    BigComplex Mms = pow_int_neg(lnM, s);                       // M^{-s}
    BigComplex sm1 = s - 1L;
    BigComplex Mp = Mms * BigReal((long)M, p);                  // M^{1-s}
    BigComplex integral = Mp / sm1;
    acc = acc + integral - Mms * BigReal(0.5, p);
    if (want_deriv) {
        dacc = dacc - integral * lnM - integral / sm1 + Mms * (lnM * 0.5);
    }

    // correction terms
    BigReal Minv2 = BigReal(1L, p) / (BigReal((long)M, p) * (long)M);
    BigComplex poch = s;                                        // (s)_1
    BigComplex hsum = BigComplex(BigReal(1L, p)) / s;           // d/ds log poch
    BigComplex mpow = Mms * (Minv2 * (long)M);                  // M^{-s-1}
    long Jcap = 3 * M;
    double prev = 1e300;
    for (long j = 1; j <= Jcap; ++j) {
        BigReal c = em_coef(j, p);
        BigComplex term = poch * mpow * c;
        BigReal mag = abs(term);
        long mag_exp = mpfr_zero_p(mag.raw()) ? -(long)p - 64 : mpfr_get_exp(mag.raw());
        double magd = mag.to_double();
        if (magd > prev) break; // asymptotic tail turned around
        acc = acc + term;
        if (want_deriv) dacc = dacc + term * (hsum - BigComplex(BigReal(lnM)));
        if (mag_exp < -(long)p - 8) break;
        prev = magd;
        // (s)_{2j+1} = (s)_{2j-1} (s+2j-1)(s+2j)
        BigComplex f1 = s + (2 * j - 1), f2 = s + (2 * j);
        poch = poch * f1 * f2;
        hsum = hsum + BigComplex(BigReal(1L, p)) / f1 + BigComplex(BigReal(1L, p)) / f2;
        mpow = mpow * Minv2;
    }
    return {acc, dacc};
}

void check_complex_domain(const BigComplex& s) {
    if (mpfr_zero_p(s.im.raw()) && s.re == BigReal(1L, 64))
        throw domain_error("zeta: pole at s = 1");
    if (s.re <= 0.0) throw domain_error("zeta: Re(s) must be positive");
    if (abs(s.im) > 1000.0) throw domain_error("zeta: |Im(s)| capped at 1000");
}

} // namespace

std::pair<BigReal, BigReal> zeta_and_deriv_real(const BigReal& s, const PrecisionContext& ctx) {
    if (s < 1.5) throw domain_error("zeta_real: s must be >= 1.5");
    mpfr_prec_t p = ctx.prec() + 16;
    EmOut out = zeta_em(BigComplex(s.rounded_to(p)), p, true);
    return {out.z.re.rounded_to(ctx.prec()), out.dz.re.rounded_to(ctx.prec())};
}

BigReal zeta_real(const BigReal& s, const PrecisionContext& ctx) {
    if (s < 1.5) throw domain_error("zeta_real: s must be >= 1.5");
    mpfr_prec_t p = ctx.prec() + 16;
    return zeta_em(BigComplex(s.rounded_to(p)), p, false).z.re.rounded_to(ctx.prec());
}

BigReal zeta_deriv_real(const BigReal& s, const PrecisionContext& ctx) {
    return zeta_and_deriv_real(s, ctx).second;
}

BigComplex zeta_complex(const BigComplex& s, const PrecisionContext& ctx) {
    check_complex_domain(s);
    mpfr_prec_t p = ctx.prec() + 16;
    BigComplex sp{s.re.rounded_to(p), s.im.rounded_to(p)};
    EmOut out = zeta_em(sp, p, false);
    return {out.z.re.rounded_to(ctx.prec()), out.z.im.rounded_to(ctx.prec())};
}

BigComplex zeta_deriv_complex(const BigComplex& s, const PrecisionContext& ctx) {
    check_complex_domain(s);
    mpfr_prec_t p = ctx.prec() + 16;
    BigComplex sp{s.re.rounded_to(p), s.im.rounded_to(p)};
    EmOut out = zeta_em(sp, p, true);
    return {out.dz.re.rounded_to(ctx.prec()), out.dz.im.rounded_to(ctx.prec())};
}

DirichletInv inv_zeta_dirichlet(const BigReal& s, long N, const MobiusTable& table,
                                const PrecisionContext& ctx) {
    if (s < 2.0) throw domain_error("inv_zeta_dirichlet: s must be >= 2");
    if (N < 1) throw domain_error("inv_zeta_dirichlet: N must be >= 1");
    if (N > table.limit())
        throw domain_error("inv_zeta_dirichlet: table limit " + std::to_string(table.limit()) +
                           " < requested N " + std::to_string(N));
    mpfr_prec_t p = ctx.prec() + 16;
    BigReal srounded = s.rounded_to(p);
    BigReal neg_s = -srounded;
    auto packed = table.packed_upto(N);
    const size_t cnt = packed_count_upto(*packed, N);
    BigReal acc(0L, p), t(p);
    for (size_t i = cnt; i-- > 1;) { // n = 1 handled after
        long n = packed->n[i];
        t = exp(neg_s * log(BigReal(n, p)));
        if (packed->sign[i] > 0)
            acc += t;
        else
            acc -= t;
    }
    acc += 1L; // mu(1) = 1
    BigReal sm1 = srounded - 1L;
    BigReal tail = pow(BigReal((long)N, p), BigReal(1L, p) - srounded) / sm1;
    return {acc.rounded_to(ctx.prec()), tail.rounded_to(ctx.prec()), (long)cnt};
}

} // namespace rzl
