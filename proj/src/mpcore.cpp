#include "rzl/mpcore.hpp"

#include <mutex>
#include <vector>

namespace rzl {

mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binomial_z(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {

// Tangent numbers T_1=1, T_2=2, T_3=16, ... via the integer triangle.
// Integer-only until the final division in bernoulli_q, which keeps
// n ~ thousands practical (the rational recurrence would crawl).
class TangentCache {
  public:
    // returns T_n, 1-indexed
    mpz_class get(size_t n) {
        std::lock_guard<std::mutex> lk(mu_);
        if (t_.size() < n) rebuild(n + n / 4 + 4); // headroom: growth is rare
        return t_[n - 1];
    }

  private:
    void rebuild(size_t n) {
        t_.assign(n, mpz_class(1));
        for (size_t k = 1; k < n; ++k) t_[k] = t_[k - 1] * (unsigned long)k;
        for (size_t k = 1; k < n; ++k)
            for (size_t j = k; j < n; ++j)
                t_[j] = t_[j - 1] * (unsigned long)(j - k) +
                        t_[j] * (unsigned long)(j - k + 2);
    }
    std::mutex mu_;
    std::vector<mpz_class> t_;
};

TangentCache g_tangent;

} // namespace

mpq_class bernoulli_q(long n) {
    if (n == 0) return mpq_class(1);
    if (n == 1) return mpq_class(-1, 2);
    // From tan x = sum T_m x^{2m-1}/(2m-1)! and the classical tan/Bernoulli
    // relation:  B_{2m} = (-1)^{m-1} * 2m * T_m / (4^m (4^m - 1)).
    long m = n / 2;
    mpz_class tn = g_tangent.get((size_t)m);
    mpz_class four_m;
    mpz_ui_pow_ui(four_m.get_mpz_t(), 4, (unsigned long)m);
    mpq_class b(tn * (2 * m), four_m * (four_m - 1));
    if (m % 2 == 0) b = -b;
    b.canonicalize();
    return b;
}

BigReal bernoulli(long n, const PrecisionContext& ctx) {
    if (n < 0) throw domain_error("bernoulli: n must be nonnegative");
    if (n > 10000) throw resource_error("bernoulli: n capped at 10^4");
    if (n % 2 == 1 && n != 1) throw domain_error("bernoulli: odd n > 1 not supported");
    mpq_class b = bernoulli_q(n);
    BigReal r(ctx.prec());
    mpfr_set_q(r.raw(), b.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigReal gamma(const BigReal& x, const PrecisionContext& ctx) {
    if (mpfr_integer_p(x.raw()) && x <= 0.0)
        throw domain_error("gamma: pole at nonpositive integer");
    BigReal in = x.rounded_to(ctx.prec());
    BigReal r(ctx.prec());
    mpfr_gamma(r.raw(), in.raw(), MPFR_RNDN);
    return r;
}

namespace {

// ln Gamma(w) by the Stirling asymptotic series; requires Re(w) large enough
// for the requested precision (caller shifts first).
BigComplex log_gamma_stirling(const BigComplex& w, mpfr_prec_t p) {
    BigComplex lw = log(w);
    BigComplex acc = (w - BigComplex(BigReal(0.5, p))) * lw - w;
    BigReal ln2pi = log(const_pi(p) * 2L);
    acc.re += ln2pi / 2L;

    BigComplex w2inv = BigComplex(BigReal(1L, p)) / (w * w);
    BigComplex wpow = BigComplex(BigReal(1L, p)) / w; // w^{-(2j-1)}
    BigReal prev_mag(p);
    mpfr_set_inf(prev_mag.raw(), 1);
    PrecisionContext bctx(15 + (long)(p / 3.2), 10);
    for (long j = 1; j <= 4 * (long)p; ++j) {
        BigReal coef = bernoulli(2 * j, bctx) / (long)(2 * j * (2 * j - 1));
        BigComplex term = wpow * coef;
        BigReal mag = abs(term);
        if (mag > prev_mag) break; // asymptotic series turned; remainder ~ last kept term
        acc = acc + term;
        if (mpfr_get_exp(mag.raw()) < -(long)p - 8) break;
        prev_mag = mag;
        wpow = wpow * w2inv;
    }
    return acc;
}

BigComplex gamma_strip(const BigComplex& z, mpfr_prec_t p) {
    // Shift until Re(w) is comfortably inside the Stirling regime.
    double need = ((double)p + 16.0) / 9.0 + 4.0;
    double re = z.re.to_double();
    long m = re < need ? (long)(need - re) + 1 : 0;
    BigComplex w = z + m;
    BigComplex lg = log_gamma_stirling(w, p);
    BigComplex g = exp(lg);
    // downshift: Gamma(z) = Gamma(z+m) / (z (z+1) ... (z+m-1))
    BigComplex prod = BigComplex(BigReal(1L, p));
    for (long i = 0; i < m; ++i) prod = prod * (z + i);
    return g / prod;
}

} // namespace

BigComplex gamma(const BigComplex& z, const PrecisionContext& ctx) {
    if (z.is_real()) return BigComplex(gamma(z.re, ctx));
    mpfr_prec_t p = ctx.prec() + 32;
    BigComplex zz{z.re.rounded_to(p), z.im.rounded_to(p)};
    BigComplex g(BigReal(0L, p), BigReal(0L, p));
    if (zz.re < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        BigReal pi = const_pi(p);
        BigComplex s = sin(BigComplex(zz.re * pi, zz.im * pi));
        g = BigComplex(BigReal(pi)) / (s * gamma_strip(1L - zz, p));
    } else {
        g = gamma_strip(zz, p);
    }
    return {g.re.rounded_to(ctx.prec()), g.im.rounded_to(ctx.prec())};
}

std::pair<BigReal, BigReal> stirling_factorial_bounds(long k, const PrecisionContext& ctx) {
    if (k < 1) throw domain_error("stirling_factorial_bounds: k must be >= 1");
    mpfr_prec_t p = ctx.prec() + 16;
    BigReal kk((long)k, p);
    BigReal base = sqrt(const_pi(p) * 2L * kk) * pow(kk, (unsigned long)k);
    BigReal lo = base * exp(BigReal(1L, p) / (12L * k + 1L) - kk);
    BigReal hi = base * exp(BigReal(1L, p) / (12L * k) - kk);
    return {lo.rounded_to(ctx.prec()), hi.rounded_to(ctx.prec())};
}

} // namespace rzl
