#pragma once

#include "rzl/bigreal.hpp"

namespace rzl {

// Complex scalar as a pair of BigReal.  Only the operations the zeta/gamma
// evaluators need; not a general complex library.
struct BigComplex {
    BigReal re, im;

    BigComplex() = default;
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
    explicit BigComplex(const BigReal& r) : re(r), im(0L, r.prec()) {}

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    bool is_real() const { return mpfr_zero_p(im.raw()); }

    BigComplex conj() const { return {re, -im}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigReal& b) {
        return {a.re * b, a.im * b};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend BigComplex operator/(const BigComplex& a, const BigReal& b) {
        return {a.re / b, a.im / b};
    }
    BigComplex operator-() const { return {-re, -im}; }
    friend BigComplex operator+(const BigComplex& a, long b) { return {a.re + b, a.im}; }
    friend BigComplex operator-(const BigComplex& a, long b) { return {a.re - b, a.im}; }
    friend BigComplex operator-(long a, const BigComplex& b) { return {a - b.re, -b.im}; }
};

inline BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }
inline BigReal arg(const BigComplex& z) { return atan2(z.im, z.re); }

inline BigComplex exp(const BigComplex& z) {
    mpfr_prec_t p = z.prec();
    BigReal m = exp(z.re);
    BigReal c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
    return {m * c, m * s};
}

// Principal branch.
inline BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

inline BigComplex sin(const BigComplex& z) {
    mpfr_prec_t p = z.prec();
    BigReal sr(p), cr(p);
    mpfr_sin_cos(sr.raw(), cr.raw(), z.re.raw(), MPFR_RNDN);
    BigReal shi(p), chi(p);
    mpfr_sinh_cosh(shi.raw(), chi.raw(), z.im.raw(), MPFR_RNDN);
    return {sr * chi, cr * shi};
}

// z^w = exp(w log z), principal branch.
inline BigComplex pow(const BigComplex& z, const BigComplex& w) { return exp(w * log(z)); }

// n^{-s} for integer n >= 1 with a precomputed ln n; the zeta loops live on this.
inline BigComplex pow_int_neg(const BigReal& ln_n, const BigComplex& s) {
    mpfr_prec_t p = s.prec() > ln_n.prec() ? s.prec() : ln_n.prec();
    BigReal m(p), c(p), sn(p), t(p);
    mpfr_mul(t.raw(), s.re.raw(), ln_n.raw(), MPFR_RNDN);
    mpfr_neg(t.raw(), t.raw(), MPFR_RNDN);
    mpfr_exp(m.raw(), t.raw(), MPFR_RNDN); // n^{-Re s}
    mpfr_mul(t.raw(), s.im.raw(), ln_n.raw(), MPFR_RNDN);
    mpfr_sin_cos(sn.raw(), c.raw(), t.raw(), MPFR_RNDN);
    return {m * c, -(m * sn)};
}

} // namespace rzl
