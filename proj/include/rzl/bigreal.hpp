#pragma once

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>

namespace rzl {

// Arbitrary-precision real number backed by MPFR.  Every value carries its
// own precision; binary operations round to the *wider* of the two operand
// precisions, always with round-to-nearest.  Arithmetic is therefore a pure
// function of the operand bit patterns, which is what makes the sweep
// determinism guarantees possible.
class BigReal {
  public:
    BigReal() { mpfr_init2(v_, 64); mpfr_set_nan(v_); }

    explicit BigReal(mpfr_prec_t prec) {
        mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
        mpfr_set_nan(v_);
    }
    BigReal(double x, mpfr_prec_t prec) : BigReal(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    BigReal(long x, mpfr_prec_t prec) : BigReal(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    BigReal(unsigned long x, mpfr_prec_t prec) : BigReal(prec) { mpfr_set_ui(v_, x, MPFR_RNDN); }
    BigReal(int x, mpfr_prec_t prec) : BigReal((long)x, prec) {}
    // Parses a decimal string; caller picks the precision.
    BigReal(const char* s, mpfr_prec_t prec) : BigReal(prec) { mpfr_set_str(v_, s, 10, MPFR_RNDN); }
    BigReal(const std::string& s, mpfr_prec_t prec) : BigReal(s.c_str(), prec) {}

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, MPFR_PREC_MIN);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) {
            mpfr_swap(v_, o.v_);
        }
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    // Re-rounds to a new precision (used when handing results back at the
    // context precision after elevated-precision internals).
    BigReal rounded_to(mpfr_prec_t prec) const {
        BigReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Shortest-faithful style formatting with `digits` significant digits.
    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigReal operator-() const {
        BigReal r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, long b) {
        BigReal r(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, long b) {
        BigReal r(a.prec());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(long a, const BigReal& b) {
        BigReal r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, long b) {
        BigReal r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator/(const BigReal& a, long b) {
        BigReal r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long a, const BigReal& b) {
        BigReal r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator+(const BigReal& a, double b) { return a + BigReal(b, 53); }
    friend BigReal operator*(const BigReal& a, double b) { return a * BigReal(b, 53); }

    BigReal& operator+=(const BigReal& b) {
        bump(b.prec());
        mpfr_add(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator-=(const BigReal& b) {
        bump(b.prec());
        mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator*=(const BigReal& b) {
        bump(b.prec());
        mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator/=(const BigReal& b) {
        bump(b.prec());
        mpfr_div(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator+=(long b) {
        mpfr_add_si(v_, v_, b, MPFR_RNDN);
        return *this;
    }
    BigReal& operator-=(long b) {
        mpfr_sub_si(v_, v_, b, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return !mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

  private:
    static mpfr_prec_t wider(const BigReal& a, const BigReal& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
    void bump(mpfr_prec_t p) {
        if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
    }
    mpfr_t v_;
};

// Unary helpers; result precision follows the argument.
#define RZL_UNARY(name, call)                  \
    inline BigReal name(const BigReal& a) {    \
        BigReal r(a.prec());                   \
        call(r.raw(), a.raw(), MPFR_RNDN);     \
        return r;                              \
    }
RZL_UNARY(exp, mpfr_exp)
RZL_UNARY(expm1, mpfr_expm1)
RZL_UNARY(log, mpfr_log)
RZL_UNARY(log1p, mpfr_log1p)
RZL_UNARY(sqrt, mpfr_sqrt)
RZL_UNARY(sin, mpfr_sin)
RZL_UNARY(cos, mpfr_cos)
RZL_UNARY(abs, mpfr_abs)
RZL_UNARY(floor, mpfr_rint_floor)
#undef RZL_UNARY

inline BigReal pow(const BigReal& a, unsigned long n) {
    BigReal r(a.prec());
    mpfr_pow_ui(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}
inline BigReal pow(const BigReal& a, const BigReal& b) {
    BigReal r(a.prec() > b.prec() ? a.prec() : b.prec());
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(y.prec() > x.prec() ? y.prec() : x.prec());
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline BigReal hypot(const BigReal& a, const BigReal& b) {
    BigReal r(a.prec() > b.prec() ? a.prec() : b.prec());
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal const_pi(mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
// 2^e as a BigReal (exact).
inline BigReal pow2(long e, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

} // namespace rzl
