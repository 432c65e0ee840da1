#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rzl/baez.hpp"

using namespace rzl;

namespace {

const MobiusTable& mt() {
    static MobiusTable t = build_mobius(1000000);
    return t;
}

struct Pin {
    long k;
    const char* v;
};

// 35-digit references for the low-index coefficients
const Pin kPins[] = {
    {0, "0.60792710185402662866327677925836583"},
    {1, "-0.31601130106756353836047371478231664"},
    {2, "-0.25699711172457328557932764382907498"},
    {3, "-0.21096953124251775982812148068745451"},
    {5, "-0.1463529100085022500614498216334451"},
    {10, "-0.069139065505109603976447526718677204"},
    {64, "-0.0034218318050439201071129089544569303"},
};

double gap(const BigReal& a, const char* ref) {
    return abs(a - BigReal(ref, 256)).to_double();
}

} // namespace

TEST_CASE("binomial transform hits the reference coefficients") {
    PrecisionContext ctx(40);
    for (const Pin& p : kPins) {
        CkRecord r = ck_binomial(p.k, ctx);
        CHECK(gap(r.value, p.v) < 1e-32);
        CHECK(r.k == p.k);
        CHECK(r.method == CkMethod::binomial);
        CHECK(r.precision_digits >= 40);
        CHECK(r.err_estimate > 0.0);
    }
}

TEST_CASE("moebius form agrees to the same references") {
    PrecisionContext ctx(40);
    for (const Pin& p : kPins) {
        CkRecord r = ck_moebius(p.k, mt(), ctx);
        CHECK(gap(r.value, p.v) < 1e-32);
        CHECK(r.method == CkMethod::moebius);
    }
}

TEST_CASE("binomial and moebius stay together past the pins") {
    PrecisionContext ctx(40);
    for (long k : {100L, 333L, 1000L, 2000L}) {
        CkRecord a = ck_binomial(k, ctx);
        CkRecord b = ck_moebius(k, mt(), ctx);
        CHECK(abs(a.value - b.value).to_double() < 1e-20);
    }
    CHECK_THROWS_AS(ck_binomial(2001, ctx), resource_error);
    CHECK_THROWS_AS(ck_binomial(-1, ctx), domain_error);
}

TEST_CASE("difference table reproduces the binomial sum bit for bit") {
    PrecisionContext ctx(40);
    for (long k : {0L, 1L, 16L, 33L, 64L, 128L}) {
        DiffTable dt(k, ctx);
        CkRecord direct = ck_binomial(k, ctx);
        CHECK(mpfr_equal_p(dt.ck(k).raw(), direct.value.raw()));
        CHECK(dt.record(k).precision_digits == direct.precision_digits);
    }
}

TEST_CASE("difference table internals") {
    PrecisionContext ctx(40);
    DiffTable dt(64, ctx);
    CHECK(dt.kmax() == 64);
    // row 0 is the base sequence
    CHECK(mpfr_equal_p(dt.diff(3, 0).raw(), dt.base(3).raw()));
    CHECK(mpfr_equal_p(dt.diff(0, 10).raw(), dt.ck(10).raw()));
    // forward-difference recurrence, spot cells (exact dyadic arithmetic)
    for (long l : {0L, 1L, 5L})
        for (long k : {1L, 7L, 20L}) {
            BigReal lhs = dt.diff(l, k);
            BigReal rhs = dt.diff(l, k - 1) - dt.diff(l + 1, k - 1);
            CHECK(mpfr_equal_p(lhs.raw(), rhs.raw()));
        }
    CHECK(gap(dt.ck(10), kPins[5].v) < 1e-32);
    CHECK_THROWS_AS(dt.diff(40, 30), domain_error); // l + k > kmax
    CHECK_THROWS_AS(dt.ck(65), domain_error);
}

TEST_CASE("precision rule grows with k and covers the cancellation") {
    PrecisionContext ctx(40);
    long d100 = ck_rule_digits(100, ctx);
    long d2000 = ck_rule_digits(2000, ctx);
    CHECK(d100 >= 40 + 30);     // k log10(2) ~ 30 lost digits at k = 100
    CHECK(d2000 >= 40 + 600);
    CHECK(d2000 > d100);
}

TEST_CASE("moebius reaches far beyond the binomial range") {
    PrecisionContext ctx(40);
    CkRecord r = ck_moebius(100000, mt(), ctx);
    // |c_k| (k+1)^{3/4} stays under a few envelope units out here
    double scaled = std::fabs(r.value.to_double()) * std::pow(100001.0, 0.75);
    CHECK(scaled < 4e-4);
    CHECK(r.err_estimate.to_double() < 1e-30);

    // tail bucket exceeding the sieve is refused
    MobiusTable tiny = build_mobius(1024);
    CHECK_THROWS_AS(ck_moebius(10000000, tiny, ctx), domain_error);
}

TEST_CASE("spectral model tracks the true coefficients at large k") {
    PrecisionContext ctx(40);
    std::vector<ZeroCoefficient> coeffs = coefficient_table(10, ctx);
    CHECK_THROWS_AS(ck_spectral(99, coeffs), domain_error);

    for (long k : {100000L, 316228L}) {
        CkRecord model = ck_spectral(k, coeffs);
        CkRecord truth = ck_moebius(k, mt(), ctx);
        // model omits the smooth -16.4/k piece: at k = 1e5 that is ~1.6e-9
        CHECK(std::fabs(model.value.to_double() - truth.value.to_double()) < 8e-9);
        CHECK(model.method == CkMethod::spectral);
    }
}

TEST_CASE("sweep agrees with standalone evaluations and is thread stable") {
    PrecisionContext ctx(30);
    std::vector<CkRecord> sw = ck_sweep(3000, CkMethod::moebius, 10, mt(), ctx, 1);
    REQUIRE(sw.size() == 301);
    CHECK(sw.front().k == 0);
    CHECK(sw.back().k == 3000);
    for (long i : {0L, 30L, 177L, 300L}) {
        const CkRecord& s = sw[(size_t)i];
        CkRecord solo = ck_moebius(s.k, mt(), ctx);
        // the sweep fixes N from kmax, so agreement is within err, not bitwise;
        // allow one ulp of the final rounding on each side on top
        double tol = s.err_estimate.to_double() + solo.err_estimate.to_double() + 1e-38;
        CHECK(abs(s.value - solo.value).to_double() <= tol);
    }

    std::vector<CkRecord> sw4 = ck_sweep(3000, CkMethod::moebius, 10, mt(), ctx, 4);
    REQUIRE(sw4.size() == sw.size());
    for (size_t i = 0; i < sw.size(); ++i)
        CHECK(mpfr_equal_p(sw[i].value.raw(), sw4[i].value.raw()));

    // binomial engine sweep = the standalone op exactly
    std::vector<CkRecord> sb = ck_sweep(40, CkMethod::binomial, 5, mt(), ctx, 2);
    for (const CkRecord& s : sb)
        CHECK(mpfr_equal_p(s.value.raw(), ck_binomial(s.k, ctx).value.raw()));

    // difftable engine works at the kmax-rule precision but matches within err
    std::vector<CkRecord> sd = ck_sweep(40, CkMethod::difftable, 5, mt(), ctx, 1);
    for (size_t i = 0; i < sd.size(); ++i)
        CHECK(abs(sd[i].value - sb[i].value).to_double() < 1e-25);

    CHECK_THROWS_AS(ck_sweep(100, CkMethod::spectral, 1, mt(), ctx), domain_error);
    CHECK_THROWS_AS(ck_sweep(100, CkMethod::moebius, 0, mt(), ctx), domain_error);
    CHECK_THROWS_AS(ck_sweep(-1, CkMethod::moebius, 1, mt(), ctx), domain_error);
}
