#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rzl/zeta.hpp"

using namespace rzl;

static double dtol(const BigReal& a, const char* ref) {
    BigReal r(ref, 256);
    return abs(a - r).to_double();
}

TEST_CASE("even zeta table values") {
    PrecisionContext ctx(40);
    const ZetaEvenTable& t = even_zeta_table(ctx.prec(), 16);
    CHECK(dtol(t.value(1), "1.644934066848226436472415") < 1e-24);   // zeta(2)
    CHECK(dtol(t.value(10), "1.000000953962033872796113") < 1e-24);  // zeta(20)
    CHECK(dtol(t.inverse(2), "0.9239384029215901670237505") < 1e-24); // 1/zeta(4)
    CHECK(dtol(t.inverse(5), "0.9990064130690307817522253") < 1e-24); // 1/zeta(10)
    // f(j) = 1/zeta(2j+2)
    CHECK(mpfr_equal_p(t.f(0).raw(), t.inverse(1).raw()));
    CHECK(mpfr_equal_p(t.f(4).raw(), t.inverse(5).raw()));
    // zeta(2) = pi^2/6, computed independently of the table
    BigReal pi = const_pi(ctx.prec());
    CHECK(abs(t.value(1) - pi * pi / 6L).to_double() < 1e-45);
    CHECK_THROWS_AS(t.value(0), domain_error);
    CHECK_THROWS_AS(t.inverse(-1), domain_error);
}

TEST_CASE("table extension preserves earlier entries") {
    const mpfr_prec_t p = bits_for_digits(50);
    const ZetaEvenTable& a = even_zeta_table(p, 4);
    BigReal z2 = a.value(1);
    const ZetaEvenTable& b = even_zeta_table(p, 300);
    CHECK(&a == &b); // same cached table, extended in place
    CHECK(mpfr_equal_p(b.value(1).raw(), z2.raw()));
    CHECK(b.max_index() >= 300);
    // entries hug 1: strictly while 2^-2k is representable, exactly 1 after
    CHECK(b.value(80) > 1.0);
    CHECK(b.inverse(80) < 1.0);
    CHECK(b.value(250) >= 1.0);
    CHECK(abs(b.value(250) - 1L).to_double() < 1e-45);
}

TEST_CASE("zeta and its derivative on the real axis") {
    PrecisionContext ctx(40);
    CHECK(dtol(zeta_real(BigReal(2.0, ctx.prec()), ctx), "1.644934066848226436472415") < 1e-24);
    CHECK(dtol(zeta_real(BigReal(3.0, ctx.prec()), ctx), "1.202056903159594285399738") < 1e-24);
    CHECK(dtol(zeta_deriv_real(BigReal(2.0, ctx.prec()), ctx),
               "-0.9375482543158437537025741") < 1e-24);
    auto both = zeta_and_deriv_real(BigReal(3.0, ctx.prec()), ctx);
    CHECK(dtol(both.first, "1.202056903159594285399738") < 1e-24);
    CHECK(dtol(both.second, "-0.19812624288563685333") < 1e-19);
    CHECK_THROWS_AS(zeta_real(BigReal(1.2, ctx.prec()), ctx), domain_error);
    CHECK_THROWS_AS(zeta_and_deriv_real(BigReal(1.0, ctx.prec()), ctx), domain_error);
}

TEST_CASE("complex zeta agrees with the real evaluator on the axis") {
    PrecisionContext ctx(40);
    const mpfr_prec_t p = ctx.prec();
    BigComplex z = zeta_complex(BigComplex(BigReal(2.0, p), BigReal(0.0, p)), ctx);
    CHECK(abs(z.re - zeta_real(BigReal(2.0, p), ctx)).to_double() < 1e-35);
    CHECK(abs(z.im).to_double() < 1e-35);
    BigComplex dz = zeta_deriv_complex(BigComplex(BigReal(2.0, p), BigReal(0.0, p)), ctx);
    CHECK(abs(dz.re - zeta_deriv_real(BigReal(2.0, p), ctx)).to_double() < 1e-30);

    // functional sanity off axis: zeta(s) ~ 1 + 2^-s for large Re s
    BigComplex s(BigReal(30.0, p), BigReal(5.0, p));
    BigComplex v = zeta_complex(s, ctx);
    CHECK(abs(v.re - 1L).to_double() < 2e-9);
    CHECK(abs(v.im).to_double() < 1e-9);

    CHECK_THROWS_AS(zeta_complex(BigComplex(BigReal(1.0, p), BigReal(0.0, p)), ctx),
                    domain_error);
    CHECK_THROWS_AS(zeta_complex(BigComplex(BigReal(0.5, p), BigReal(1.0e6, p)), ctx),
                    domain_error);
}

TEST_CASE("dirichlet inverse zeta with mobius tail bound") {
    PrecisionContext ctx(40);
    MobiusTable mt = build_mobius(100000);
    const ZetaEvenTable& t = even_zeta_table(ctx.prec(), 8);

    DirichletInv d10 = inv_zeta_dirichlet(BigReal(10.0, ctx.prec()), 100, mt, ctx);
    // truncation honesty: the stated bound covers the true gap to 1/zeta(10)
    BigReal truth("0.9990064130690307817522253", 256);
    CHECK(abs(d10.value - truth) <= d10.tail_bound);
    CHECK(d10.tail_bound.to_double() < 1e-18);
    CHECK(d10.tail_bound > 0.0);
    CHECK(d10.terms == 61); // squarefree n <= 100

    DirichletInv d4 = inv_zeta_dirichlet(BigReal(4.0, ctx.prec()), 50000, mt, ctx);
    CHECK(abs(d4.value - t.inverse(2)) <= d4.tail_bound);

    CHECK_THROWS_AS(inv_zeta_dirichlet(BigReal(1.0, ctx.prec()), 100, mt, ctx), domain_error);
    CHECK_THROWS_AS(inv_zeta_dirichlet(BigReal(4.0, ctx.prec()), 200000, mt, ctx), domain_error);
}
