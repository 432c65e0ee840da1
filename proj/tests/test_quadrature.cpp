#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rzl/mpcore.hpp"
#include "rzl/quadrature.hpp"

using namespace rzl;

TEST_CASE("gauss-legendre rule structure") {
    const mpfr_prec_t p = bits_for_digits(50);
    const GlRule& r16 = gl_rule(16, p);
    REQUIRE(r16.nodes.size() == 16);
    REQUIRE(r16.weights.size() == 16);
    // weights sum to the interval length 2
    BigReal ws(0.0, p);
    for (const BigReal& w : r16.weights) {
        CHECK(w > 0.0);
        ws += w;
    }
    CHECK(abs(ws - 2L).to_double() < 1e-45);
    // nodes ascend and pair up symmetrically
    for (size_t i = 1; i < 16; ++i) CHECK(r16.nodes[i] > r16.nodes[i - 1]);
    for (size_t i = 0; i < 8; ++i) {
        CHECK(abs(r16.nodes[i] + r16.nodes[15 - i]).to_double() < 1e-45);
        CHECK(abs(r16.weights[i] - r16.weights[15 - i]).to_double() < 1e-45);
    }
    // a 16-point rule integrates x^30 on [-1,1] exactly: 2/31
    BigReal x30(0.0, p);
    for (size_t i = 0; i < 16; ++i) {
        BigReal t = r16.nodes[i];
        BigReal acc(1.0, p);
        for (int j = 0; j < 30; ++j) acc *= t;
        x30 += r16.weights[i] * acc;
    }
    CHECK(abs(x30 - BigReal(2.0, p) / 31L).to_double() < 1e-44);

    const GlRule& again = gl_rule(16, p);
    CHECK(&again == &r16); // cached
}

TEST_CASE("adaptive integration of smooth integrands") {
    const mpfr_prec_t p = bits_for_digits(45);
    BigReal tol(1e-30, 64);

    BigReal e1 = integrate([](const BigReal& x) { return exp(x); }, BigReal(0.0, p),
                           BigReal(1.0, p), tol, p);
    BigReal ref = exp(BigReal(1.0, p)) - 1L;
    CHECK(abs(e1 - ref).to_double() < 1e-30);

    // 1/(1+x^2) over [0,1] = pi/4
    BigReal at = integrate(
        [p](const BigReal& x) {
            return BigReal(1.0, p) / (BigReal(1.0, p) + x * x);
        },
        BigReal(0.0, p), BigReal(1.0, p), tol, p);
    CHECK(abs(at - const_pi(p) / 4L).to_double() < 1e-30);

    // orientation flip negates
    BigReal rev = integrate([](const BigReal& x) { return exp(x); }, BigReal(1.0, p),
                            BigReal(0.0, p), tol, p);
    CHECK(abs(rev + e1).to_double() < 1e-29);
}

TEST_CASE("integrable but wildly oscillatory integrands blow the cap") {
    const mpfr_prec_t p = bits_for_digits(40);
    // sin(1/x) on [1e-6, 1] oscillates ~1.6e5 times -- far past what the
    // bisection cap will chase
    auto f = [p](const BigReal& x) { return sin(BigReal(1.0, p) / x); };
    CHECK_THROWS_AS(
        integrate(f, BigReal(1.0e-6, p), BigReal(1.0, p), BigReal(1e-30, 64), p),
        numeric_error);
}
