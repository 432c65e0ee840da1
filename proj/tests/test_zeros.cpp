#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rzl/zeros.hpp"
#include "rzl/zeta.hpp"

using namespace rzl;

namespace {

double gap(const BigReal& a, const char* ref) {
    return abs(a - BigReal(ref, 256)).to_double();
}

std::string write_tmp(const char* name, const char* body) {
    std::string path = std::string("/tmp/rzl_zeros_") + name + ".txt";
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("bundled ordinates load and are sane") {
    std::vector<BigReal> gs = load_zeros(default_zeros_path(), 100);
    REQUIRE(gs.size() == 100);
    CHECK(gap(gs[0], "14.1347251417346937904572519836") < 1e-27);
    CHECK(gap(gs[1], "21.0220396387715549926284795939") < 1e-27);
    for (size_t i = 1; i < gs.size(); ++i) CHECK(gs[i] > gs[i - 1]);
    CHECK(gs.back() > 236.0);
    CHECK(gs.back() < 237.0);
}

TEST_CASE("each bundled ordinate sits on a zero of zeta") {
    PrecisionContext ctx(30);
    std::vector<BigReal> gs = load_zeros(default_zeros_path(), 100);
    for (size_t i : {size_t(0), size_t(4), size_t(19), size_t(49), size_t(99)}) {
        BigComplex rho(BigReal(0.5, ctx.prec()), gs[i].rounded_to(ctx.prec()));
        BigReal resid = abs(zeta_complex(rho, ctx));
        CHECK(resid.to_double() < 1e-12);
    }
}

TEST_CASE("loader rejects malformed ordinate files") {
    CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt", 1), input_error);
    CHECK_THROWS_AS(load_zeros(default_zeros_path(), -1), domain_error);
    CHECK_THROWS_AS(load_zeros(default_zeros_path(), 101), input_error); // only 100 bundled

    std::string low = write_tmp("lowdigits", "14.134725141734694\n21.0220396\n");
    CHECK_THROWS_AS(load_zeros(low, 2), input_error); // 9 digits < 15

    std::string dup = write_tmp("nonmono",
                                "14.134725141734693790457251983562\n"
                                "14.134725141734693790457251983562\n");
    CHECK_THROWS_AS(load_zeros(dup, 2), input_error);

    std::string junk = write_tmp("junk", "14.134725141734693790457251983562\nnot-a-number-here\n");
    CHECK_THROWS_AS(load_zeros(junk, 2), input_error);

    std::string twocol = write_tmp("twocol", "14.134725141734693790457251983562 0.5\n");
    CHECK_THROWS_AS(load_zeros(twocol, 1), input_error);

    // comments and blank lines are fine
    std::string ok = write_tmp("ok",
                               "# header\n\n14.134725141734693790457251983562 # first\n");
    std::vector<BigReal> gs = load_zeros(ok, 1);
    CHECK(gs.size() == 1);
}

TEST_CASE("first zero coefficient against the frozen reference") {
    PrecisionContext ctx(40);
    std::vector<BigReal> gs = load_zeros(default_zeros_path(), 1);
    ZeroCoefficient zc = compute_coefficient(gs[0], ctx);
    CHECK(gap(zc.a, "4.0583477315908971434e-5") < 1e-20);
    CHECK(gap(zc.b, "-6.6318485115891888835e-5") < 1e-20);
    CHECK(gap(zc.modulus, "7.7750627644525623138e-5") < 1e-20);
    CHECK(zc.b < 0.0);
    double psi = std::atan2(zc.b.to_double(), zc.a.to_double());
    CHECK(std::fabs(psi - (-1.0216376784282666)) < 1e-12);
    // rho = 1/2 + i gamma
    CHECK(zc.rho.re.to_double() == 0.5);
    CHECK(mpfr_equal_p(zc.rho.im.raw(), zc.gamma.raw()));
}

TEST_CASE("off-zero gamma is rejected, not silently accepted") {
    PrecisionContext ctx(30);
    CHECK_THROWS_AS(compute_coefficient(BigReal(14.0, bits_for_digits(30)), ctx), input_error);
    CHECK_THROWS_AS(compute_coefficient(BigReal(0.5, 64), ctx), domain_error);
}

TEST_CASE("coefficient table and modulus decay") {
    PrecisionContext ctx(40);
    std::vector<ZeroCoefficient> tab = coefficient_table(20, ctx);
    REQUIRE(tab.size() == 20);
    for (size_t i = 0; i < tab.size(); ++i) CHECK(tab[i].index == (long)i + 1);
    CHECK(gap(tab[1].modulus, "2.6808835e-7") < 1e-13);

    // |Gamma(3/4 - i g/2) / zeta'(rho)| ~ sqrt(2 pi) (g/2)^{1/4} e^{-pi g/4} / |zeta'|:
    // the exponential should dominate visibly
    for (const ZeroCoefficient& zc : tab) {
        double g = zc.gamma.to_double();
        double lm = std::log(zc.modulus.to_double());
        CHECK(std::fabs(lm + 3.14159265358979 * g / 4.0) < 0.5 * std::log(g) + 5.0);
        CHECK(zc.modulus > 0.0);
    }
    for (size_t i = 1; i < tab.size(); ++i) CHECK(tab[i].modulus < tab[i - 1].modulus);

    // the first modulus towers over the rest combined
    BigReal rest(0.0, 64);
    for (size_t i = 1; i < tab.size(); ++i) rest += tab[i].modulus;
    CHECK((rest / tab[0].modulus).to_double() < 0.0447);
}

TEST_CASE("zeta derivative magnitude at the first zero") {
    PrecisionContext ctx(40);
    std::vector<BigReal> gs = load_zeros(default_zeros_path(), 1);
    BigComplex rho(BigReal(0.5, ctx.prec()), gs[0].rounded_to(ctx.prec()));
    BigReal mag = abs(zeta_deriv_complex(rho, ctx));
    CHECK(gap(mag, "0.79316043335650611601") < 1e-18);
}
