#include "rzl/zeros.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <string>

#include "rzl/zeta.hpp"

#ifndef RZL_BUNDLED_ZEROS
#define RZL_BUNDLED_ZEROS "data/zeta_zeros.txt"
#endif

namespace rzl {

std::string default_zeros_path() {
    const char* env = std::getenv("RZL_ZEROS_FILE");
    if (env && *env)
        return env;
    return RZL_BUNDLED_ZEROS;
}

namespace {

// significant digits actually stated in a decimal token: mantissa digits
// minus leading zeros ("0.000123400" states 7)
long stated_digits(const std::string& tok) {
    std::string mant = tok;
    const size_t e = mant.find_first_of("eE");
    if (e != std::string::npos)
        mant.resize(e);
    std::string digits;
    for (char ch : mant)
        if (std::isdigit((unsigned char)ch))
            digits.push_back(ch);
    size_t lead = 0;
    while (lead < digits.size() && digits[lead] == '0')
        ++lead;
    return (long)(digits.size() - lead);
}

} // namespace

std::vector<BigReal> load_zeros(const std::string& path, long count) {
    if (count < 0)
        throw domain_error("load_zeros: count must be >= 0");
    std::ifstream in(path);
    if (!in)
        throw input_error("load_zeros: cannot open '" + path + "'");
    std::vector<BigReal> out;
    out.reserve((size_t)count);
    std::string line;
    long lineno = 0;
    while ((long)out.size() < count && std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos)
            continue;
        size_t e = line.find_last_not_of(" \t\r\n");
        std::string tok = line.substr(b, e - b + 1);
        if (tok.find_first_of(" \t") != std::string::npos)
            throw input_error("load_zeros: " + path + ":" + std::to_string(lineno) +
                              ": expected one ordinate per line");
        const long sig = stated_digits(tok);
        if (sig < 15)
            throw input_error("load_zeros: " + path + ":" + std::to_string(lineno) + ": only " +
                              std::to_string(sig) + " significant digits (need >= 15)");
        BigReal g(bits_for_digits(sig + 2));
        if (mpfr_set_str(g.raw(), tok.c_str(), 10, MPFR_RNDN) != 0)
            throw input_error("load_zeros: " + path + ":" + std::to_string(lineno) +
                              ": cannot parse '" + tok + "'");
        if (!(g > 1.0))
            throw input_error("load_zeros: " + path + ":" + std::to_string(lineno) +
                              ": ordinate must be > 1");
        if (!out.empty() && !(g > out.back()))
            throw input_error("load_zeros: " + path + ":" + std::to_string(lineno) +
                              ": ordinates must be strictly increasing");
        out.push_back(g);
    }
    if ((long)out.size() < count)
        throw input_error("load_zeros: '" + path + "' holds only " +
                          std::to_string(out.size()) + " ordinates, " + std::to_string(count) +
                          " requested");
    return out;
}

ZeroCoefficient compute_coefficient(const BigReal& gamma, const PrecisionContext& ctx) {
    if (!(gamma > 1.0))
        throw domain_error("compute_coefficient: gamma must be > 1");
    const mpfr_prec_t p = ctx.prec();
    ZeroCoefficient zc;
    zc.gamma = gamma.rounded_to(p);
    zc.rho = BigComplex(BigReal(0.5, p), zc.gamma);

    // a wrong ordinate would silently corrupt every spectral sum; a true zero
    // ordinate stated to d digits leaves |zeta(rho)| ~ |zeta'| * gamma * 10^-d
    BigComplex zval = zeta_complex(zc.rho, ctx);
    if (!(abs(zval) < 1.0e-8))
        throw input_error("compute_coefficient: |zeta(1/2 + i gamma)| = " + abs(zval).str(3) +
                          ": gamma is not a zero ordinate");

    BigComplex arg(BigReal(0.75, p), -(zc.gamma / BigReal(2L, 64)));
    BigComplex g = rzl::gamma(arg, ctx);
    BigComplex dz = zeta_deriv_complex(zc.rho, ctx);
    BigComplex coef = g / dz;
    zc.a = coef.re;
    zc.b = coef.im;
    zc.modulus = abs(coef);
    return zc;
}

std::vector<ZeroCoefficient> coefficient_table(long count, const PrecisionContext& ctx,
                                               const std::string& path) {
    std::vector<BigReal> gs = load_zeros(path.empty() ? default_zeros_path() : path, count);
    std::vector<ZeroCoefficient> out;
    out.reserve(gs.size());
    for (size_t i = 0; i < gs.size(); ++i) {
        ZeroCoefficient zc = compute_coefficient(gs[i], ctx);
        zc.index = (long)i + 1;
        out.push_back(std::move(zc));
    }
    return out;
}

} // namespace rzl
