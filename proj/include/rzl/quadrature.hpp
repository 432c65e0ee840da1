#pragma once

#include <functional>
#include <vector>

#include "rzl/bigreal.hpp"
#include "rzl/errors.hpp"

namespace rzl {

// Gauss-Legendre rule on [-1, 1], nodes ascending.  Rules are cached per
// (n, precision); the returned reference lives for the process.
struct GlRule {
    std::vector<BigReal> nodes, weights;
};
const GlRule& gl_rule(int n, mpfr_prec_t prec);

// Adaptive Gauss-Legendre on [a, b]: accept a subinterval when the 16- and
// 32-point rules agree to its share of tol, else bisect.  Caps the interval
// count; blowing the cap means the integrand is not smooth enough and raises
// a numeric error.
BigReal integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                  const BigReal& b, const BigReal& tol, mpfr_prec_t prec);

} // namespace rzl
