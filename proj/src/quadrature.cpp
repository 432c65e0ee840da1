#include "rzl/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace rzl {

namespace {

std::mutex g_gl_mutex;
std::map<std::pair<int, mpfr_prec_t>, std::unique_ptr<GlRule>> g_gl_cache;

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre(int n, const BigReal& x, BigReal& p, BigReal& dp) {
    const mpfr_prec_t w = x.prec();
    BigReal p0(1L, w), p1 = x;
    for (int j = 2; j <= n; ++j) {
        BigReal p2 = (BigReal(2L * j - 1, 64) * x * p1 - BigReal(j - 1L, 64) * p0) / BigReal((long)j, 64);
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    // (1-x^2) P_n' = n (P_{n-1} - x P_n)
    dp = BigReal((long)n, 64) * (p0 - x * p1) / (BigReal(1L, w) - x * x);
}

std::unique_ptr<GlRule> build_gl(int n, mpfr_prec_t prec) {
    auto rule = std::make_unique<GlRule>();
    rule->nodes.resize((size_t)n, BigReal(prec));
    rule->weights.resize((size_t)n, BigReal(prec));
    const mpfr_prec_t w = prec + 32;
    const BigReal one(1L, w), two(2L, w);
    BigReal p(w), dp(w);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton (quadratic from 1e-15)
        BigReal x(std::cos(M_PI * ((double)i + 0.75) / ((double)n + 0.5)), w);
        for (int it = 0; it < 40; ++it) {
            legendre(n, x, p, dp);
            BigReal step = p / dp;
            x -= step;
            if (abs(step) < pow2(-(w - 8), 64))
                break;
        }
        legendre(n, x, p, dp);
        BigReal wt = two / ((one - x * x) * dp * dp);
        rule->nodes[(size_t)i] = (-x).rounded_to(prec);
        rule->nodes[(size_t)(n - 1 - i)] = x.rounded_to(prec);
        rule->weights[(size_t)i] = wt.rounded_to(prec);
        rule->weights[(size_t)(n - 1 - i)] = rule->weights[(size_t)i];
    }
    if (n & 1) { // middle node is exactly 0
        rule->nodes[(size_t)(n / 2)] = BigReal(0L, prec);
        legendre(n, BigReal(0L, w), p, dp);
        rule->weights[(size_t)(n / 2)] = (two / (dp * dp)).rounded_to(prec);
    }
    return rule;
}

BigReal apply_rule(const GlRule& rule, const std::function<BigReal(const BigReal&)>& f,
                   const BigReal& a, const BigReal& b, mpfr_prec_t p) {
    const BigReal half_len = (b - a) / BigReal(2L, 64);
    const BigReal mid = (a + b) / BigReal(2L, 64);
    BigReal acc(0L, p);
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half_len * rule.nodes[i]);
    return acc * half_len;
}

} // namespace

const GlRule& gl_rule(int n, mpfr_prec_t prec) {
    if (n < 2 || n > 256)
        throw domain_error("gl_rule: order out of range");
    prec = ((prec + 63) / 64) * 64;
    std::lock_guard<std::mutex> lk(g_gl_mutex);
    auto key = std::make_pair(n, prec);
    auto it = g_gl_cache.find(key);
    if (it == g_gl_cache.end())
        it = g_gl_cache.emplace(key, build_gl(n, prec)).first;
    return *it->second;
}

BigReal integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                  const BigReal& b, const BigReal& tol, mpfr_prec_t prec) {
    const GlRule& coarse = gl_rule(16, prec);
    const GlRule& fine = gl_rule(32, prec);
    struct Seg {
        BigReal a, b, tol;
    };
    std::vector<Seg> stack{{a, b, tol}};
    BigReal total(0L, prec);
    long evals = 0;
    while (!stack.empty()) {
        Seg s = std::move(stack.back());
        stack.pop_back();
        BigReal i1 = apply_rule(coarse, f, s.a, s.b, prec);
        BigReal i2 = apply_rule(fine, f, s.a, s.b, prec);
        if (abs(i2 - i1) <= s.tol) {
            total += i2;
            continue;
        }
        if (++evals > 4096)
            throw numeric_error("integrate: refinement cap hit; integrand not smooth on interval");
        BigReal mid = (s.a + s.b) / BigReal(2L, 64);
        BigReal half_tol = s.tol / BigReal(2L, 64);
        stack.push_back({s.a, mid, half_tol});
        stack.push_back({mid, s.b, half_tol});
    }
    return total;
}

} // namespace rzl
