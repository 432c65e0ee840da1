#include "rzl/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <vector>

#include "rzl/analysis.hpp"
#include "rzl/baez.hpp"
#include "rzl/riesz.hpp"
#include "rzl/sieve.hpp"
#include "rzl/zeros.hpp"

namespace rzl {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// log-log least squares over local maxima of |y|; assumes t ascending
struct LineFit {
    double amplitude = 0, exponent = 0;
    long used = 0;
};
LineFit fit_maxima_loglog(const std::vector<double>& t, const std::vector<double>& y,
                          long min_extrema) {
    double su = 0, sv = 0, suu = 0, suv = 0;
    long n = 0;
    for (size_t i = 1; i + 1 < t.size(); ++i) {
        const double a = std::fabs(y[i]);
        if (!(a > 0.0) || !(a > std::fabs(y[i - 1])) || !(a >= std::fabs(y[i + 1])))
            continue;
        const double u = std::log(t[i]), v = std::log(a);
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
        ++n;
    }
    if (n < min_extrema)
        throw numeric_error("fit_maxima_loglog: only " + std::to_string(n) + " extrema");
    const double det = (double)n * suu - su * su;
    LineFit lf;
    lf.exponent = ((double)n * suv - su * sv) / det;
    lf.amplitude = std::exp((sv - lf.exponent * su) / (double)n);
    lf.used = n;
    return lf;
}

// solve the m x m normal system in place (partial pivoting); b is the rhs
void solve_normal(std::vector<std::vector<double>>& A, std::vector<double>& b) {
    const size_t m = b.size();
    for (size_t c = 0; c < m; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < m; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c]))
                piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (!(std::fabs(A[c][c]) > 0.0))
            throw numeric_error("solve_normal: singular system");
        for (size_t r = c + 1; r < m; ++r) {
            const double f = A[r][c] / A[c][c];
            for (size_t k = c; k < m; ++k)
                A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (size_t c = m; c-- > 0;) {
        for (size_t k = c + 1; k < m; ++k)
            b[c] -= A[c][k] * b[k];
        b[c] /= A[c][c];
    }
}

using Clock = std::chrono::steady_clock;

CriterionResult crit1(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 1;
    const PrecisionContext ctx = cfg.ctx();
    const double z = first_zero(table, ctx).to_double();
    const double target = 1.1567116438;
    r.pass = std::fabs(z - target) <= 1e-9;
    r.detail = fmt("first zero %.12f, reference %.10f, |diff| %.2e (tol 1e-9)", z, target,
                   std::fabs(z - target));
    return r;
}

CriterionResult crit2(const RunConfig& cfg) {
    CriterionResult r;
    r.id = 2;
    const PrecisionContext ctx = cfg.ctx();
    const BigReal s1 = alternating_sum(ctx);
    const BigReal ref("0.782527985325384234576688", 128);
    const BigReal d_ref = abs(s1 - ref);

    const BigReal s2 = abel_integral_check(ctx);
    const BigReal d_abel = abs(s2 - s1);

    PowerSeriesCheck ps = power_series_identity(-1.0, 64, ctx);
    const BigReal d_ps = abs(ps.rhs - s1);

    const bool ok_ref = d_ref < 1e-24;
    const bool ok_abel = d_abel < 1e-12;
    const bool ok_ps = d_ps < 1e-12;
    r.pass = ok_ref && ok_abel && ok_ps;
    r.detail = fmt("geometric sum off reference by %s; abel route off by %s; "
                   "power-series route off by %s (tols 1e-24, 1e-12, 1e-12)",
                   d_ref.str(3).c_str(), d_abel.str(3).c_str(), d_ps.str(3).c_str());
    return r;
}

CriterionResult crit3(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 3;
    const PrecisionContext ctx = cfg.ctx();
    std::vector<long> ks;
    for (long k = 0; k <= 64; ++k)
        ks.push_back(k);
    ks.push_back(128);
    ks.push_back(256);
    ks.push_back(512);

    long exact_bad = -1, cross_bad = -1;
    BigReal worst(0.0, 64);
    for (long k : ks) {
        CkRecord bin = ck_binomial(k, ctx);
        DiffTable dt(std::max(k, 1L), ctx);
        if (!mpfr_equal_p(bin.value.raw(), dt.ck(k).raw())) {
            exact_bad = k;
            break;
        }
        CkRecord moe = ck_moebius(k, table, ctx);
        BigReal d = abs(bin.value - moe.value);
        if (d > worst)
            worst = d;
        if (!(d <= 1e-20)) {
            cross_bad = k;
            break;
        }
    }
    r.pass = exact_bad < 0 && cross_bad < 0;
    if (exact_bad >= 0)
        r.detail = fmt("binomial and difference-table values differ at k = %ld", exact_bad);
    else if (cross_bad >= 0)
        r.detail = fmt("binomial vs sieve route exceeds 1e-20 at k = %ld", cross_bad);
    else
        r.detail = fmt("binomial == difference table bit-for-bit on all %zu k; "
                       "worst |binomial - sieve| = %s (tol 1e-20)",
                       ks.size(), worst.str(3).c_str());
    return r;
}

CriterionResult crit4(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 4;
    const PrecisionContext ctx = cfg.ctx();
    const long pts = 50;
    double worst = 0;
    for (long i = 0; i < pts; ++i) {
        const double x = 0.1 * std::pow(1e4, (double)i / (double)(pts - 1));
        RieszSample a = riesz_series(x, ctx);
        RieszSample b = riesz_kummer1(x, table, ctx);
        RieszSample c = riesz_kummer2(x, table, ctx);
        const BigReal dab = abs(a.value - b.value), bab = a.err_estimate + b.err_estimate;
        const BigReal dac = abs(a.value - c.value), bac = a.err_estimate + c.err_estimate;
        const BigReal dbc = abs(b.value - c.value), bbc = b.err_estimate + c.err_estimate;
        if (!(dab <= bab) || !(dac <= bac) || !(dbc <= bbc)) {
            r.pass = false;
            r.detail = fmt("disagreement outside combined error at x = %.6g", x);
            return r;
        }
        const double q = (dac / (bac + BigReal(1e-300, 64))).to_double();
        worst = std::max(worst, q);
    }
    r.pass = true;
    r.detail = fmt("three evaluations agree within combined error at %ld points in [0.1, 1e3]; "
                   "worst series-vs-accelerated ratio %.3f",
                   pts, worst);
    return r;
}

CriterionResult crit5(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 5;
    const PrecisionContext ctx = cfg.ctx();
    auto reports = verify_bound(17, 10000, table, ctx, 0, cfg.threads);
    double worst = 0;
    long worst_k = 0, fail_k = -1;
    for (const BoundReport& br : reports) {
        if (!br.holds && fail_k < 0)
            fail_k = br.k;
        const double q = (br.lhs / br.rhs_full).to_double();
        if (q > worst) {
            worst = q;
            worst_k = br.k;
        }
    }
    r.pass = fail_k < 0;
    if (r.pass)
        r.detail = fmt("bound holds for every k in [17, 10000]; max lhs/rhs = %.5f at k = %ld",
                       worst, worst_k);
    else
        r.detail = fmt("bound violated at k = %ld (max ratio %.5f at k = %ld)", fail_k, worst,
                       worst_k);
    return r;
}

CriterionResult crit6(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 6;
    const PrecisionContext ctx = cfg.ctx();
    auto reports = verify_bound(10000, 100000, table, ctx, 1600, cfg.threads);
    std::vector<double> t, y;
    t.reserve(reports.size());
    for (const BoundReport& br : reports) {
        t.push_back((double)br.k);
        y.push_back(br.lhs.to_double());
    }
    LineFit lf = fit_maxima_loglog(t, y, 4);
    r.pass = lf.exponent >= -1.6 && lf.exponent <= -1.4;
    r.detail = fmt("|R(k)/k - c_k| envelope over [1e4, 1e5]: exponent %.4f, amplitude %.4e "
                   "from %ld maxima; required -1.5 +/- 0.1",
                   lf.exponent, lf.amplitude, lf.used);
    return r;
}

CriterionResult crit7(const RunConfig& cfg) {
    CriterionResult r;
    r.id = 7;
    const PrecisionContext ctx = cfg.ctx();
    auto coeffs = coefficient_table(1, ctx, cfg.zeros_file);
    const double m = coeffs.at(0).modulus.to_double();
    const double target = 0.777506e-5;
    const double rel = std::fabs(m - target) / target;
    r.pass = rel <= 0.02;
    r.detail = fmt("first-zero coefficient modulus %.6e vs reference %.6e (rel diff %.3f, "
                   "tol 0.02)",
                   m, target, rel);
    return r;
}

CriterionResult crit8(const RunConfig& cfg) {
    CriterionResult r;
    r.id = 8;
    const PrecisionContext ctx = cfg.ctx();
    const double xs[] = {1.0, 2.0, 5.0, 10.0};
    double worst = 0, worst_x = 0;
    for (double x : xs) {
        const double res = verify_generating_identity(x, 100, ctx).to_double();
        if (res > worst) {
            worst = res;
            worst_x = x;
        }
    }
    r.pass = worst < 1e-10;
    r.detail = fmt("generating-function residual max %.3e at x = %g over {1,2,5,10} "
                   "(kmax 100, tol 1e-10)",
                   worst, worst_x);
    return r;
}

CriterionResult crit9(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 9;
    const PrecisionContext ctx = cfg.ctx();
    PartialSums ps = partial_sums(120000, table, ctx, cfg.threads);
    const bool ok_cross = ps.first_crossing >= 80000 && ps.first_crossing <= 100000;

    // independent check of the fast trace against a directly accumulated sum
    const mpfr_prec_t p = ctx.prec();
    BigReal acc(0L, p);
    BigReal worst(0.0, 64);
    for (long k = 0; k <= 2000; ++k) {
        acc += ck_moebius(k, table, ctx).value;
        BigReal d = abs(acc - ps.trace[(size_t)k].s_plain);
        if (d > worst)
            worst = d;
    }
    const bool ok_direct = worst <= 1e-10;
    r.pass = ok_cross && ok_direct;
    r.detail = fmt("first crossing of -2 at K = %ld (required in [80000, 100000]); "
                   "fast trace vs direct accumulation for K <= 2000: max |diff| %s (tol 1e-10)",
                   ps.first_crossing, worst.str(3).c_str());
    return r;
}

CriterionResult crit10(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 10;
    const PrecisionContext ctx = cfg.ctx();
    auto coeffs = coefficient_table(1, ctx, cfg.zeros_file);
    const double g2 = coeffs.at(0).gamma.to_double() / 2.0;
    const double a = coeffs.at(0).a.to_double();
    const double b = coeffs.at(0).b.to_double();
    const double m1 = coeffs.at(0).modulus.to_double();

    // 1600 log-spaced k; y = c_k (k+1)^{3/4}
    const long npts = 1600;
    std::vector<long> ks;
    ks.reserve(npts);
    long prev = 0;
    for (long i = 0; i < npts; ++i) {
        long k = (long)std::llround(1e4 * std::pow(100.0, (double)i / (double)(npts - 1)));
        if (k != prev)
            ks.push_back(k);
        prev = k;
    }
    std::vector<double> u(ks.size()), y(ks.size());
    for (size_t i = 0; i < ks.size(); ++i) {
        CkRecord rec = ck_moebius(ks[i], table, ctx);
        u[i] = std::log((double)ks[i] + 1.0);
        y[i] = rec.value.to_double() * std::pow((double)ks[i] + 1.0, 0.75);
    }

    // least squares onto {cos, -sin, smooth k^-5/4, smooth k^-9/4}; the two
    // power terms soak up the trivial-zero drift that dominates below k ~ 2e4
    const size_t m = 4;
    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    const double u0 = u.front();
    auto basis = [&](size_t i, double* phi) {
        phi[0] = std::cos(g2 * u[i]);
        phi[1] = -std::sin(g2 * u[i]);
        phi[2] = std::exp(-1.25 * (u[i] - u0));
        phi[3] = std::exp(-2.25 * (u[i] - u0));
    };
    for (size_t i = 0; i < u.size(); ++i) {
        double phi[4];
        basis(i, phi);
        for (size_t p1 = 0; p1 < m; ++p1) {
            rhs[p1] += phi[p1] * y[i];
            for (size_t p2 = 0; p2 < m; ++p2)
                A[p1][p2] += phi[p1] * phi[p2];
        }
    }
    solve_normal(A, rhs);
    const double amp = std::hypot(rhs[0], rhs[1]);
    const double rel_amp = std::fabs(amp - m1) / m1;
    const bool ok_amp = rel_amp <= 0.20;

    // phase: sign crossings of the data with the fitted smooth part removed,
    // against the analytic crossings of the one-zero model
    std::vector<double> ydet(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        double phi[4];
        basis(i, phi);
        ydet[i] = y[i] - rhs[2] * phi[2] - rhs[3] * phi[3];
    }
    std::vector<double> dcross;
    for (size_t i = 0; i + 1 < u.size(); ++i)
        if (ydet[i] == 0.0 || (ydet[i] > 0) != (ydet[i + 1] > 0))
            dcross.push_back(u[i] + (u[i + 1] - u[i]) * ydet[i] / (ydet[i] - ydet[i + 1]));
    std::vector<double> mcross;
    {
        const double phase = std::atan2(b, a); // a cos - b sin = M cos(theta + phase)
        const double first = (M_PI / 2 - phase) / g2;
        const double step = M_PI / g2;
        long j0 = (long)std::ceil((u.front() - first) / step);
        for (long j = j0;; ++j) {
            const double uj = first + step * (double)j;
            if (uj > u.back())
                break;
            if (uj >= u.front())
                mcross.push_back(uj);
        }
    }
    bool ok_phase = std::labs((long)dcross.size() - (long)mcross.size()) <= 2 && !dcross.empty();
    double worst_rel = 0;
    for (double ud : dcross) {
        double best = 1e300, bu = 0;
        for (double um : mcross)
            if (std::fabs(ud - um) < best) {
                best = std::fabs(ud - um);
                bu = um;
            }
        if (bu == 0.0) {
            ok_phase = false;
            break;
        }
        worst_rel = std::max(worst_rel, best / bu);
        if (best > 0.05 * bu)
            ok_phase = false;
    }

    r.pass = ok_amp && ok_phase;
    r.detail = fmt("one-zero model vs sieve c_k on [1e4, 1e6]: amplitude %.4e vs modulus %.4e "
                   "(rel %.3f, tol 0.20); %zu sign crossings vs %zu model crossings, "
                   "worst offset %.4f of ln k (tol 0.05)",
                   amp, m1, rel_amp, dcross.size(), mcross.size(), worst_rel);
    return r;
}

CriterionResult crit11(const RunConfig& cfg, const MobiusTable& table) {
    CriterionResult r;
    r.id = 11;
    r.informational = true;
    const PrecisionContext ctx = cfg.ctx();
    PartialSums ps = partial_sums(200000, table, ctx, cfg.threads);
    std::string fits;
    try {
        auto env = partial_sum_envelopes(ps.trace, {1e3, 2e5}, {1e4, 2e5});
        fits = fmt("alternating-distance fit: exponent %.3f amplitude %.3e (%ld maxima); "
                   "plain-distance fit: exponent %.3f amplitude %.3e (%ld maxima)",
                   env.first.exponent, env.first.amplitude, env.first.extrema_used,
                   env.second.exponent, env.second.amplitude, env.second.extrema_used);
    } catch (const error& e) {
        fits = std::string("envelope fits unavailable: ") + e.what();
    }
    r.pass = true;
    r.detail = fmt("the published 1e13-term partial-sum experiment is out of desk-scale reach; "
                   "recorded instead: first crossing K = %ld, %s. Exploratory only -- the plain "
                   "distance is dominated by its smooth ~1/K drift at these K",
                   ps.first_crossing, fits.c_str());
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, int id, std::ostream* log) {
    MobiusTable table = build_mobius(cfg.mobius_limit);
    std::vector<CriterionResult> out;
    for (int n = 1; n <= 11; ++n) {
        if (id != 0 && id != n)
            continue;
        const auto t0 = Clock::now();
        CriterionResult res;
        try {
            switch (n) {
            case 1: res = crit1(cfg, table); break;
            case 2: res = crit2(cfg); break;
            case 3: res = crit3(cfg, table); break;
            case 4: res = crit4(cfg, table); break;
            case 5: res = crit5(cfg, table); break;
            case 6: res = crit6(cfg, table); break;
            case 7: res = crit7(cfg); break;
            case 8: res = crit8(cfg); break;
            case 9: res = crit9(cfg, table); break;
            case 10: res = crit10(cfg, table); break;
            case 11: res = crit11(cfg, table); break;
            }
        } catch (const std::exception& e) {
            res.id = n;
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (log)
            (*log) << "criterion " << n << ": " << (res.pass ? "PASS" : "FAIL")
                   << (res.informational ? " (informational)" : "") << " -- " << res.detail
                   << fmt(" [%.1fs]", res.seconds) << std::endl;
        out.push_back(std::move(res));
    }
    return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.informational && !r.pass)
            return false;
    return true;
}

} // namespace rzl
