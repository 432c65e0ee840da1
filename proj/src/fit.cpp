#include "rzl/analysis.hpp"

#include <cmath>
#include <string>

namespace rzl {

namespace {

struct Pt {
    double t, y;
};

// local maxima of y inside the window (strict on the left so plateaus count
// once), least-squares in log-log
FitResult fit_over_extrema(const std::vector<Pt>& pts, const FitWindow& window, long min_extrema,
                           const char* who) {
    if (!(window.lo > 0.0) || !(window.hi > window.lo))
        throw domain_error(std::string(who) + ": window must satisfy 0 < lo < hi");

    std::vector<Pt> ex;
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const Pt& p = pts[i];
        if (p.t < window.lo || p.t > window.hi || !(p.y > 0.0))
            continue;
        if (p.y > pts[i - 1].y && p.y >= pts[i + 1].y)
            ex.push_back(p);
    }
    if ((long)ex.size() < min_extrema)
        throw numeric_error(std::string(who) + ": only " + std::to_string(ex.size()) +
                            " local extrema in window, need >= " + std::to_string(min_extrema));

    double su = 0, sv = 0, suu = 0, suv = 0;
    for (const Pt& p : ex) {
        const double u = std::log(p.t), v = std::log(p.y);
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
    }
    const double n = (double)ex.size();
    const double det = n * suu - su * su;
    if (!(std::fabs(det) > 1e-12 * n * suu))
        throw numeric_error(std::string(who) + ": degenerate abscissae in window");
    FitResult fr;
    fr.exponent = (n * suv - su * sv) / det;
    const double intercept = (sv - fr.exponent * su) / n;
    fr.amplitude = std::exp(intercept);
    fr.window_lo = window.lo;
    fr.window_hi = window.hi;
    fr.extrema_used = (long)ex.size();
    double ss = 0;
    for (const Pt& p : ex) {
        const double r = std::log(p.y) - (intercept + fr.exponent * std::log(p.t));
        ss += r * r;
    }
    fr.residual = std::sqrt(ss / n);
    return fr;
}

} // namespace

FitResult fit_envelope(const std::vector<RieszSample>& samples, const FitWindow& window) {
    std::vector<Pt> pts;
    pts.reserve(samples.size());
    for (const RieszSample& s : samples)
        if (s.x > 0.0)
            pts.push_back({s.x, std::fabs(s.value.to_double())});
    return fit_over_extrema(pts, window, 10, "fit_envelope");
}

FitResult estimate_decay_exponent(const std::vector<CkRecord>& records, const FitWindow& window) {
    if (window.hi < 10.0 * window.lo)
        throw domain_error("estimate_decay_exponent: window spans less than a decade");
    std::vector<Pt> pts;
    pts.reserve(records.size());
    for (const CkRecord& r : records)
        if (r.k > 0)
            pts.push_back({(double)r.k, std::fabs(r.value.to_double())});
    return fit_over_extrema(pts, window, 10, "estimate_decay_exponent");
}

std::pair<FitResult, FitResult> partial_sum_envelopes(const std::vector<PartialSumTrace>& trace,
                                                      const FitWindow& window_alt,
                                                      const FitWindow& window_plain) {
    std::vector<Pt> alt, plain;
    alt.reserve(trace.size());
    plain.reserve(trace.size());
    for (const PartialSumTrace& tr : trace) {
        if (tr.K <= 0)
            continue;
        alt.push_back({(double)tr.K, std::fabs(tr.distance_alt.to_double())});
        plain.push_back({(double)tr.K, std::fabs(tr.distance_plain.to_double())});
    }
    FitResult fa = fit_over_extrema(alt, window_alt, 4, "partial_sum_envelopes[alt]");
    FitResult fp = fit_over_extrema(plain, window_plain, 4, "partial_sum_envelopes[plain]");
    return {fa, fp};
}

} // namespace rzl
