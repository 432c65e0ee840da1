#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rzl/analysis.hpp"
#include "rzl/baez.hpp"
#include "rzl/config.hpp"
#include "rzl/csv.hpp"
#include "rzl/riesz.hpp"
#include "rzl/sieve.hpp"
#include "rzl/suite.hpp"
#include "rzl/zeros.hpp"

namespace {

using namespace rzl;

int cmd_riesz_eval(const RunConfig& cfg, double x, const std::string& method, long terms,
                   double eps) {
    const PrecisionContext ctx = cfg.ctx();
    RieszSample s;
    if (method == "series") {
        s = riesz_series(x, ctx);
    } else {
        MobiusTable table = build_mobius(cfg.mobius_limit);
        s = method == "kummer1" ? riesz_kummer1(x, table, ctx, terms)
                                : riesz_kummer2(x, table, ctx, eps);
    }
    std::cout << "x = " << csv_num(BigReal(x, 64), 17) << "\n"
              << "method = " << riesz_method_name(s.method) << "\n"
              << "R = " << csv_num(s.value, (int)cfg.digits) << "\n"
              << "err <= " << csv_num(s.err_estimate, 3) << "\n"
              << "terms = " << s.terms_used << "\n";
    return 0;
}

int cmd_riesz_zero(const RunConfig& cfg, double lo, double hi) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    BigReal z = first_zero(table, ctx, lo, hi);
    std::cout << "first zero = " << csv_num(z, 13) << "\n";
    return 0;
}

int cmd_riesz_sweep(const RunConfig& cfg, double xmax, long points, const std::string& spacing,
                    double xmin, double eps_quarter, const std::string& out) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    const Spacing sp = spacing == "log" ? Spacing::log : Spacing::linear;
    auto rows = riesz_sweep(xmax, points, sp, table, ctx, xmin, eps_quarter, cfg.threads);
    CsvWriter w(out, "x,R,err,method,terms");
    for (const RieszSample& s : rows)
        w.row({csv_num(s.x, 17), csv_num(s.value, cfg.csv_digits), csv_num(s.err_estimate, 3),
               riesz_method_name(s.method), std::to_string(s.terms_used)});
    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    return 0;
}

int cmd_ck_compute(const RunConfig& cfg, long k, const std::string& method, long nzeros) {
    const PrecisionContext ctx = cfg.ctx();
    CkRecord rec;
    if (method == "binomial") {
        rec = ck_binomial(k, ctx);
    } else if (method == "moebius") {
        MobiusTable table = build_mobius(cfg.mobius_limit);
        rec = ck_moebius(k, table, ctx);
    } else {
        auto coeffs = coefficient_table(nzeros, ctx, cfg.zeros_file);
        rec = ck_spectral(k, coeffs);
    }
    std::cout << "k = " << rec.k << "\n"
              << "method = " << ck_method_name(rec.method) << "\n"
              << "c_k = " << csv_num(rec.value, (int)cfg.digits) << "\n";
    if (rec.err_estimate.is_nan())
        std::cout << "err <= n/a (asymptotic model)\n";
    else
        std::cout << "err <= " << csv_num(rec.err_estimate, 3) << "\n";
    std::cout << "digits = " << rec.precision_digits << "\n";
    return 0;
}

int cmd_ck_sweep(const RunConfig& cfg, long kmax, long stride, const std::string& method,
                 const std::string& out) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    CkMethod m = CkMethod::moebius;
    if (method == "binomial")
        m = CkMethod::binomial;
    else if (method == "difftable")
        m = CkMethod::difftable;
    auto rows = ck_sweep(kmax, m, stride, table, ctx, cfg.threads);
    CsvWriter w(out, "k,c_k,err,method");
    for (const CkRecord& r : rows)
        w.row({std::to_string(r.k), csv_num(r.value, cfg.csv_digits), csv_num(r.err_estimate, 3),
               ck_method_name(r.method)});
    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    return 0;
}

int cmd_verify_bound(const RunConfig& cfg, long kmin, long kmax, long samples) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    auto reports = verify_bound(kmin, kmax, table, ctx, samples, cfg.threads);
    double worst = 0;
    long worst_k = 0, violations = 0;
    for (const BoundReport& r : reports) {
        const double q = (r.lhs / r.rhs_full).to_double();
        if (q > worst) {
            worst = q;
            worst_k = r.k;
        }
        if (!r.holds) {
            if (++violations <= 10)
                std::cout << "VIOLATION at k = " << r.k << ": lhs " << csv_num(r.lhs, 6)
                          << " > rhs " << csv_num(r.rhs_full, 6) << "\n";
        }
    }
    std::cout << "checked " << reports.size() << " values of k in [" << kmin << ", " << kmax
              << "]\n"
              << "max lhs/rhs = " << csv_num(worst, 6) << " at k = " << worst_k << "\n";
    if (violations) {
        std::cout << "bound violated at " << violations << " points\n";
        return 1;
    }
    std::cout << "bound holds everywhere\n";
    return 0;
}

int cmd_verify_identity(const RunConfig& cfg, const std::string& which, double x, double s, long k,
                        long kmax, double tol) {
    const PrecisionContext ctx = cfg.ctx();
    if (which == "altsum") {
        std::cout << "alternating sum = " << csv_num(alternating_sum(ctx), (int)cfg.digits)
                  << "\n";
        return 0;
    }
    if (which == "gf") {
        BigReal r = verify_generating_identity(x, kmax, ctx);
        if (tol <= 0)
            tol = 1e-10;
        std::cout << "x = " << x << "\nkmax = " << kmax << "\nresidual = " << csv_num(r, 6)
                  << "\ntol = " << csv_num(tol, 3) << "\n";
        return r <= tol ? 0 : 1;
    }
    if (which == "abel") {
        BigReal ref = alternating_sum(ctx);
        BigReal v = abel_integral_check(ctx);
        BigReal d = abs(v - ref);
        if (tol <= 0)
            tol = 1e-12;
        std::cout << "integral route  = " << csv_num(v, (int)cfg.digits) << "\n"
                  << "geometric route = " << csv_num(ref, (int)cfg.digits) << "\n"
                  << "|diff| = " << csv_num(d, 3) << "\ntol = " << csv_num(tol, 3) << "\n";
        return d <= tol ? 0 : 1;
    }
    if (which == "powerseries") {
        PowerSeriesCheck ps = power_series_identity(s, kmax, ctx);
        if (tol <= 0)
            tol = 1e-12;
        std::cout << "s = " << s << "\nlhs = " << csv_num(ps.lhs, (int)cfg.digits) << "\n"
                  << "rhs = " << csv_num(ps.rhs, (int)cfg.digits) << "\n"
                  << "residual = " << csv_num(ps.residual, 6) << "\ntol = " << csv_num(tol, 3)
                  << "\n";
        return ps.residual <= tol ? 0 : 1;
    }
    if (which == "approx33") {
        BigReal d = approx_identity_33(k, ctx);
        std::cout << "k = " << k << "\n|R(k)/k - c_k| = " << csv_num(d, 6) << "\n";
        return 0;
    }
    // approx34
    BigReal d = approx_identity_34(x, kmax, ctx);
    std::cout << "x = " << x << "\nkmax = " << kmax << "\nrelative residual = " << csv_num(d, 6)
              << "\n";
    return 0;
}

int cmd_sums_partial(const RunConfig& cfg, long kmax, const std::string& out) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    PartialSums ps = partial_sums(kmax, table, ctx, cfg.threads);
    CsvWriter w(out, "K,S_plain,S_alt,dist_plain,dist_alt");
    for (const PartialSumTrace& tr : ps.trace)
        w.row({std::to_string(tr.K), csv_num(tr.s_plain, cfg.csv_digits),
               csv_num(tr.s_alt, cfg.csv_digits), csv_num(tr.distance_plain, cfg.csv_digits),
               csv_num(tr.distance_alt, cfg.csv_digits)});
    std::cout << "wrote " << ps.trace.size() << " rows to " << out << "\n"
              << "alternating limit = " << csv_num(ps.alt_limit, (int)cfg.digits) << "\n";
    if (ps.first_crossing >= 0)
        std::cout << "first crossing of -2 at K = " << ps.first_crossing << "\n";
    else
        std::cout << "no crossing of -2 up to K = " << kmax << "\n";
    return 0;
}

int cmd_zeros_coeffs(const RunConfig& cfg, long count, const std::string& out) {
    const PrecisionContext ctx = cfg.ctx();
    auto coeffs = coefficient_table(count, ctx, cfg.zeros_file);
    std::ostringstream buf;
    buf << "i,gamma,a,b,modulus\n";
    for (const ZeroCoefficient& z : coeffs)
        buf << z.index << ',' << csv_num(z.gamma, cfg.csv_digits) << ','
            << csv_num(z.a, cfg.csv_digits) << ',' << csv_num(z.b, cfg.csv_digits) << ','
            << csv_num(z.modulus, cfg.csv_digits) << '\n';
    if (out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f)
            throw input_error("cannot open output file: " + out);
        f << buf.str();
        std::cout << "wrote " << coeffs.size() << " rows to " << out << "\n";
    }
    return 0;
}

int cmd_fit_envelope(const RunConfig& cfg, const std::string& in, double lo, double hi) {
    (void)cfg;
    std::ifstream f(in);
    if (!f)
        throw input_error("cannot open input file: " + in);
    std::string line;
    if (!std::getline(f, line))
        throw input_error(in + ": empty file");
    std::vector<RieszSample> samples;
    long lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty())
            continue;
        double x = 0, v = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2)
            throw input_error(in + ":" + std::to_string(lineno) + ": expected x,R,...");
        RieszSample s;
        s.x = x;
        s.value = BigReal(v, 64);
        samples.push_back(std::move(s));
    }
    FitResult fr = fit_envelope(samples, {lo, hi});
    std::cout << "amplitude = " << csv_num(fr.amplitude, 6) << "\n"
              << "exponent = " << csv_num(fr.exponent, 6) << "\n"
              << "residual = " << csv_num(fr.residual, 3) << "\n"
              << "extrema = " << fr.extrema_used << "\n";
    return 0;
}

int cmd_fit_ckdiff(const RunConfig& cfg, long kmin, long kmax, long samples) {
    const PrecisionContext ctx = cfg.ctx();
    MobiusTable table = build_mobius(cfg.mobius_limit);
    auto reports = verify_bound(kmin, kmax, table, ctx, samples, cfg.threads);
    std::vector<CkRecord> recs;
    recs.reserve(reports.size());
    for (const BoundReport& r : reports) {
        CkRecord c;
        c.k = r.k;
        c.value = r.lhs;
        recs.push_back(std::move(c));
    }
    FitResult fr = estimate_decay_exponent(recs, {(double)kmin, (double)kmax});
    std::cout << "amplitude = " << csv_num(fr.amplitude, 6) << "\n"
              << "exponent = " << csv_num(fr.exponent, 6) << "\n"
              << "residual = " << csv_num(fr.residual, 3) << "\n"
              << "extrema = " << fr.extrema_used << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    using namespace rzl;
    RunConfig cfg;
    try {
        cfg = RunConfig::from_env();
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    CLI::App app{"Riesz function / Baez-Duarte sequence toolkit"};
    app.require_subcommand(1);
    app.add_option("--digits", cfg.digits, "working decimal digits")->check(CLI::Range(15, 100000));
    app.add_option("--mobius-limit", cfg.mobius_limit, "sieve ceiling")
        ->check(CLI::Range(1000L, 2000000000L));
    app.add_option("--zeros-file", cfg.zeros_file, "zeta-zero ordinates file");
    app.add_option("--csv-digits", cfg.csv_digits, "significant digits in CSV output")
        ->check(CLI::Range(6, 40));
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)")
        ->check(CLI::Range(0, 4096));

    // riesz
    auto* riesz = app.add_subcommand("riesz", "evaluate the Riesz function");
    riesz->require_subcommand(1);
    auto* reval = riesz->add_subcommand("eval", "R(x) at one point");
    double rx = 0, reps = 0;
    long rterms = 0;
    std::string rmethod = "series";
    reval->add_option("--x", rx, "argument")->required();
    reval->add_option("--method", rmethod, "series|kummer1|kummer2")
        ->check(CLI::IsMember({"series", "kummer1", "kummer2"}));
    reval->add_option("--terms", rterms, "truncation for kummer1 (0 = auto)");
    reval->add_option("--eps", reps, "accuracy target for kummer2 (0 = auto)");

    auto* rzero = riesz->add_subcommand("zero", "first sign change of R");
    double zlo = 1.0, zhi = 1.3;
    rzero->add_option("--lo", zlo, "bracket left end");
    rzero->add_option("--hi", zhi, "bracket right end");

    auto* rsweep = riesz->add_subcommand("sweep", "R on a grid, to CSV");
    double sxmax = 0, sxmin = 0.1, seps4 = 0;
    long spoints = 0;
    std::string sspacing = "linear", sout;
    rsweep->add_option("--xmax", sxmax, "grid right end")->required();
    rsweep->add_option("--points", spoints, "grid size")->required()
        ->check(CLI::Range(2L, 100000000L));
    rsweep->add_option("--spacing", sspacing, "linear|log")
        ->check(CLI::IsMember({"linear", "log"}));
    rsweep->add_option("--xmin", sxmin, "grid left end (log spacing)");
    rsweep->add_option("--eps-quarter", seps4, "envelope-relative accuracy knob");
    rsweep->add_option("--out", sout, "output CSV path")->required();

    // ck
    auto* ck = app.add_subcommand("ck", "Baez-Duarte coefficients");
    ck->require_subcommand(1);
    auto* ckc = ck->add_subcommand("compute", "c_k at one index");
    long ckk = 0, cknz = 10;
    std::string ckmethod = "moebius";
    ckc->add_option("--k", ckk, "index")->required();
    ckc->add_option("--method", ckmethod, "binomial|moebius|spectral")
        ->check(CLI::IsMember({"binomial", "moebius", "spectral"}));
    ckc->add_option("--nzeros", cknz, "zeros used by the spectral model")
        ->check(CLI::Range(1L, 1000L));

    auto* cks = ck->add_subcommand("sweep", "c_k on a strided grid, to CSV");
    long cksmax = 0, ckstride = 1;
    std::string cksmethod = "moebius", cksout;
    cks->add_option("--kmax", cksmax, "largest index")->required();
    cks->add_option("--stride", ckstride, "grid stride")->check(CLI::Range(1L, 1000000000L));
    cks->add_option("--method", cksmethod, "moebius|binomial|difftable")
        ->check(CLI::IsMember({"moebius", "binomial", "difftable"}));
    cks->add_option("--out", cksout, "output CSV path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "identity and bound checks");
    verify->require_subcommand(1);
    auto* vb = verify->add_subcommand("bound", "per-k difference bound");
    long vbmin = 17, vbmax = 10000, vbsamples = 0;
    vb->add_option("--kmin", vbmin, "first k")->required();
    vb->add_option("--kmax", vbmax, "last k")->required();
    vb->add_option("--samples", vbsamples, "0 = every k, else geometric grid");

    auto* vi = verify->add_subcommand("identity", "cross-representation identities");
    std::string viwhich;
    double vix = 1.0, vis = 0.0, vitol = 0;
    long vik = 1, vikmax = 100;
    vi->add_option("--which", viwhich, "gf|altsum|abel|powerseries|approx33|approx34")
        ->required()
        ->check(CLI::IsMember({"gf", "altsum", "abel", "powerseries", "approx33", "approx34"}));
    vi->add_option("--x", vix, "evaluation point (gf, approx34)");
    vi->add_option("--s", vis, "power-series argument in [-1, 1/2)");
    vi->add_option("--k", vik, "index (approx33)");
    vi->add_option("--kmax", vikmax, "series truncation");
    vi->add_option("--tol", vitol, "failure threshold (0 = default)");

    auto* va = verify->add_subcommand("all", "full acceptance battery");
    int vacrit = 0;
    va->add_option("--criterion", vacrit, "run one criterion (0 = all)")
        ->check(CLI::Range(0, 11));

    // sums
    auto* sums = app.add_subcommand("sums", "partial-sum traces");
    sums->require_subcommand(1);
    auto* sp = sums->add_subcommand("partial", "S_K and the alternating variant, to CSV");
    long spkmax = 0;
    std::string spout;
    sp->add_option("--kmax", spkmax, "largest K")->required();
    sp->add_option("--out", spout, "output CSV path")->required();

    // zeros
    auto* zeros = app.add_subcommand("zeros", "zeta-zero coefficient table");
    zeros->require_subcommand(1);
    auto* zc = zeros->add_subcommand("coeffs", "spectral coefficients, CSV");
    long zcount = 10;
    std::string zout;
    zc->add_option("--count", zcount, "number of zeros")->check(CLI::Range(1L, 100000L));
    zc->add_option("--out", zout, "output CSV path (default stdout)");

    // fit
    auto* fit = app.add_subcommand("fit", "log-log envelope fits");
    fit->require_subcommand(1);
    auto* fe = fit->add_subcommand("envelope", "fit |R| extrema from a sweep CSV");
    std::string fein;
    std::vector<double> fewin;
    fe->add_option("--in", fein, "riesz sweep CSV")->required();
    fe->add_option("--window", fewin, "fit window: lo hi")->expected(2)->required();

    auto* fc = fit->add_subcommand("ckdiff", "fit the |R(k)/k - c_k| envelope");
    long fckmin = 0, fckmax = 0, fcsamples = 800;
    fc->add_option("--kmin", fckmin, "first k")->required();
    fc->add_option("--kmax", fckmax, "last k")->required();
    fc->add_option("--samples", fcsamples, "geometric sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (reval->parsed())
            return cmd_riesz_eval(cfg, rx, rmethod, rterms, reps);
        if (rzero->parsed())
            return cmd_riesz_zero(cfg, zlo, zhi);
        if (rsweep->parsed())
            return cmd_riesz_sweep(cfg, sxmax, spoints, sspacing, sxmin, seps4, sout);
        if (ckc->parsed())
            return cmd_ck_compute(cfg, ckk, ckmethod, cknz);
        if (cks->parsed())
            return cmd_ck_sweep(cfg, cksmax, ckstride, cksmethod, cksout);
        if (vb->parsed())
            return cmd_verify_bound(cfg, vbmin, vbmax, vbsamples);
        if (vi->parsed())
            return cmd_verify_identity(cfg, viwhich, vix, vis, vik, vikmax, vitol);
        if (va->parsed()) {
            auto results = run_acceptance(cfg, vacrit, &std::cout);
            return all_pass(results) ? 0 : 1;
        }
        if (sp->parsed())
            return cmd_sums_partial(cfg, spkmax, spout);
        if (zc->parsed())
            return cmd_zeros_coeffs(cfg, zcount, zout);
        if (fe->parsed())
            return cmd_fit_envelope(cfg, fein, fewin[0], fewin[1]);
        if (fc->parsed())
            return cmd_fit_ckdiff(cfg, fckmin, fckmax, fcsamples);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
