#include "latpot/cli.hpp"
#include <json.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace latpot::cli {

using json = nlohmann::json;

void RunConfig::check() const {
    if (order < 2 || order > 24)
        throw std::invalid_argument("config: order must lie in [2, 24]");
    if (precision < 53)
        throw std::invalid_argument("config: precision must be at least 53 bits");
}

WalkPtr resolve_walk(const std::string& name_or_path) {
    try {
        return WalkSpec::bundled(name_or_path);
    } catch (const std::invalid_argument&) {
        return WalkSpec::load_file(name_or_path);
    }
}

Real oracle_value(const WalkSpec& walk, const std::string& method, long bx, long by,
                  mpfr_prec_t precision, double tol) {
    if (method == "fourier" || method == "fourier2d") {
        FourierOptions fo;
        fo.precision = precision;
        fo.target_tol = tol;
        fo.force_2d = (method == "fourier2d");
        return potential_fourier(walk, bx, by, fo).numeric->first;
    }
    if (method == "sum") {
        DirectSumOptions so;
        so.precision = precision;
        so.richardson = 2;
        return potential_direct_sum(walk, bx, by, so).numeric->first;
    }
    if (method == "conv") {
        if (!is_simple_z2(walk))
            throw std::invalid_argument("oracle: convolution oracle is for the simple Z^2 walk");
        ConvolutionResult r = potential_convolution_iterate(200, 30);
        // pin the additive constant at a(1,0) = 1
        double offset = 1.0 - r.grid.at(1, 0);
        return Real::of(r.grid.at(bx, by) + offset, precision);
    }
    throw std::invalid_argument("oracle: unknown method '" + method + "'");
}

ExpandResult build_expansion(const RunConfig& cfg) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    ExpandResult out{Expansion(w, 0, PiGraded(), {}), std::nullopt, false};
    if (is_simple_z2(*w)) {
        out.expansion = fix_harmonic_exact_z2(solve_expansion(w, cfg.order));
    } else {
        FitOptions fo;
        fo.precision = std::max<mpfr_prec_t>(cfg.precision, 416);
        UnresolvedExpansion u = solve_expansion(w, cfg.order + fo.solve_margin);
        OracleFn oracle = [&w](long bx, long by, mpfr_prec_t prec) {
            FourierOptions fopt;
            fopt.precision = prec;
            fopt.target_tol = 1e-28;
            return potential_fourier(*w, bx, by, fopt).numeric->first;
        };
        auto [e, rep] = fit_harmonic_numeric(u, oracle, fo);
        out.expansion = std::move(e);
        out.fit = std::move(rep);
    }
    bool reversible = w->is_reversible();
    out.checks_passed = check_klhalf(out.expansion) &&
                        check_degree_bounds(out.expansion, reversible) &&
                        check_parity(out.expansion, reversible);
    return out;
}

namespace {

std::string coeff_str(const PiGraded& c) {
    // expansion coefficients are pure 1/pi grade by construction
    return c.c1().real().str();
}

json lambda_json(const Expansion& e) {
    json j;
    if (e.lambda_exact()) {
        const SymbolicConstant& s = *e.lambda_exact();
        j["rational"] = s.plain_rational().str();
        j["rational_over_pi"] = s.pi_rational().str();
        j["gamma_over_pi"] = s.pi_gamma_coeff().str();
        j["log2_over_pi"] = s.pi_log2_coeff().str();
    } else {
        j["value"] = e.lambda_numeric()->first.str(40);
        j["uncertainty"] = e.lambda_numeric()->second.str(3);
    }
    return j;
}

}  // namespace

std::string expansion_table(const Expansion& e, const std::optional<FitReport>& fit) {
    std::ostringstream os;
    os << "walk: " << e.walk()->name() << "   order: " << e.order() << "\n";
    os << "alpha (coeff of log|z|^2): (" << coeff_str(e.alpha()) << ")/pi\n";
    if (e.lambda_exact())
        os << "lambda: " << e.lambda_exact()->str() << " = "
           << e.lambda_exact()->eval(160).str(30) << "\n";
    else
        os << "lambda: " << e.lambda_numeric()->first.str(30) << " +- "
           << e.lambda_numeric()->second.str(3) << " (fitted)\n";
    os << "terms alpha_{lk} * Re(z^l / |z|^k):\n";
    os << "  order   l    k   coeff*pi\n";
    for (const auto& en : e.to_real_form()) {
        std::ostringstream row;
        row << "  " << std::setw(5) << en.order << std::setw(5) << en.l << std::setw(5) << en.k
            << "   " << coeff_str(en.coeff);
        os << row.str() << "\n";
    }
    if (fit) {
        os << "fit: " << fit->sample_count << " sample orbits, max residual "
           << fit->max_fit_residual.str(3) << ", held-out residual "
           << fit->max_heldout_residual.str(3) << "\n";
    }
    return os.str();
}

std::string expansion_json(const Expansion& e, const std::optional<FitReport>& fit) {
    json j;
    j["walk"] = e.walk()->name();
    j["order"] = e.order();
    j["alpha_over_pi"] = coeff_str(e.alpha());
    j["sqrt_d"] = e.walk()->d();
    j["lambda"] = lambda_json(e);
    j["terms"] = json::array();
    for (const auto& en : e.to_real_form())
        j["terms"].push_back({{"order", en.order},
                              {"l", en.l},
                              {"k", en.k},
                              {"coeff_over_pi", coeff_str(en.coeff)}});
    if (fit) {
        j["fit"] = {{"samples", fit->sample_count},
                    {"max_residual", fit->max_fit_residual.str(3)},
                    {"max_heldout_residual", fit->max_heldout_residual.str(3)}};
    }
    return j.dump(1);
}

ParsedExpansion parse_expansion_json(const std::string& text) {
    json j = json::parse(text);
    ParsedExpansion p;
    p.walk = j.at("walk").get<std::string>();
    p.order = j.at("order").get<int>();
    int d = j.at("sqrt_d").get<int>();
    p.alpha_over_pi = FieldElement::parse(j.at("alpha_over_pi").get<std::string>(), d);
    const json& lj = j.at("lambda");
    if (lj.contains("gamma_over_pi")) {
        SymbolicConstant s =
            SymbolicConstant::rational(Rational::parse(lj.at("rational").get<std::string>())) +
            SymbolicConstant::over_pi(Rational::parse(lj.at("rational_over_pi").get<std::string>()),
                                      Rational::parse(lj.at("gamma_over_pi").get<std::string>()),
                                      Rational::parse(lj.at("log2_over_pi").get<std::string>()));
        p.lambda_exact = s;
    }
    for (const auto& tj : j.at("terms")) {
        RealFormEntry en;
        en.order = tj.at("order").get<int>();
        en.l = tj.at("l").get<int>();
        en.k = tj.at("k").get<int>();
        en.coeff = PiGraded::over_pi(
            ExactComplex(FieldElement::parse(tj.at("coeff_over_pi").get<std::string>(), d)));
        p.entries.push_back(en);
    }
    return p;
}

int cmd_expand(const RunConfig& cfg, std::ostream& out) {
    std::optional<ExpandResult> res;
    try {
        res = build_expansion(cfg);
    } catch (const std::domain_error& err) {
        out << "expand: " << err.what() << "\n";
        return kExitPrecision;
    }
    ExpandResult& r = *res;
    if (cfg.format == "structured")
        out << expansion_json(r.expansion, r.fit) << "\n";
    else
        out << expansion_table(r.expansion, r.fit);
    if (!r.checks_passed) {
        out << "structural checks FAILED (klhalf/degree/parity)\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_value(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    if (!is_simple_z2(*w)) {
        out << "value: exact values are available for z2-simple only\n";
        return kExitCheckFailed;
    }
    PotentialValue v = mccrea_whipple(cfg.at_x, cfg.at_y);
    if (cfg.exact) out << v.str() << "\n";
    out << v.eval(std::max<mpfr_prec_t>(cfg.precision, 160)).str(40) << "\n";
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    try {
        Real v = oracle_value(*w, cfg.method, cfg.at_x, cfg.at_y, cfg.precision, 1e-20);
        out << cfg.method << " a(" << cfg.at_x << "," << cfg.at_y << ") = " << v.str(30) << "\n";
    } catch (const std::runtime_error& err) {
        out << "oracle: " << err.what() << "\n";
        return kExitPrecision;
    }
    return kExitOk;
}

int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    std::vector<std::pair<long, long>> pts;
    if (!cfg.points_file.empty()) {
        std::ifstream in(cfg.points_file);
        if (!in) throw std::invalid_argument("oracle compare: cannot open " + cfg.points_file);
        json j;
        in >> j;
        for (const auto& p : j) pts.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
    } else {
        pts = {{1, 0}, {1, 1}, {3, 2}, {5, 0}, {4, 4}};
    }
    out << "point          sum                fourier            |diff|\n";
    double worst = 0;
    for (auto [x, y] : pts) {
        Real s = oracle_value(*w, "sum", x, y, cfg.precision, 1e-12);
        Real f = oracle_value(*w, "fourier", x, y, cfg.precision, 1e-20);
        double d = (s - f).abs().to_double();
        worst = std::max(worst, d);
        out << "(" << std::setw(4) << x << "," << std::setw(4) << y << ")  " << s.str(16) << "  "
            << f.str(16) << "  " << std::scientific << std::setprecision(2) << d << "\n"
            << std::defaultfloat;
    }
    out << "max |sum - fourier| = " << std::scientific << std::setprecision(3) << worst << "\n";
    return worst < 1e-6 ? kExitOk : kExitCheckFailed;
}

int cmd_constant(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    if (!is_simple_z2(*w)) {
        out << "constant: the explicit-constant scan uses exact z2-simple values\n";
        return kExitCheckFailed;
    }
    const long R = (long)cfg.rmax;
    const mpfr_prec_t P = std::max<mpfr_prec_t>(cfg.precision, 192);
    McCreaWhippleTable table;
    table.fill(R + 1);
    SymbolicConstant lam = SymbolicConstant::over_pi(Rational(0), Rational(2), Rational(3));
    Real lambda = lam.eval(P);
    Real invpi = Real::of(1L, P) / Real::pi(P);
    Real best(P);
    Real best_signed(P);
    long bx = 0, by = 0;
    for (long x = 1; x <= R; ++x) {
        for (long y = 0; y <= x; ++y) {
            long r2 = x * x + y * y;
            if (r2 > R * R) break;
            auto v = table.value(x, y).exact;
            Real a = Real::of(v->first, P) + Real::of(v->second, P) * invpi;
            Real dev = (a - log(Real::of(r2, P)) * invpi - lambda) * Real::of(r2, P);
            if (dev.abs() > best) {
                best = dev.abs();
                best_signed = dev;
                bx = x; by = y;
            }
        }
    }
    Real asym = invpi / 6L;
    out << "sup_{1<=|z|<=" << R << "} |z|^2 |a(z) - (2/pi) log|z| - lambda| = " << best.str(8)
        << "\n";
    out << "attained at z = (" << bx << "," << by << "), signed value " << best_signed.str(8)
        << "\n";
    out << "asymptotic comparison 1/(6 pi) = " << asym.str(8) << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    WalkPtr w = resolve_walk(cfg.walk);
    ExpandResult er = build_expansion(cfg);
    const Expansion& e = er.expansion;
    // oracle precision needed comfortably below the first omitted order
    double zmax = cfg.verify_hi;
    double needed_err = std::pow(zmax, -(double)(cfg.order + 2));
    mpfr_prec_t P = std::max<mpfr_prec_t>(cfg.precision,
                                          (mpfr_prec_t)((cfg.order + 3) * std::log2(zmax) + 96));
    double tol = needed_err * 1e-4;
    if (tol < 1e-70) {
        out << "verify: oracle precision insufficient for order " << cfg.order << "\n";
        return kExitPrecision;
    }
    // ray points: multiples of the basis direction (ray_x, ray_y)
    double step_abs = w->lattice_point(cfg.ray_x, cfg.ray_y).norm2().to_real(64).to_double();
    step_abs = std::sqrt(step_abs);
    std::vector<double> logr, logerr;
    out << "   |z|        error            bound(|z|^-" << cfg.order + 1 << ")\n";
    for (int i = 0; i < cfg.verify_points; ++i) {
        double target = cfg.verify_lo *
                        std::pow(cfg.verify_hi / cfg.verify_lo, i / (double)(cfg.verify_points - 1));
        long m = std::lround(target / step_abs);
        if (m < 1) m = 1;
        long bx = m * cfg.ray_x, by = m * cfg.ray_y;
        Cplx z = w->lattice_point(bx, by).to_cplx(P);
        Real zabs = z.abs();
        FourierOptions fo;
        fo.precision = P;
        fo.target_tol = tol;
        Real a = potential_fourier(*w, bx, by, fo).numeric->first;
        Real err = (a - e.evaluate(z, P)).abs();
        double le = err.to_double() > 0 ? std::log(err.to_double()) : -500.0;
        logr.push_back(std::log(zabs.to_double()));
        logerr.push_back(le);
        out << "  " << std::fixed << std::setprecision(1) << std::setw(6) << zabs.to_double()
            << "   " << std::scientific << std::setprecision(3) << err.to_double() << "    "
            << std::pow(zabs.to_double(), -(double)(cfg.order + 1)) << "\n"
            << std::defaultfloat;
    }
    // least-squares slope
    double n = logr.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < logr.size(); ++i) {
        sx += logr[i]; sy += logerr[i];
        sxx += logr[i] * logr[i]; sxy += logr[i] * logerr[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double pass_at = -(double)cfg.order + 0.3;
    out << "log-log decay slope: " << std::fixed << std::setprecision(2) << slope
        << "  (pass threshold " << pass_at << ")\n" << std::defaultfloat;
    return slope <= pass_at ? kExitOk : kExitCheckFailed;
}

int cmd_selftest_lemmas(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS" : "FAIL") << "  " << name << ": " << detail << "\n";
        if (!ok) ++failures;
    };

    // superpolynomial F-sum estimate: |direct - asymptotic| r^5 decreasing
    for (double s : {1.5, 2.0, 3.0}) {
        double prev = std::numeric_limits<double>::infinity();
        bool ok = true;
        std::ostringstream det;
        for (double r : {50.0, 100.0, 200.0, 400.0}) {
            FSumResult f = f_sum(s, 1, 1, r);
            double e = (f.direct - f.asymptotic).abs().to_double() * std::pow(r, 5);
            det << e << " ";
            if (e >= prev) ok = false;
            prev = e;
        }
        report("f_sum superpolynomial decay (s=" + std::to_string(s) + ")", ok,
               "|err| r^5: " + det.str());
    }
    // s = 1: direct - log r stabilizes
    {
        double c1 = (f_sum(1.0, 1, 1, 100).direct - f_sum(1.0, 1, 1, 100).asymptotic).to_double();
        double c2 = (f_sum(1.0, 1, 1, 1000).direct - f_sum(1.0, 1, 1, 1000).asymptotic).to_double();
        double c3 = (f_sum(1.0, 1, 1, 10000).direct - f_sum(1.0, 1, 1, 10000).asymptotic).to_double();
        bool ok = std::fabs(c1 - c2) < 1e-6 && std::fabs(c2 - c3) < 1e-6;
        report("f_sum s=1 constant drift", ok,
               "C(100)=" + std::to_string(c1) + " C(10^4)=" + std::to_string(c3));
    }
    // theta sum: closed form, shift invariance, n-scaling
    {
        std::array<double, 4> I{1, 0, 0, 1};
        ThetaSumResult t0 = theta_sum_check(I, {0, 0}, 100);
        ThetaSumResult tv = theta_sum_check(I, {0.37, -0.21}, 100);
        double rel = ((t0.lattice_sum - t0.closed_form) / t0.closed_form).abs().to_double();
        report("theta sum vs (pi n)/|A|", rel < 1e-10, "relative error " + std::to_string(rel));
        double shift = (t0.lattice_sum - tv.lattice_sum).abs().to_double();
        report("theta sum shift invariance", shift < 1e-10, "difference " + std::to_string(shift));
        double ratio = (theta_sum_check(I, {0, 0}, 4).lattice_sum /
                        theta_sum_check(I, {0, 0}, 1).lattice_sum).to_double();
        report("theta sum n-scaling", std::fabs(ratio - 4) < 2e-4,
               "sum(4)/sum(1) = " + std::to_string(ratio));
    }
    // multinomial CLT
    {
        MultinomialCheck m =
            multinomial_clt_check({Rational(1, 2), Rational(1, 2)}, 1000, {0, 0});
        double rel = ((m.exact - m.clt) / m.exact).abs().to_double();
        report("binomial CLT n=1000", rel < 1e-3, "relative error " + std::to_string(rel));
        MultinomialCheck m4 = multinomial_clt_check(
            {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}, 400,
            {10, -10, 0, 0});
        double rel4 = ((m4.exact - m4.clt) / m4.exact).abs().to_double();
        report("multinomial CLT n=400 shifted", rel4 < 1e-2, "relative error " + std::to_string(rel4));
    }
    // local CLT amplitude for the simple walk
    {
        WalkPtr w = WalkSpec::bundled("z2-simple");
        Real tau = local_clt_amplitude(*w, 128);
        Real expect = Real::of(2L, 128) / Real::pi(128);
        bool ok1 = (tau - expect).abs().to_double() < 1e-30;
        report("local CLT tau' = 2/pi", ok1, "tau' = " + tau.str(12));
        StepDistribution p100 = StepDistribution::compute(*w, 100);
        Real exact = Real::of(p100.prob(0, 0), 128);
        Real clt = local_clt(*w, 100, 0, 0, 128);
        double rel = ((exact - clt) / exact).abs().to_double();
        report("local CLT P_100(0) within 2%", rel < 0.02, "relative error " + std::to_string(rel));
    }
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace latpot::cli
