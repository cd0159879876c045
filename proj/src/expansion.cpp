#include "latpot/expansion.hpp"
#include "latpot/exact_values.hpp"
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace latpot {

namespace {

using Affine = UnresolvedExpansion::Affine;

Affine aff_add(const Affine& a, const Affine& b) {
    Affine r = a;
    r.c0 = r.c0 + b.c0;
    for (const auto& [id, c] : b.lin) {
        auto it = r.lin.find(id);
        if (it == r.lin.end()) r.lin[id] = c;
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.lin.erase(it);
        }
    }
    return r;
}

Affine aff_scale(const Affine& a, const ExactComplex& s) {
    Affine r;
    r.c0 = a.c0 * s;
    for (const auto& [id, c] : a.lin) {
        ExactComplex t = c * s;
        if (!t.is_zero()) r.lin[id] = t;
    }
    return r;
}

Affine aff_subst(const Affine& a, const std::map<int, FieldElement>& sol) {
    Affine r;
    r.c0 = a.c0;
    for (const auto& [id, c] : a.lin) {
        auto it = sol.find(id);
        if (it == sol.end()) r.lin[id] = c;
        else r.c0 = r.c0 + c * ExactComplex(it->second);
    }
    return r;
}

}  // namespace

UnresolvedExpansion solve_expansion(WalkPtr walk, int K) {
    if (K < 2) throw std::invalid_argument("solve_expansion: K >= 2 required");
    if (!walk->is_spherical())
        throw std::domain_error("solve_expansion: walk is not spherical");
    UnresolvedExpansion u;
    u.walk = walk;
    u.order = K;
    u.alpha_pi = walk->tau_constant().c1() * ExactComplex(Rational(1, 2));

    const ExactComplex mu11 = walk->moment(1, 1);
    const bool refl = walk->is_reflection_symmetric();
    const int q = walk->rotational_symmetry_order();

    if (!potential_operator(*walk, 1).is_zero())
        throw std::domain_error("solve_expansion: walk is not balanced");
    std::vector<DiffOperator> ops(K + 3);
    for (int n = 2; n <= K + 2; ++n) ops[n] = potential_operator(*walk, n);

    for (int m = 1; m <= K; ++m) {
        // residual of the known part at level -(m+2)
        std::map<std::pair<int, int>, Affine> res;
        auto accumulate = [&](int k, int l, const Affine& contrib) {
            if (contrib.is_zero()) return;
            auto it = res.find({k, l});
            if (it == res.end()) res.emplace(std::make_pair(k, l), contrib);
            else {
                it->second = aff_add(it->second, contrib);
                if (it->second.is_zero()) res.erase(it);
            }
        };
        for (int n = 2; n <= m + 2; ++n) {
            const int src_level = -(m + 2 - n);
            if (src_level == 0) {
                // operator image of alpha * log(z zbar): only pure dz^n / dzb^n act
                ExactComplex cz = ops[n].coefficient(n, 0);
                if (!cz.is_zero())
                    accumulate(-n, 0, Affine{u.alpha_pi * cz * ExactComplex(Rational(falling_factorial(-1, n - 1))), {}});
                ExactComplex cb = ops[n].coefficient(0, n);
                if (!cb.is_zero())
                    accumulate(0, -n, Affine{u.alpha_pi * cb * ExactComplex(Rational(falling_factorial(-1, n - 1))), {}});
                continue;
            }
            for (const auto& [kl, av] : u.terms) {
                auto [k, l] = kl;
                if (k + l != src_level) continue;
                for (const auto& [ab, c] : ops[n].coefficients()) {
                    auto [a, b] = ab;
                    Integer f = falling_factorial(k, (unsigned)a) * falling_factorial(l, (unsigned)b);
                    if (f == 0) continue;
                    accumulate(k - a, l - b, aff_scale(av, c * ExactComplex(Rational(f))));
                }
            }
        }
        // read off level -m coefficients
        for (const auto& [kl, delta] : res) {
            auto [kp, lp] = kl;
            int k = kp + 1, l = lp + 1;
            if (k + l != -m) continue;  // only the matching level feeds this step
            if (k != 0 && l != 0) {
                ExactComplex denom = mu11 * ExactComplex(Rational((long)k * (long)l));
                u.terms[{k, l}] = aff_scale(delta, -(denom.inverse()));
            } else if (!delta.is_zero()) {
                throw std::logic_error("solve_expansion: nonzero residual in a harmonic slot");
            }
        }
        for (const auto& [kl, delta] : res)
            if (kl.first < 0 && kl.second < 0 && !delta.is_zero())
                throw std::logic_error("solve_expansion: residual with both exponents negative");
        // harmonic unknowns appear only at orders divisible by the rotation order
        if (m % q == 0) {
            int idr = UnresolvedExpansion::unknown_id(m, false);
            u.unknown_ids.push_back(idr);
            Affine pos, neg;
            pos.lin[idr] = ExactComplex(1);
            neg.lin[idr] = ExactComplex(1);
            if (!refl) {
                int idi = UnresolvedExpansion::unknown_id(m, true);
                u.unknown_ids.push_back(idi);
                pos.lin[idi] = ExactComplex::i();
                neg.lin[idi] = -ExactComplex::i();
            }
            u.terms[{0, -m}] = pos;
            u.terms[{-m, 0}] = neg;
        }
        for (auto it = u.terms.begin(); it != u.terms.end();)
            it = it->second.is_zero() ? u.terms.erase(it) : std::next(it);
    }
    return u;
}

Expansion UnresolvedExpansion::resolve(const std::map<int, FieldElement>& values) const {
    std::map<std::pair<int, int>, PiGraded> out;
    for (const auto& [kl, av] : terms) {
        Affine s = aff_subst(av, values);
        if (!s.lin.empty())
            throw std::invalid_argument("resolve: unknown " +
                                        std::to_string(s.lin.begin()->first) + " not fixed");
        if (!s.c0.is_zero()) out[kl] = PiGraded::over_pi(s.c0);
    }
    return Expansion(walk, order, PiGraded::over_pi(alpha_pi), std::move(out));
}

Expansion fix_harmonic_exact_z2(const UnresolvedExpansion& u) {
    if (!is_simple_z2(*u.walk))
        throw std::invalid_argument("fix_harmonic_exact_z2: walk is not the simple Z^2 walk");
    const int K = u.order;
    DiagonalSeries series = odd_harmonic_asymptotics(K + 2);
    if (u.alpha_pi != ExactComplex(1))
        throw std::logic_error("fix_harmonic_exact_z2: unexpected alpha");

    // a(m+im) = alpha log(2 m^2) + lambda + sum-levels  must match  (4/pi) S(m)
    // log m matching is alpha = 1/pi by construction; the constant term gives lambda.
    SymbolicConstant lam =
        (series.constant * Rational(4)).div_pi() -
        SymbolicConstant::over_pi(Rational(0), Rational(0), Rational(1));  // alpha_pi * log2 / pi

    const ExactComplex opi(FieldElement(1), FieldElement(1));    // 1+i
    const ExactComplex omi(FieldElement(1), FieldElement(-1));   // 1-i
    std::map<int, FieldElement> sol;
    for (int n = 1; n <= K; ++n) {
        Affine acc;
        for (const auto& [kl, av] : u.terms) {
            auto [k, l] = kl;
            if (k + l != -n) continue;
            acc = aff_add(acc, aff_scale(aff_subst(av, sol), opi.pow_int(k) * omi.pow_int(l)));
        }
        Rational sn(0);
        auto it = series.inv_coeffs.find(n);
        if (it != series.inv_coeffs.end()) sn = Rational(4) * it->second;
        ExactComplex target{FieldElement(sn)};
        if (acc.lin.empty()) {
            if (acc.c0 != target)
                throw std::logic_error("fix_harmonic_exact_z2: level " + std::to_string(n) +
                                       " does not match the diagonal series");
        } else {
            if (acc.lin.size() != 1)
                throw std::logic_error("fix_harmonic_exact_z2: level " + std::to_string(n) +
                                       " has several free unknowns");
            auto [id, coef] = *acc.lin.begin();
            ExactComplex x = (target - acc.c0) / coef;
            if (!x.is_real())
                throw std::logic_error("fix_harmonic_exact_z2: non-real harmonic solution");
            sol[id] = x.real();
        }
    }
    Expansion e = u.resolve(sol);
    e.set_lambda(lam);
    return e;
}

Real Expansion::lambda_value(mpfr_prec_t prec) const {
    if (lambda_exact_) return lambda_exact_->eval(prec);
    if (lambda_numeric_) return lambda_numeric_->first;
    throw std::logic_error("Expansion: lambda not set");
}

Real Expansion::evaluate(const Cplx& z, mpfr_prec_t prec) const {
    mpfr_prec_t P = prec + 32;
    Cplx zz{Real(P), Real(P)};
    mpfr_set(zz.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_set(zz.im.raw(), z.im.raw(), MPFR_RNDN);
    if (zz.re.is_zero() && zz.im.is_zero())
        throw std::invalid_argument("Expansion::evaluate: z = 0");
    Cplx zb = zz.conj();
    Real acc = alpha_.eval(P).re * log(zz.norm2());
    acc += lambda_value(P);
    for (const auto& [kl, c] : terms_) {
        Cplx mono = zz.pow_int(kl.first) * zb.pow_int(kl.second);
        acc += (c.eval(P) * mono).re;
    }
    Real out(prec);
    mpfr_set(out.raw(), acc.raw(), MPFR_RNDN);
    return out;
}

RealFormTable Expansion::to_real_form() const {
    RealFormTable table;
    for (const auto& [kl, c] : terms_) {
        auto [k, l] = kl;
        if (k < l) continue;
        if (k == l)
            throw std::domain_error("to_real_form: diagonal term z^k zbar^k present");
        auto mirror = terms_.find({l, k});
        if (mirror == terms_.end() || mirror->second != c.conj())
            throw std::domain_error("to_real_form: conjugate symmetry violated");
        PiGraded twice = c * ExactComplex(2);
        if (!twice.c0().imag().is_zero() || !twice.c1().imag().is_zero())
            throw std::domain_error("to_real_form: non-real coefficient");
        table.push_back(RealFormEntry{k + l, k - l, -2 * l, twice});
    }
    std::sort(table.begin(), table.end(), [](const RealFormEntry& a, const RealFormEntry& b) {
        if (a.order != b.order) return a.order > b.order;
        return a.l < b.l;
    });
    return table;
}

std::vector<Term> Expansion::as_terms() const {
    std::vector<Term> out;
    out.push_back(Term{alpha_, 0, 0, true});
    for (const auto& [kl, c] : terms_)
        out.push_back(Term{c, kl.first, kl.second, false});
    return out;
}

bool check_klhalf(const Expansion& e) {
    for (const auto& [kl, c] : e.terms())
        if (kl.first < 0 && kl.second < 0 && !c.is_zero()) return false;
    return true;
}

bool check_degree_bounds(const Expansion& e, bool reversible) {
    for (const auto& entry : e.to_real_form()) {
        int k = -entry.order;
        int bound = reversible ? 3 * k : 4 * k;  // 4k+2-d and 3k+2-d with d = 2
        if (entry.k > bound) return false;
    }
    return true;
}

bool check_parity(const Expansion& e, bool reversible) {
    if (!reversible) return true;
    for (const auto& [kl, c] : e.terms())
        if ((kl.first + kl.second) % 2 != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// numeric fit

namespace {

// least squares via modified Gram-Schmidt QR with column scaling
std::vector<Real> least_squares(std::vector<std::vector<Real>> A, std::vector<Real> b,
                                mpfr_prec_t P) {
    const size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
    if (m < n) throw std::invalid_argument("least_squares: underdetermined");
    std::vector<Real> scale(n, Real::of(1L, P));
    for (size_t j = 0; j < n; ++j) {
        Real s = Real::of(0L, P);
        for (size_t i = 0; i < m; ++i) s += A[i][j] * A[i][j];
        s = sqrt(s);
        if (s.is_zero()) throw std::domain_error("least_squares: zero column");
        scale[j] = s;
        for (size_t i = 0; i < m; ++i) A[i][j] = A[i][j] / s;
    }
    // MGS: A = QR
    std::vector<std::vector<Real>> R(n, std::vector<Real>(n, Real::of(0L, P)));
    for (size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (size_t i = 0; i < j; ++i) {
                Real dot = Real::of(0L, P);
                for (size_t r = 0; r < m; ++r) dot += A[r][i] * A[r][j];
                R[i][j] += dot;
                for (size_t r = 0; r < m; ++r) A[r][j] -= A[r][i] * dot;
            }
        }
        Real nrm = Real::of(0L, P);
        for (size_t r = 0; r < m; ++r) nrm += A[r][j] * A[r][j];
        nrm = sqrt(nrm);
        if (nrm.is_zero()) throw std::domain_error("least_squares: rank deficient");
        R[j][j] = nrm;
        for (size_t r = 0; r < m; ++r) A[r][j] = A[r][j] / nrm;
    }
    // x = R^{-1} Q^T b
    std::vector<Real> y(n, Real::of(0L, P));
    for (size_t j = 0; j < n; ++j)
        for (size_t r = 0; r < m; ++r) y[j] += A[r][j] * b[r];
    std::vector<Real> x(n, Real::of(0L, P));
    for (size_t j = n; j-- > 0;) {
        Real s = y[j];
        for (size_t i = j + 1; i < n; ++i) s -= R[j][i] * x[i];
        x[j] = s / R[j][j];
    }
    for (size_t j = 0; j < n; ++j) x[j] = x[j] / scale[j];
    return x;
}

struct SamplePoint {
    long bx, by;
    long weight;
};

// canonical orbit representative under the walk's exact symmetries
std::pair<long, long> canonical_point(const WalkSpec& w, long bx, long by, int q, bool refl) {
    ExactComplex z = w.lattice_point(bx, by);
    std::optional<ExactComplex> zeta = rotation_root(q, w.d());
    std::vector<ExactComplex> orbit{z};
    if (zeta && q > 1)
        for (int i = 1; i < q; ++i) orbit.push_back(orbit.back() * (*zeta));
    if (refl) {
        size_t base = orbit.size();
        for (size_t i = 0; i < base; ++i) orbit.push_back(orbit[i].conj());
    }
    std::pair<long, long> best{bx, by};
    bool have = false;
    for (const auto& p : orbit) {
        try {
            auto c = w.basis_coords(p);
            if (!have || c < best) { best = c; have = true; }
        } catch (const std::exception&) {
            // symmetry image off the declared lattice; skip
        }
    }
    return best;
}

std::vector<SamplePoint> build_samples(const WalkSpec& w, const std::vector<double>& radii,
                                       int rays) {
    double e1x = w.basis1().real().to_real(64).to_double();
    double e1y = w.basis1().imag().to_real(64).to_double();
    double e2x = w.basis2().real().to_real(64).to_double();
    double e2y = w.basis2().imag().to_real(64).to_double();
    double det = e1x * e2y - e1y * e2x;
    int q = w.rotational_symmetry_order();
    bool refl = w.is_reflection_symmetric();
    std::map<std::pair<long, long>, long> weight;
    double rmin = radii.empty() ? 0 : *std::min_element(radii.begin(), radii.end());
    for (double r : radii) {
        for (int j = 0; j < rays; ++j) {
            double th = 2 * 3.14159265358979312 * j / rays;
            double zx = r * std::cos(th), zy = r * std::sin(th);
            long bx = std::lround((zx * e2y - zy * e2x) / det);
            long by = std::lround((e1x * zy - e1y * zx) / det);
            if (bx == 0 && by == 0) continue;
            double px = bx * e1x + by * e2x, py = bx * e1y + by * e2y;
            if (std::hypot(px, py) < 0.7 * rmin) continue;
            weight[canonical_point(w, bx, by, q, refl)] += 1;
        }
    }
    std::vector<SamplePoint> out;
    for (const auto& [p, wt] : weight) out.push_back({p.first, p.second, wt});
    return out;
}

}  // namespace

std::pair<Expansion, FitReport> fit_harmonic_numeric(const UnresolvedExpansion& u,
                                                     const OracleFn& oracle,
                                                     const FitOptions& opts) {
    const WalkSpec& w = *u.walk;
    const mpfr_prec_t P = opts.precision;
    FitReport report;
    report.lambda = Real(P);
    report.max_fit_residual = Real(P);
    report.max_heldout_residual = Real(P);

    std::vector<int> ids = u.unknown_ids;
    std::sort(ids.begin(), ids.end());
    std::vector<SamplePoint> samples = build_samples(w, opts.radii, opts.rays);
    report.sample_count = (int)samples.size();
    if ((int)samples.size() < (int)ids.size() + 1)
        throw std::domain_error("fit_harmonic_numeric: not enough sample points");

    Real invpi = Real::of(1L, P) / Real::pi(P);
    Cplx alpha_c = u.alpha_pi.to_cplx(P);
    std::vector<std::vector<Real>> A;
    std::vector<Real> b;
    std::vector<Real> raw_rhs;
    std::vector<std::pair<long, long>> pts;
    for (const auto& s : samples) {
        Cplx z = w.lattice_point(s.bx, s.by).to_cplx(P);
        Cplx zb = z.conj();
        Real base = alpha_c.re * invpi * log(z.norm2());
        Real rhs = oracle(s.bx, s.by, P) - base;
        std::vector<Real> row(1 + ids.size(), Real::of(0L, P));
        row[0] = Real::of(1L, P);
        for (const auto& [kl, av] : u.terms) {
            Cplx mono = z.pow_int(kl.first) * zb.pow_int(kl.second);
            if (!av.c0.is_zero())
                rhs -= (av.c0.to_cplx(P) * mono).re * invpi;
            for (const auto& [id, c] : av.lin) {
                size_t idx = 1 + (std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
                row[idx] += (c.to_cplx(P) * mono).re * invpi;
            }
        }
        Real rootw = sqrt(Real::of(s.weight, P));
        raw_rhs.push_back(rhs);
        pts.push_back({s.bx, s.by});
        for (auto& v : row) v *= rootw;
        A.push_back(std::move(row));
        b.push_back(rhs * rootw);
    }
    std::vector<Real> x = least_squares(A, b, P);

    report.lambda = x[0];
    for (size_t i = 0; i < ids.size(); ++i) report.fitted[ids[i]] = x[1 + i];
    // fit residuals (unweighted)
    for (size_t r = 0; r < A.size(); ++r) {
        Real pred = Real::of(0L, P);
        Real rootw = sqrt(Real::of(samples[r].weight, P));
        for (size_t j = 0; j < x.size(); ++j) pred += (A[r][j] / rootw) * x[j];
        Real res = (pred - raw_rhs[r]).abs();
        if (res > report.max_fit_residual) report.max_fit_residual = res;
    }
    report.lambda_uncertainty = report.max_fit_residual;

    // rational reconstruction in units of 1/pi (d = 1) or sqrt(d)/pi
    std::map<int, FieldElement> values;
    Real unit = w.d() > 1 ? sqrt(Real::of((long)w.d(), P)) : Real::of(1L, P);
    for (int id : ids) {
        Real scaled = report.fitted[id] / unit;
        auto q = rational_reconstruct(scaled, opts.max_denominator);
        if (q) {
            FieldElement v = w.d() > 1 ? FieldElement(Rational(0), *q, w.d()) : FieldElement(*q);
            values[id] = v;
            report.reconstructed[id] = v;
        } else {
            report.failed.push_back(id);
        }
    }
    if (!report.failed.empty())
        throw std::domain_error("fit_harmonic_numeric: rational reconstruction failed for " +
                                std::to_string(report.failed.size()) + " coefficient(s)");

    Expansion full = u.resolve(values);
    // held-out verification against the oracle
    full.set_lambda(report.lambda, report.lambda_uncertainty);
    std::vector<SamplePoint> held = build_samples(w, opts.heldout_radii, opts.rays);
    for (const auto& s : held) {
        Cplx z = w.lattice_point(s.bx, s.by).to_cplx(P);
        Real diff = (oracle(s.bx, s.by, P) - full.evaluate(z, P)).abs();
        if (diff > report.max_heldout_residual) report.max_heldout_residual = diff;
    }

    // truncate back to the reported order
    int K_report = u.order - opts.solve_margin;
    if (K_report < 2) K_report = u.order;
    std::map<std::pair<int, int>, PiGraded> kept;
    for (const auto& [kl, c] : full.terms())
        if (kl.first + kl.second >= -K_report) kept[kl] = c;
    Expansion out(u.walk, K_report, full.alpha(), std::move(kept));
    out.set_lambda(report.lambda, report.lambda_uncertainty);
    return {std::move(out), std::move(report)};
}

}  // namespace latpot
