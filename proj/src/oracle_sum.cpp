// Direct summation of the potential: probability-space evolution of P_n plus an
// Euler-Maclaurin tail of the leading local-CLT term over the reachability
// slices, with optional Richardson extrapolation of the partial sums.
#include "latpot/oracle.hpp"
#include <cmath>
#include <numeric>

namespace latpot {

namespace {

// ---- Euler-Maclaurin over the family  c * t^{-p} [e^{-B/t}] ------------------

struct EMTerm {
    Real coef;
    Real p;        // power of 1/t
    bool has_exp;  // carries e^{-B/t}
};

std::vector<EMTerm> differentiate(const std::vector<EMTerm>& f, const Real& B, mpfr_prec_t P) {
    std::vector<EMTerm> out;
    for (const auto& t : f) {
        out.push_back({-(t.coef * t.p), t.p + Real::of(1L, P), t.has_exp});
        if (t.has_exp)
            out.push_back({t.coef * B, t.p + Real::of(2L, P), true});
    }
    return out;
}

Real eval_family(const std::vector<EMTerm>& f, const Real& B, const Real& t, mpfr_prec_t P) {
    Real acc(P);
    Real eb = exp(-(B / t));
    for (const auto& term : f) {
        Real v = term.coef * exp(-(term.p * log(t)));
        if (term.has_exp) v *= eb;
        acc += v;
    }
    return acc;
}

// Sum_{m >= 0} f(T0 + s m) for rapidly-decaying f, given the exact integral
// (1/s) Int_{T0}^inf f dt supplied by the caller.
Real em_sum(const std::vector<EMTerm>& f, const Real& B, const Real& T0, long s,
            const Real& integral_over_s, mpfr_prec_t P) {
    Real acc = integral_over_s + eval_family(f, B, T0, P) / 2L;
    std::vector<EMTerm> deriv = f;
    Real spow = Real::of(s, P);
    // B_2/2! h'(0), B_4/4! h'''(0), ... with h(m) = f(T0 + s m)
    static const std::pair<int, Rational> coeffs[] = {
        {1, Rational(1, 12)},     // B_2/2!
        {3, Rational(-1, 720)},   // B_4/4!
        {5, Rational(1, 30240)},  // B_6/6!
        {7, Rational(-1, 1209600)},
    };
    int level = 0;
    for (const auto& [order, c] : coeffs) {
        while (level < order) {
            deriv = differentiate(deriv, B, P);
            ++level;
        }
        Real h = eval_family(deriv, B, T0, P) * pow_si(spow, order);
        acc -= Real::of(c, P) * h;
    }
    return acc;
}

// Int_T^inf (1 - e^{-B/t})/t dt = gamma + log(B/T) + E1(B/T)
Real int_one_minus_exp_over_t(const Real& B, const Real& T, mpfr_prec_t P) {
    Real x = B / T;
    return Real::euler_gamma(P) + log(x) + expint_e1(x);
}

// Int_T^inf t^{-p} e^{-B/t} dt = B^{1-p} (Gamma(p-1) - Gamma(p-1, B/T)), p > 1
Real int_exp_family(const Real& p, const Real& B, const Real& T, mpfr_prec_t P) {
    Real pm1 = p - Real::of(1L, P);
    Real x = B / T;
    Real g = tgamma(pm1) - gamma_inc(pm1, x);
    return exp(-(pm1 * log(B))) * g;
}

// tail sum of tau' (1 - e^{-B/n})/n over n >= N, n == j (mod s)
Real tail_same_slice(const Real& tau, const Real& B, long N, long j, long s, mpfr_prec_t P) {
    if (B.is_zero()) return Real::of(0L, P);
    long M0 = (N - j + s - 1) / s;  // first m with j + s m >= N
    if (j + s * M0 <= 0) M0 += 1;
    Real T0 = Real::of(j + s * M0, P);
    std::vector<EMTerm> f{{tau, Real::of(1L, P), false}, {-tau, Real::of(1L, P), true}};
    Real integral = tau * int_one_minus_exp_over_t(B, T0, P) / (long)s;
    return em_sum(f, B, T0, s, integral, P);
}

// tau' [ sum_{n==j0} 1/n - sum_{n==jz} e^{-B/n}/n ], both over n >= N
Real tail_mixed_slices(const Real& tau, const Real& B, long N, long j0, long jz, long s,
                       mpfr_prec_t P) {
    long M0 = (N - j0 + s - 1) / s;
    long M1 = (N - jz + s - 1) / s;
    if (j0 + s * M0 <= 0) M0 += 1;
    if (jz + s * M1 <= 0) M1 += 1;
    Real T0 = Real::of(j0 + s * M0, P);
    Real T1 = Real::of(jz + s * M1, P);
    // paired integrals: (tau/s)[log(T1/T0) + gamma + log(B/T1) + E1(B/T1)]
    Real integral = tau * (log(T1 / T0) + int_one_minus_exp_over_t(B, T1, P)) / (long)s;
    std::vector<EMTerm> f0{{tau, Real::of(1L, P), false}};
    std::vector<EMTerm> f1{{tau, Real::of(1L, P), true}};
    // corrections of both progressions, with the joint integral attached to one
    Real a = em_sum(f0, Real::of(1L, P), T0, s, integral, P);
    Real b = em_sum(f1, B, T1, s, Real::of(0L, P), P);
    return a - b;
}

// ---- probability-space engines ----------------------------------------------

// independent-coordinates evolution for the simple Z^2 walk
// accumulates sum_{n<N} [p_n(0)^2 - p_n(u) p_n(v)] at checkpoints
std::vector<double> evolve_simple(long u, long v, const std::vector<long>& checkpoints) {
    long N = checkpoints.back();
    long reach = std::max(std::labs(u), std::labs(v));
    long M = reach + (long)(5.5 * std::sqrt((double)N)) + 8;
    std::vector<double> p((size_t)(2 * M + 1), 0.0), q(p.size());
    p[(size_t)M] = 1.0;
    std::vector<double> out;
    double acc = 0.0, comp = 0.0;
    auto kahan = [&](double x) {
        double yk = x - comp;
        double tk = acc + yk;
        comp = (tk - acc) - yk;
        acc = tk;
    };
    size_t next_cp = 0;
    for (long n = 0; n < N; ++n) {
        kahan(p[(size_t)M] * p[(size_t)M] - p[(size_t)(M + u)] * p[(size_t)(M + v)]);
        // p_{n+1}(m) = (p_n(m-1) + p_n(m+1))/2
        q[0] = p[1] / 2;
        q[p.size() - 1] = p[p.size() - 2] / 2;
        for (size_t i = 1; i + 1 < p.size(); ++i) q[i] = (p[i - 1] + p[i + 1]) / 2;
        std::swap(p, q);
        while (next_cp < checkpoints.size() && n + 1 == checkpoints[next_cp]) {
            out.push_back(acc);
            ++next_cp;
        }
    }
    return out;
}

// generic evolution over the basis-coordinate box
std::vector<double> evolve_general(const WalkSpec& w, long zx, long zy,
                                   const std::vector<long>& checkpoints) {
    long N = checkpoints.back();
    long maxstep = 0;
    for (const auto& s : w.steps())
        maxstep = std::max(maxstep, std::max(std::labs(s.bx), std::labs(s.by)));
    long R = std::max(std::labs(zx), std::labs(zy)) +
             (long)(5.5 * maxstep * std::sqrt((double)N)) + 8;
    const long W = 2 * R + 1;
    std::vector<double> p((size_t)W * W, 0.0), q(p.size());
    auto idx = [&](long x, long y) { return (size_t)(x + R) * W + (y + R); };
    p[idx(0, 0)] = 1.0;
    std::vector<std::pair<std::pair<long, long>, double>> steps;
    for (const auto& s : w.steps()) steps.push_back({{s.bx, s.by}, s.p.to_double()});
    std::vector<double> out;
    double acc = 0.0, comp = 0.0;
    auto kahan = [&](double x) {
        double yk = x - comp;
        double tk = acc + yk;
        comp = (tk - acc) - yk;
        acc = tk;
    };
    size_t next_cp = 0;
    for (long n = 0; n < N; ++n) {
        kahan(p[idx(0, 0)] - p[idx(zx, zy)]);
        std::fill(q.begin(), q.end(), 0.0);
        for (const auto& [mv, pr] : steps) {
            auto [dx, dy] = mv;
            long x0 = std::max(-R, -R - dx), x1 = std::min(R, R - dx);
            long y0 = std::max(-R, -R - dy), y1 = std::min(R, R - dy);
            for (long x = x0; x <= x1; ++x) {
                const double* src = &p[idx(x, y0)];
                double* dst = &q[idx(x + dx, y0 + dy)];
                for (long y = 0; y <= y1 - y0; ++y) dst[y] += pr * src[y];
            }
        }
        std::swap(p, q);
        while (next_cp < checkpoints.size() && n + 1 == checkpoints[next_cp]) {
            out.push_back(acc);
            ++next_cp;
        }
    }
    return out;
}

}  // namespace

PotentialValue potential_direct_sum(const WalkSpec& walk, long bx, long by,
                                    const DirectSumOptions& opts) {
    const mpfr_prec_t P = opts.precision + 32;
    if (bx == 0 && by == 0)
        return PotentialValue::numeric_value(Real::of(0L, opts.precision),
                                             Real::of(0L, opts.precision));
    ExactComplex zc = walk.lattice_point(bx, by);
    double zabs2 = zc.norm2().to_real(64).to_double();
    long N = opts.N > 0 ? opts.N : (long)std::ceil(opts.c_factor * std::max(1.0, zabs2));
    N = std::max(N, 400L);

    SpaceTimeLattice Y = SpaceTimeLattice::detect(walk);
    auto jz_opt = Y.slice_residue(bx, by);
    if (!jz_opt)
        throw std::invalid_argument("potential_direct_sum: point is not reachable");
    long jz = *jz_opt, j0 = 0, s = Y.period;
    Real tau = local_clt_amplitude(walk, P);
    Real B = gaussian_form(walk, bx, by, P);

    // checkpoints for Richardson extrapolation (geometric, slice-aligned so the
    // parity oscillation of the partial sums does not pollute the error series)
    int levels = std::max(0, opts.richardson);
    std::vector<long> cps;
    for (int i = levels; i >= 0; --i) {
        long Ni = (long)std::llround((double)N / std::pow(2.0, i));
        Ni -= ((Ni % s) + s) % s;
        if (Ni < 8 * s) Ni = 8 * s;
        if (cps.empty() || Ni > cps.back()) cps.push_back(Ni);
    }
    bool simple = is_simple_z2(walk);
    std::vector<double> partials =
        simple ? evolve_simple(bx + by, bx - by, cps) : evolve_general(walk, bx, by, cps);

    std::vector<Real> vals;
    for (size_t i = 0; i < cps.size(); ++i) {
        Real tail = (j0 % s == jz % s)
                        ? tail_same_slice(tau, B, cps[i], jz, s, P)
                        : tail_mixed_slices(tau, B, cps[i], j0, jz, s, P);
        vals.push_back(Real::of(partials[i], P) + tail);
    }
    // Neville extrapolation to x = 1/N -> 0
    Real est = vals.back();
    Real extrap_err(P);
    if (vals.size() > 1) {
        std::vector<Real> x, f = vals;
        for (long cp : cps) x.push_back(Real::of(1L, P) / Real::of(cp, P));
        for (size_t j = 1; j < f.size(); ++j)
            for (size_t i = f.size(); i-- > j;)
                f[i] = (x[i] * f[i - 1] - x[i - j] * f[i]) / (x[i] - x[i - j]);
        extrap_err = (f.back() - est).abs();
        est = f.back();
    }
    // heuristic error bound: CLT correction scale plus extrapolation movement
    double Nmin = (double)cps.front();
    Real herr = tau * (Real::of(1L, P) + B) * Real::of(8.0, P) / Real::of(Nmin * Nmin, P);
    if (vals.size() > 1) {
        double l = (double)cps.size();
        herr = extrap_err * 2L + herr * pow_si(Real::of(Nmin, P) / Real::of((double)N, P), (long)l);
    }
    Real out(opts.precision), err(opts.precision);
    mpfr_set(out.raw(), est.raw(), MPFR_RNDN);
    mpfr_set(err.raw(), herr.raw(), MPFR_RNDN);
    return PotentialValue::numeric_value(out, err);
}

FSumResult f_sum(double s, long j, long q, double r, mpfr_prec_t prec) {
    if (q < 1 || j < 1 || j > q) throw std::invalid_argument("f_sum: need 1 <= j <= q");
    if (r <= 0) throw std::invalid_argument("f_sum: r > 0");
    const mpfr_prec_t P = prec + 32;
    Real rr = Real::of(r, P);
    Real sp = Real::of(s, P);
    long N0 = std::max(500L, 20L * (long)std::ceil(std::sqrt(r)));
    N0 = j + q * ((N0 - j) / q + 1);
    Real direct(P);
    for (long n = j; n < N0; n += q) {
        Real nn = Real::of(n, P);
        Real ex = exp(-(rr / nn));
        if (s == 1.0)
            direct += (ex - Real::of(1L, P)) / nn;
        else
            direct += exp(-(sp * log(nn))) * ex;
    }
    // Euler-Maclaurin tail from N0
    Real T0 = Real::of(N0, P);
    Real tail(P);
    if (s == 1.0) {
        std::vector<EMTerm> f{{Real::of(1L, P), Real::of(1L, P), true},
                              {Real::of(-1L, P), Real::of(1L, P), false}};
        Real integral = -int_one_minus_exp_over_t(rr, T0, P) / q;
        tail = em_sum(f, rr, T0, q, integral, P);
    } else {
        std::vector<EMTerm> f{{Real::of(1L, P), sp, true}};
        Real integral = int_exp_family(sp, rr, T0, P) / q;
        tail = em_sum(f, rr, T0, q, integral, P);
    }
    direct += tail;
    Real asym(P);
    if (s == 1.0)
        asym = log(rr) / q;
    else
        asym = tgamma(sp - Real::of(1L, P)) / (Real::of(q, P) * exp((sp - Real::of(1L, P)) * log(rr)));
    Real d_out(prec), a_out(prec);
    mpfr_set(d_out.raw(), direct.raw(), MPFR_RNDN);
    mpfr_set(a_out.raw(), asym.raw(), MPFR_RNDN);
    return {d_out, a_out};
}

}  // namespace latpot
