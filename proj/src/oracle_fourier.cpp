// Quadrature of the pseudo-Fourier representation
//   a(z) = (2 pi)^{-2} Int (1 - e^{-i<t,z>}) / (1 - phat(t)) d2t
// over the dual cell in lattice-basis coordinates.  The inner integral is done
// by residues when every step moves the second basis coordinate by at most 1
// (true for the bundled walks); the generic fallback is tensor Gauss-Legendre
// with a polar grid around the origin.
#include "latpot/oracle.hpp"
#include <algorithm>
#include <cmath>
#include <mutex>

namespace latpot {

namespace {

// ---- Gauss-Legendre nodes on [-1,1], cached per (order, precision) ----------

struct GLRule {
    std::vector<Real> x, w;
};

const GLRule& gl_rule(int n, mpfr_prec_t prec) {
    static std::map<std::pair<int, long>, GLRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, (long)prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GLRule rule;
    mpfr_prec_t P = prec + 64;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess
        Real x = Real::of(std::cos(3.14159265358979312 * (i + 0.75) / (n + 0.5)), P);
        Real dp(P);
        for (int it2 = 0; it2 < 200; ++it2) {
            // Legendre recurrence for P_n(x) and P_n'(x)
            Real p0 = Real::of(1L, P), p1 = x;
            for (int k = 2; k <= n; ++k)
                std::tie(p0, p1) = std::make_pair(
                    p1, (x * p1 * (2 * k - 1) - p0 * (k - 1)) / (long)k);
            dp = (x * p1 - p0) * (long)n / (x * x - Real::of(1L, P));
            Real dx = p1 / dp;
            x -= dx;
            if (dx.abs() < pow_si(Real::of(2L, P), -(long)(P - 8))) break;
        }
        Real w = Real::of(2L, P) / ((Real::of(1L, P) - x * x) * dp * dp);
        rule.x.push_back(x);
        rule.w.push_back(w);
        if (2 * i + 1 < n) {  // mirror node
            rule.x.push_back(-x);
            rule.w.push_back(w);
        }
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

// ---- walk symbol in basis coordinates ---------------------------------------

struct Symbol {
    // steps grouped by the second basis coordinate
    struct Part {
        long m;
        Rational p;
    };
    std::vector<Part> up, mid, down;  // by = +1, 0, -1
    std::vector<std::pair<std::pair<long, long>, Rational>> all;
    bool reducible = true;

    static Symbol build(const WalkSpec& w) {
        Symbol s;
        for (const auto& st : w.steps()) {
            s.all.push_back({{st.bx, st.by}, st.p});
            if (st.by == 1) s.up.push_back({st.bx, st.p});
            else if (st.by == 0) s.mid.push_back({st.bx, st.p});
            else if (st.by == -1) s.down.push_back({st.bx, st.p});
            else s.reducible = false;
        }
        if (s.up.empty() || s.down.empty()) s.reducible = false;
        return s;
    }

    // phat(t1, t2) = sum p e^{i(bx t1 + by t2)}
    Cplx phat(const Cplx& e1, const Cplx& e2, mpfr_prec_t P) const {
        Cplx acc(P);
        for (const auto& [mn, p] : all)
            acc = acc + e1.pow_int(mn.first) * e2.pow_int(mn.second) * Real::of(p, P);
        return acc;
    }
};

Cplx part_sum(const std::vector<Symbol::Part>& parts, const Cplx& eit, mpfr_prec_t P) {
    Cplx acc(P);
    for (const auto& q : parts)
        acc = acc + eit.pow_int(q.m) * Real::of(q.p, P);
    return acc;
}

// residue of the inner integral: (1/2pi) Int e^{i y s} / (1 - A e^{is} - B - C e^{-is}) ds
// for y >= 0, via the root of -A w^2 + (1-B) w - C inside the unit circle
Cplx inner_green(const Cplx& A, const Cplx& B, const Cplx& C, long y, mpfr_prec_t P) {
    Cplx one{Real::of(1L, P), Real::of(0L, P)};
    Cplx oneB = one - B;
    Cplx disc = csqrt(oneB * oneB - A * C * Real::of(4L, P));
    Cplx s1 = oneB + disc, s2 = oneB - disc;
    Cplx s = (s1.norm2() > s2.norm2()) ? s1 : s2;  // the stable (large) branch
    Cplx r_big = s / (A * Real::of(2L, P));
    Cplx r_small = (C * Real::of(2L, P)) / s;
    Cplx w = (r_small.norm2() <= r_big.norm2()) ? r_small : r_big;
    Cplx qp = oneB - A * w * Real::of(2L, P);
    return w.pow_int(y) / qp;
}

struct Reduced1D {
    const Symbol& sym;
    long x, y;
    mpfr_prec_t P;

    // integrand F(t) = G(t,0) - e^{-i x t} G(t,-y)
    Cplx F(const Real& t) const {
        Cplx eit = cis(t);
        Cplx A = part_sum(sym.up, eit, P);
        Cplx B = part_sum(sym.mid, eit, P);
        Cplx C = part_sum(sym.down, eit, P);
        Cplx g0 = inner_green(A, B, C, 0, P);
        Cplx gy = (y >= 0) ? inner_green(C, B, A, y, P)   // G(t,-y) = swapped walk at +y
                           : inner_green(A, B, C, -y, P);
        Cplx phase = cis(-t * (long)x);
        return g0 - phase * gy;
    }
};

// generic 2-D integrand (1 - e^{-i<t,z>}) / (1 - phat)
struct Full2D {
    const Symbol& sym;
    long x, y;
    mpfr_prec_t P;
    Cplx value(const Real& t1, const Real& t2) const {
        Cplx e1 = cis(t1), e2 = cis(t2);
        Cplx one{Real::of(1L, P), Real::of(0L, P)};
        Cplx num = one - cis(-(t1 * x + t2 * y));
        return num / (one - sym.phat(e1, e2, P));
    }
};

}  // namespace

PotentialValue potential_fourier(const WalkSpec& walk, long bx, long by,
                                 const FourierOptions& opts) {
    if (bx == 0 && by == 0) {
        return PotentialValue::numeric_value(Real::of(0L, opts.precision), Real::of(0L, opts.precision));
    }
    const mpfr_prec_t P = opts.precision + 48;
    Symbol sym = Symbol::build(walk);
    Real tol = Real::of(opts.target_tol, P);
    Real pi = Real::pi(P);

    if (sym.reducible && !opts.force_2d) {
        Reduced1D f{sym, bx, by, P};
        const GLRule& rule = gl_rule(48, P);
        auto integrate = [&](int panels) {
            Real acc(P);
            for (int j = 0; j < panels; ++j) {
                Real a = pi * (long)j / (long)panels;
                Real b = pi * (long)(j + 1) / (long)panels;
                Real mid = (a + b) / 2L, half = (b - a) / 2L;
                for (size_t i = 0; i < rule.x.size(); ++i) {
                    Real t = mid + half * rule.x[i];
                    acc += (f.F(t) + f.F(-t)).re * rule.w[i] * half;
                }
            }
            return acc / 2L / pi;
        };
        int panels = std::max(8L, (std::labs(bx) + std::labs(by)) / 3 + 4);
        Real prev = integrate(panels);
        for (int d = 0; d < opts.max_doublings; ++d) {
            panels *= 2;
            Real cur = integrate(panels);
            Real diff = (cur - prev).abs();
            if (diff < tol) {
                Real out(opts.precision);
                mpfr_set(out.raw(), cur.raw(), MPFR_RNDN);
                Real err(opts.precision);
                mpfr_set(err.raw(), diff.raw(), MPFR_RNDN);
                return PotentialValue::numeric_value(out, err);
            }
            prev = cur;
        }
        throw std::runtime_error("potential_fourier: quadrature did not reach tolerance " +
                                 std::to_string(opts.target_tol));
    }

    // tensor Gauss-Legendre away from the origin, polar refinement inside |t| < 0.2
    Full2D f{sym, bx, by, P};
    const Real r0 = Real::of(0.2, P);
    const GLRule& rule = gl_rule(32, P);
    auto gl1d = [&](const Real& a, const Real& b, auto&& g) {
        Real mid = (a + b) / 2L, half = (b - a) / 2L;
        Real acc(P);
        for (size_t i = 0; i < rule.x.size(); ++i)
            acc += g(mid + half * rule.x[i]) * rule.w[i] * half;
        return acc;
    };
    auto integrate = [&](int n_outer, int n_ang, int n_rad) {
        // outer region: [-pi,pi]^2 minus the square, as four rectangles
        Real acc(P);
        Real mp = -pi;
        struct Rect { Real x0, x1, y0, y1; };
        std::vector<Rect> rects{{mp, pi, r0, pi},
                                {mp, pi, mp, -r0},
                                {mp, -r0, -r0, r0},
                                {r0, pi, -r0, r0}};
        for (const auto& rc : rects) {
            int nx = n_outer, ny = n_outer;
            for (int ix = 0; ix < nx; ++ix) {
                Real xa = rc.x0 + (rc.x1 - rc.x0) * (long)ix / (long)nx;
                Real xb = rc.x0 + (rc.x1 - rc.x0) * (long)(ix + 1) / (long)nx;
                acc += gl1d(xa, xb, [&](const Real& t1) {
                    Real inner(P);
                    for (int iy = 0; iy < ny; ++iy) {
                        Real ya = rc.y0 + (rc.y1 - rc.y0) * (long)iy / (long)ny;
                        Real yb = rc.y0 + (rc.y1 - rc.y0) * (long)(iy + 1) / (long)ny;
                        inner += gl1d(ya, yb, [&](const Real& t2) { return f.value(t1, t2).re; });
                    }
                    return inner;
                });
            }
        }
        // polar part over the square |t|_inf <= r0: rho up to r0/max(|cos|,|sin|)
        for (int ia = 0; ia < n_ang; ++ia) {
            Real a0 = pi * Real::of(2L * ia, P) / (long)n_ang - pi;
            Real a1 = pi * Real::of(2L * (ia + 1), P) / (long)n_ang - pi;
            acc += gl1d(a0, a1, [&](const Real& phi) {
                Real c = cos(phi).abs(), s = sin(phi).abs();
                Real rmax = r0 / (c > s ? c : s);
                // geometric radial panels toward the origin
                Real inner(P);
                Real hi = rmax;
                for (int j = 0; j < n_rad; ++j) {
                    Real lo = (j + 1 == n_rad) ? Real::of(0L, P) : hi / 2L;
                    inner += gl1d(lo, hi, [&](const Real& rho) {
                        return f.value(rho * cos(phi), rho * sin(phi)).re * rho;
                    });
                    hi = lo;
                }
                return inner;
            });
        }
        return acc / (pi * pi * 4L);
    };
    int n_outer = std::max(6L, (std::labs(bx) + std::labs(by)) / 2 + 2);
    int n_ang = 16, n_rad = std::max(20, (int)(std::log2(std::labs(bx) + std::labs(by) + 2) * 4) + 8);
    Real prev = integrate(n_outer, n_ang, n_rad);
    for (int d = 0; d < opts.max_doublings; ++d) {
        n_outer *= 2; n_ang *= 2; n_rad += 10;
        Real cur = integrate(n_outer, n_ang, n_rad);
        Real diff = (cur - prev).abs();
        if (diff < tol) {
            Real out(opts.precision), err(opts.precision);
            mpfr_set(out.raw(), cur.raw(), MPFR_RNDN);
            mpfr_set(err.raw(), diff.raw(), MPFR_RNDN);
            return PotentialValue::numeric_value(out, err);
        }
        prev = cur;
    }
    throw std::runtime_error("potential_fourier: 2-D quadrature did not converge");
}

}  // namespace latpot
