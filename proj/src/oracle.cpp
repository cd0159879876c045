#include "latpot/oracle.hpp"
#include <cmath>
#include <numeric>

namespace latpot {

StepDistribution StepDistribution::compute(const WalkSpec& walk, int n, size_t support_budget) {
    if (n < 0) throw std::invalid_argument("step_distribution: n >= 0");
    StepDistribution cur;
    cur.n_ = 0;
    cur.p_[{0, 0}] = Rational(1);
    for (int step = 0; step < n; ++step) {
        StepDistribution next;
        next.n_ = step + 1;
        for (const auto& [pt, pr] : cur.p_) {
            for (const auto& s : walk.steps()) {
                auto key = std::make_pair(pt.first + s.bx, pt.second + s.by);
                auto it = next.p_.find(key);
                if (it == next.p_.end()) next.p_[key] = pr * s.p;
                else it->second += pr * s.p;
            }
        }
        if (next.p_.size() > support_budget)
            throw std::domain_error("step_distribution: support budget exceeded");
        cur = std::move(next);
    }
    return cur;
}

Rational StepDistribution::prob(long bx, long by) const {
    auto it = p_.find({bx, by});
    return it == p_.end() ? Rational(0) : it->second;
}

Rational StepDistribution::total() const {
    Rational t(0);
    for (const auto& [pt, pr] : p_) t += pr;
    return t;
}

// ---------------------------------------------------------------------------

namespace {

// s*a + t*b = gcd(a,b) >= 0
std::array<long, 3> ext_gcd(long a, long b) {
    long s0 = 1, t0 = 0, s1 = 0, t1 = 1;
    while (b != 0) {
        long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
    return {a, s0, t0};
}

// Hermite-form basis {(rx, ry), (0, d2)} of the lattice spanned by gens
std::array<long, 4> lattice_basis(const std::vector<std::pair<long, long>>& gens) {
    long rx = 0, ry = 0, d2 = 0;
    for (auto [x, y] : gens) {
        if (x == 0) { d2 = std::gcd(d2, std::labs(y)); continue; }
        if (rx == 0) { rx = x; ry = y; continue; }
        auto [g, s, t] = ext_gcd(rx, x);
        long nry = s * ry + t * y;
        // lattice vectors with vanishing first coordinate
        d2 = std::gcd(d2, std::labs((x / g) * nry - y));
        d2 = std::gcd(d2, std::labs((rx / g) * nry - ry));
        rx = g; ry = nry;
    }
    if (rx != 0 && d2 != 0) ry = ((ry % d2) + d2) % d2;
    return {rx, ry, 0, d2};
}

}  // namespace

SpaceTimeLattice SpaceTimeLattice::detect(const WalkSpec& walk) {
    const auto& st = walk.steps();
    SpaceTimeLattice y{};
    y.v1x = st[0].bx;
    y.v1y = st[0].by;
    std::vector<std::pair<long, long>> gens;
    for (size_t i = 1; i < st.size(); ++i)
        gens.push_back({st[i].bx - y.v1x, st[i].by - y.v1y});
    auto b = lattice_basis(gens);
    y.d11 = b[0]; y.d12 = b[1]; y.d21 = b[2]; y.d22 = b[3];
    long det = y.d11 * y.d22 - y.d12 * y.d21;
    if (det == 0)
        throw std::logic_error("space-time lattice: step differences are rank deficient");
    y.diff_index = Rational(std::labs(det));
    // period: least s >= 1 with s*v1 in the difference lattice
    long s = 1;
    for (; s <= std::labs(det) + 1; ++s)
        if (y.contains(s, s * y.v1x, s * y.v1y)) break;
    y.period = s;
    return y;
}

bool SpaceTimeLattice::contains(long n, long bx, long by) const {
    // (n, z) in Y  iff  z - n v1 in diff lattice
    long wx = bx - n * v1x, wy = by - n * v1y;
    long det = d11 * d22 - d12 * d21;
    long an = wx * d22 - wy * d21;
    long bn = -wx * d12 + wy * d11;
    return an % det == 0 && bn % det == 0;
}

std::optional<long> SpaceTimeLattice::slice_residue(long bx, long by) const {
    for (long j = 0; j < period; ++j)
        if (contains(j, bx, by)) return j;
    return std::nullopt;
}

Real local_clt_amplitude(const WalkSpec& walk, mpfr_prec_t prec) {
    SpaceTimeLattice y = SpaceTimeLattice::detect(walk);
    // vol(Y cap Z) = |det D| * vol(basis cell)
    Real vol = Real::of(y.diff_index, prec) * walk.lattice_volume().to_real(prec);
    Real detm = walk.correlation_matrix().det().to_real(prec);
    return vol / (Real::pi(prec) * 2L * sqrt(detm));
}

Real gaussian_form(const WalkSpec& walk, long bx, long by, mpfr_prec_t prec) {
    CorrelationMatrix m = walk.correlation_matrix();
    ExactComplex z = walk.lattice_point(bx, by);
    FieldElement x = z.real(), yv = z.imag();
    FieldElement det = m.det();
    // (1/2) z^T M^{-1} z with M^{-1} = (1/det) [m22 -m12; -m12 m11]
    FieldElement q = (m.m22 * x * x - (m.m12 * x * yv) * FieldElement(2) + m.m11 * yv * yv) / det;
    return (q * FieldElement(Rational(1, 2))).to_real(prec);
}

Real local_clt(const WalkSpec& walk, long n, long bx, long by, mpfr_prec_t prec) {
    SpaceTimeLattice y = SpaceTimeLattice::detect(walk);
    if (n <= 0 || !y.contains(n, bx, by)) return Real::of(0L, prec);
    Real tau = local_clt_amplitude(walk, prec);
    Real b = gaussian_form(walk, bx, by, prec);
    return tau / (long)n * exp(-(b / (long)n));
}

// ---------------------------------------------------------------------------
// Lemma validators: theta sums and the multinomial CLT

ThetaSumResult theta_sum_check(const std::array<double, 4>& A, const std::array<double, 2>& v,
                               double n, mpfr_prec_t prec) {
    if (n < 1) throw std::invalid_argument("theta_sum_check: n >= 1");
    const mpfr_prec_t P = prec + 32;
    Real a11 = Real::of(A[0], P), a12 = Real::of(A[1], P);
    Real a21 = Real::of(A[2], P), a22 = Real::of(A[3], P);
    Real det = (a11 * a22 - a12 * a21).abs();
    if (det.is_zero()) throw std::invalid_argument("theta_sum_check: singular matrix");
    // truncation radius: ||A(z+v)||^2 > n*T is negligible; use smallest singular
    // value lower bound via det / frobenius
    double fro = std::sqrt(A[0] * A[0] + A[1] * A[1] + A[2] * A[2] + A[3] * A[3]);
    double smin = det.to_double() / fro;
    double T = 45.0;
    long R = (long)std::ceil(std::sqrt(n * T) / smin + std::abs(v[0]) + std::abs(v[1]) + 2);
    Real sum(P);
    Real invn = Real::of(1L, P) / Real::of(n, P);
    for (long i = -R; i <= R; ++i) {
        for (long j = -R; j <= R; ++j) {
            Real x = Real::of((double)i + v[0], P);
            Real y = Real::of((double)j + v[1], P);
            Real u1 = a11 * x + a12 * y;
            Real u2 = a21 * x + a22 * y;
            sum += exp(-((u1 * u1 + u2 * u2) * invn));
        }
    }
    Real closed = Real::pi(P) * Real::of(n, P) / det;
    Real s_out(prec), c_out(prec);
    mpfr_set(s_out.raw(), sum.raw(), MPFR_RNDN);
    mpfr_set(c_out.raw(), closed.raw(), MPFR_RNDN);
    return {s_out, c_out};
}

MultinomialCheck multinomial_clt_check(const std::vector<Rational>& p, long n,
                                       const std::vector<long>& w, mpfr_prec_t prec) {
    if (p.size() != w.size() || p.empty())
        throw std::invalid_argument("multinomial_clt_check: p and w sizes differ");
    long wsum = std::accumulate(w.begin(), w.end(), 0L);
    if (wsum != 0) throw std::invalid_argument("multinomial_clt_check: offsets must sum to 0");
    std::vector<long> m;
    for (size_t i = 0; i < p.size(); ++i) {
        Rational mi = p[i] * Rational(n) + Rational(w[i]);
        if (!mi.is_integer() || mi.sign() < 0)
            throw std::invalid_argument("multinomial_clt_check: infeasible cell count");
        m.push_back((long)mi.num().get_si());
    }
    if (std::accumulate(m.begin(), m.end(), 0L) != n)
        throw std::invalid_argument("multinomial_clt_check: counts do not sum to n");
    // exact multinomial probability
    Rational b(Integer(factorial((unsigned long)n)), Integer(1));
    for (long mi : m) b /= Rational(factorial((unsigned long)mi));
    for (size_t i = 0; i < p.size(); ++i) b *= p[i].pow_int(m[i]);
    const mpfr_prec_t P = prec + 32;
    Real exact = Real::of(b, P);
    // leading CLT value
    size_t k = p.size();
    Real twopin = Real::pi(P) * 2L * Real::of(n, P);
    Real pref = pow_si(sqrt(twopin), -(long)(k - 1));
    Real prod = Real::of(1L, P);
    for (const auto& pi : p) prod *= Real::of(pi, P);
    pref = pref / sqrt(prod);
    Real expo(P);
    for (size_t i = 0; i < k; ++i)
        expo += Real::of(Rational(w[i] * w[i]) / (p[i] * Rational(2 * n)), P);
    Real clt = pref * exp(-expo);
    Real e_out(prec), c_out(prec);
    mpfr_set(e_out.raw(), exact.raw(), MPFR_RNDN);
    mpfr_set(c_out.raw(), clt.raw(), MPFR_RNDN);
    return {e_out, c_out};
}

}  // namespace latpot
