#include "latpot/exact_values.hpp"
#include <mutex>

namespace latpot {

std::string PotentialValue::str() const {
    if (exact)
        return exact->first.str() + " + (" + exact->second.str() + ")/pi";
    return numeric->first.str(30) + " +- " + numeric->second.str(3);
}

Rational bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: n >= 0");
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while ((int)cache.size() <= n) {
        int m = (int)cache.size();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational s(0);
        for (int j = 0; j < m; ++j)
            s += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

PotentialValue diagonal_value(long m) {
    if (m < 0) throw std::invalid_argument("diagonal_value: m >= 0");
    Rational s(0);
    for (long j = 1; j <= m; ++j) s += Rational(1L, 2 * j - 1);
    return PotentialValue::exact_value(Rational(0), Rational(4) * s);
}

DiagonalSeries odd_harmonic_asymptotics(int J) {
    if (J < 1) throw std::invalid_argument("odd_harmonic_asymptotics: J >= 1");
    // S(m) = H_{2m} - H_m/2 with H_n ~ log n + gamma + 1/(2n) - sum B_{2k}/(2k) n^{-2k}:
    // the 1/(2n) pieces cancel and  c_{2k} = (B_{2k}/2k) (1/2 - 4^{-k}).
    DiagonalSeries s;
    s.log_coefficient = Rational(1, 2);
    s.constant = SymbolicConstant::plain(Rational(0), Rational(1, 2), Rational(1));
    s.order = J;
    for (int k = 1; 2 * k <= J; ++k) {
        Integer p4;
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, (unsigned long)k);
        Rational c = bernoulli(2 * k) / Rational(2 * k) * (Rational(1, 2) - Rational(Integer(1), p4));
        s.inv_coeffs[2 * k] = c;
    }
    return s;
}

Real DiagonalSeries::eval(long m, mpfr_prec_t prec) const {
    Real r = Real::of(log_coefficient, prec) * log(Real::of((long)m, prec));
    r += constant.eval(prec);
    for (const auto& [j, c] : inv_coeffs)
        r += Real::of(c, prec) * pow_si(Real::of((long)m, prec), -j);
    return r;
}

// ---------------------------------------------------------------------------
// McCrea-Whipple

namespace {
using NQ = std::pair<Rational, Rational>;
NQ add(const NQ& a, const NQ& b) { return {a.first + b.first, a.second + b.second}; }
NQ sub(const NQ& a, const NQ& b) { return {a.first - b.first, a.second - b.second}; }
NQ scale(const NQ& a, long c) { return {a.first * Rational(c), a.second * Rational(c)}; }
}  // namespace

const NQ& McCreaWhippleTable::at(long x, long y) const {
    // symmetry reduction into the stored triangle
    x = std::abs(x); y = std::abs(y);
    if (y > x) std::swap(x, y);
    return tri_[(size_t)x][(size_t)y];
}

void McCreaWhippleTable::fill(long radius) {
    if (radius <= radius_) return;
    if (tri_.empty()) {
        tri_.push_back({{Rational(0), Rational(0)}});                    // a(0,0) = 0
        tri_.push_back({{Rational(1), Rational(0)},                      // a(1,0) = 1
                        {Rational(0), Rational(4)}});                    // a(1,1) = 4/pi
        radius_ = 1;
    }
    for (long x = radius_ + 1; x <= radius; ++x) {  // x >= 2 here
        std::vector<NQ> col((size_t)x + 1);
        const auto& c1 = tri_[(size_t)x - 1];  // column x-1
        const auto& c2 = tri_[(size_t)x - 2];
        // a(x,0) = 4 a(x-1,0) - a(x-2,0) - 2 a(x-1,1)
        col[0] = sub(sub(scale(c1[0], 4), c2[0]), scale(c1[1], 2));
        // 1 <= y <= x-2: a(x,y) = 4 a(x-1,y) - a(x-2,y) - a(x-1,y+1) - a(x-1,y-1)
        for (long y = 1; y <= x - 2; ++y)
            col[(size_t)y] = sub(sub(sub(scale(c1[(size_t)y], 4), c2[(size_t)y]),
                                     c1[(size_t)y + 1]),
                                 c1[(size_t)y - 1]);
        // a(x,x-1) = 2 a(x-1,x-1) - a(x-1,x-2)
        if (x >= 2)
            col[(size_t)x - 1] = sub(scale(c1[(size_t)x - 1], 2), c1[(size_t)x - 2]);
        // diagonal from the closed form
        Rational s(0);
        for (long j = 1; j <= x; ++j) s += Rational(1L, 2 * j - 1);
        col[(size_t)x] = {Rational(0), Rational(4) * s};
        tri_.push_back(std::move(col));
        radius_ = x;
    }
}

PotentialValue McCreaWhippleTable::value(long x, long y) {
    long r = std::max(std::abs(x), std::abs(y));
    if (r > radius_) fill(std::max(r, radius_ <= 0 ? r : radius_));
    const NQ& v = at(x, y);
    return PotentialValue::exact_value(v.first, v.second);
}

PotentialValue mccrea_whipple(long x, long y) {
    static McCreaWhippleTable table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    return table.value(x, y);
}

}  // namespace latpot
