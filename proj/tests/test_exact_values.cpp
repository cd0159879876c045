#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latpot/exact_values.hpp"
#include <cmath>

using namespace latpot;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("diagonal values") {
    CHECK(diagonal_value(0).exact->second == Rational(0));
    CHECK(diagonal_value(1).exact->second == Rational(4));
    CHECK(diagonal_value(2).exact->second == Rational(16, 3));
}

TEST_CASE("mccrea-whipple small values") {
    McCreaWhippleTable t;
    auto eq = [&](long x, long y, Rational n, Rational q) {
        auto v = t.value(x, y);
        return v.exact->first == n && v.exact->second == q;
    };
    CHECK(eq(0, 0, Rational(0), Rational(0)));
    CHECK(eq(1, 0, Rational(1), Rational(0)));
    CHECK(eq(1, 1, Rational(0), Rational(4)));
    CHECK(eq(2, 0, Rational(4), Rational(-8)));
    CHECK(eq(2, 1, Rational(-1), Rational(8)));
    CHECK(eq(3, 0, Rational(17), Rational(-48)));
    // symmetry reductions
    CHECK(eq(-3, 0, Rational(17), Rational(-48)));
    CHECK(eq(0, -3, Rational(17), Rational(-48)));
    CHECK(eq(-1, 1, Rational(0), Rational(4)));
}

TEST_CASE("laplacian identity holds exactly on |x|,|y| <= 30") {
    McCreaWhippleTable t;
    t.fill(32);
    for (long x = -30; x <= 30; ++x) {
        for (long y = -30; y <= 30; ++y) {
            auto c = t.value(x, y).exact;
            auto e = t.value(x + 1, y).exact;
            auto w = t.value(x - 1, y).exact;
            auto n = t.value(x, y + 1).exact;
            auto s = t.value(x, y - 1).exact;
            Rational qn = (e->first + w->first + n->first + s->first) / Rational(4) - c->first;
            Rational qq = (e->second + w->second + n->second + s->second) / Rational(4) - c->second;
            bool origin = (x == 0 && y == 0);
            CHECK(qn == (origin ? Rational(1) : Rational(0)));
            CHECK(qq == Rational(0));
        }
    }
}

TEST_CASE("diagonal matches the closed form for m <= 50") {
    McCreaWhippleTable t;
    t.fill(50);
    for (long m = 0; m <= 50; ++m) {
        auto v = t.value(m, m);
        auto d = diagonal_value(m);
        CHECK(v.exact->first == d.exact->first);
        CHECK(v.exact->second == d.exact->second);
    }
}

TEST_CASE("numerator and denominator of q grow along the axis") {
    McCreaWhippleTable t;
    t.fill(41);
    size_t prev = 0;
    for (long x = 5; x <= 40; x += 5) {
        auto v = t.value(x, 0);
        size_t bits = mpz_sizeinbase(v.exact->second.num().get_mpz_t(), 2) +
                      mpz_sizeinbase(v.exact->second.den().get_mpz_t(), 2);
        CHECK(bits > prev);
        prev = bits;
    }
}

TEST_CASE("odd harmonic asymptotics") {
    DiagonalSeries s = odd_harmonic_asymptotics(8);
    CHECK(s.log_coefficient == Rational(1, 2));
    // constant (gamma + 2 log2)/2
    CHECK(s.constant.plain_gamma_coeff() == Rational(1, 2));
    CHECK(s.constant.plain_log2_coeff() == Rational(1));
    CHECK(s.constant.plain_rational() == Rational(0));
    // c_2 = (B_2/2)(1/2 - 1/4) = 1/48; no odd coefficients
    CHECK(s.inv_coeffs.at(2) == Rational(1, 48));
    CHECK(s.inv_coeffs.find(1) == s.inv_coeffs.end());
    CHECK(s.inv_coeffs.at(4) == Rational(-7, 1920));

    // numeric check: S(m) - series(m) = O(m^{-J-1}) with only even coefficients;
    // with J = 8 the first omitted term is m^{-10}
    auto direct = [](long m, mpfr_prec_t P) {
        Real acc(P);
        for (long j = 1; j <= m; ++j) acc += Real::of(Rational(1, 2 * j - 1), P);
        return acc;
    };
    const mpfr_prec_t P = 256;
    double e1 = (direct(100, P) - s.eval(100, P)).abs().to_double();
    double e2 = (direct(1000, P) - s.eval(1000, P)).abs().to_double();
    double slope = std::log(e2 / e1) / std::log(10.0);
    CHECK(slope == doctest::Approx(-10).epsilon(0.05));
}

TEST_CASE("series truncation error at m in {100, 1000} with one inverse power") {
    // |S(m) - (log m / 2 + const + c_2/m^2)| = O(m^-4)
    DiagonalSeries s = odd_harmonic_asymptotics(2);
    const mpfr_prec_t P = 192;
    auto direct = [](long m, mpfr_prec_t prec) {
        Real acc(prec);
        for (long j = 1; j <= m; ++j) acc += Real::of(Rational(1, 2 * j - 1), prec);
        return acc;
    };
    for (long m : {100L, 1000L}) {
        double err = (direct(m, P) - s.eval(m, P)).abs().to_double();
        CHECK(err < 5.0 / std::pow((double)m, 4));
    }
}

TEST_CASE("potential value printing") {
    CHECK(mccrea_whipple(1, 1).str() == "0 + (4)/pi");
    CHECK(std::abs(mccrea_whipple(1, 1).eval(64).to_double() - 1.2732395447) < 1e-9);
}
