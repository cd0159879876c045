#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latpot/laplacian.hpp"
#include <cmath>

using namespace latpot;

namespace {
PiGraded one_over_pi(long num, long den = 1) {
    return PiGraded::over_pi(ExactComplex(Rational(num, den)));
}
}  // namespace

TEST_CASE("taylor operators of the simple walk") {
    WalkPtr w = WalkSpec::bundled("z2-simple");
    CHECK(taylor_operator(*w, 1).is_zero());
    DiffOperator d2 = taylor_operator(*w, 2);
    CHECK(d2.coefficient(1, 1) == ExactComplex(1));
    CHECK(d2.proportional_to(1, 1));
    DiffOperator d4 = taylor_operator(*w, 4);
    CHECK(d4.coefficient(4, 0) == ExactComplex(Rational(1, 24)));
    CHECK(d4.coefficient(2, 2) == ExactComplex(Rational(1, 4)));
    CHECK(d4.coefficient(0, 4) == ExactComplex(Rational(1, 24)));
    CHECK(d4.coefficient(3, 1).is_zero());
}

TEST_CASE("odd operators vanish for reversible walks") {
    for (const char* name : {"z2-simple", "z2-king", "tri-6walk"}) {
        WalkPtr w = WalkSpec::bundled(name);
        for (int m = 0; m <= 5; ++m)
            CHECK(taylor_operator(*w, 2 * m + 1).is_zero());
    }
}

TEST_CASE("six-walk D4 is proportional to dz^2 dzb^2, D3 = D5 = 0") {
    WalkPtr w = WalkSpec::bundled("tri-6walk");
    CHECK(taylor_operator(*w, 3).is_zero());
    CHECK(taylor_operator(*w, 5).is_zero());
    CHECK(taylor_operator(*w, 4).proportional_to(2, 2));
}

TEST_CASE("apply operator to monomials and log") {
    WalkPtr w = WalkSpec::bundled("z2-simple");
    DiffOperator d2 = taylor_operator(*w, 2);
    // dz dzb z^k zbar^l = k l z^{k-1} zbar^{l-1}
    Term t{one_over_pi(1), 3, 2, false};
    auto out = apply_operator(d2, t);
    REQUIRE(out.size() == 1);
    CHECK(out[0].k == 2);
    CHECK(out[0].l == 1);
    CHECK(out[0].coeff == one_over_pi(6));
    // dz on log: via the pure-dz part of an artificial operator
    DiffOperator dz(DiffOperator::Support{{{1, 0}, ExactComplex(1)}});
    Term lg{one_over_pi(1), 0, 0, true};
    auto lout = apply_operator(dz, lg);
    REQUIRE(lout.size() == 1);
    CHECK(lout[0].k == -1);
    CHECK(lout[0].l == 0);
    CHECK(lout[0].coeff == one_over_pi(1));
    // dz^2 on z^-3 -> 12 z^-5
    DiffOperator dz2(DiffOperator::Support{{{2, 0}, ExactComplex(1)}});
    Term zm3{one_over_pi(1), -3, 0, false};
    auto z5 = apply_operator(dz2, zm3);
    REQUIRE(z5.size() == 1);
    CHECK(z5[0].k == -5);
    CHECK(z5[0].coeff == one_over_pi(12));
}

TEST_CASE("residual of the log term (simple walk, K=6)") {
    WalkPtr w = WalkSpec::bundled("z2-simple");
    std::vector<Term> terms{Term{one_over_pi(2), 0, 0, true}};
    auto res = residual(*w, terms, 6);
    // D_4(log): (2/pi)(1/24)(-1)(-2)(-3) z^-4 + conjugate = -(1/2pi)(z^-4 + zbar^-4)
    bool found_z4 = false, found_zb4 = false;
    for (const auto& t : res) {
        if (t.k == -4 && t.l == 0) { found_z4 = true; CHECK(t.coeff == one_over_pi(-1, 2)); }
        if (t.k == 0 && t.l == -4) { found_zb4 = true; CHECK(t.coeff == one_over_pi(-1, 2)); }
        CHECK(t.order() >= -6);
    }
    CHECK(found_z4);
    CHECK(found_zb4);
}

TEST_CASE("residual of a single mixed term under D2") {
    WalkPtr w = WalkSpec::bundled("z2-simple");
    std::vector<Term> terms{Term{one_over_pi(1), -1, 1, false}};
    auto res = residual(*w, terms, 2);
    REQUIRE(res.size() == 1);
    CHECK(res[0].k == -2);
    CHECK(res[0].l == 0);
    CHECK(res[0].coeff == one_over_pi(-1));
}

TEST_CASE("operator truncation error decays at the advertised rate") {
    // (Delta f)(z) - sum_{n<=N} D_n f(z) = O(|z|^{k+l-N-1}) for f = z^k zbar^l
    WalkPtr w = WalkSpec::bundled("z2-king");
    const mpfr_prec_t P = 512;
    const int k = 2, l = -5, N = 6;
    auto f = [&](const Cplx& z) { return z.pow_int(k) * z.conj().pow_int(l); };
    std::vector<DiffOperator> ops;
    for (int n = 1; n <= N; ++n) ops.push_back(taylor_operator(*w, n));
    auto defect = [&](double r) {
        Cplx z = Cplx::of(r * 0.8, r * 0.6, P);
        // exact discrete Laplacian
        Cplx lap(P);
        for (const auto& s : w->steps()) {
            Cplx step = s.v.to_cplx(P);
            lap = lap + (f(z + step) - f(z)) * Real::of(s.p, P);
        }
        // operator sum applied symbolically, evaluated at z
        Term t{PiGraded::integer(ExactComplex(1)), k, l, false};
        Cplx sum(P);
        for (const auto& op : ops)
            for (const auto& r2 : apply_operator(op, t))
                sum = sum + r2.coeff.eval(P) * z.pow_int(r2.k) * z.conj().pow_int(r2.l);
        return (lap - sum).abs().to_double();
    };
    double e1 = defect(10), e2 = defect(1000);
    double slope = std::log(e2 / e1) / std::log(1000.0 / 10.0);
    CHECK(slope == doctest::Approx(k + l - N - 1).epsilon(0.12));
}

TEST_CASE("operator dump format") {
    WalkPtr w = WalkSpec::bundled("z2-simple");
    std::string d = taylor_operator(*w, 2).dump();
    CHECK(d == "1 1 1\n");
}
