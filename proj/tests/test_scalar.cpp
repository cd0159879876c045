#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latpot/scalar.hpp"
#include <random>

using namespace latpot;

namespace {
std::mt19937_64 rng(20240817);
Rational rand_rational(long lim = 50) {
    std::uniform_int_distribution<long> num(-lim, lim), den(1, lim);
    return Rational(num(rng), den(rng));
}
FieldElement rand_field(int d) {
    return FieldElement(rand_rational(), rand_rational(), d);
}
}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational::parse("-8/12") == Rational(-2, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
    CHECK(Rational(-5, 10).str() == "-1/2");
}

TEST_CASE("field arithmetic matches the defining relation") {
    FieldElement s3 = FieldElement::sqrt_d(3);
    CHECK(s3 * s3 == FieldElement(3));
    FieldElement x(Rational(1), Rational(0), 3);
    CHECK(x * FieldElement(1) == x);
    // (1 + 0 sqrt3) / (1/2 + (1/2) sqrt3) = -1 + sqrt3, verified by the product
    FieldElement y(Rational(1, 2), Rational(1, 2), 3);
    FieldElement q = FieldElement(1) / y;
    CHECK(q == FieldElement(Rational(-1), Rational(1), 3));
    CHECK(q * y == FieldElement(1));
}

TEST_CASE("field axioms on random triples") {
    for (int d : {1, 2, 3, 5}) {
        for (int it = 0; it < 200; ++it) {
            FieldElement a = rand_field(d), b = rand_field(d), c = rand_field(d);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement(1));
        }
    }
}

TEST_CASE("field sign and ordering are exact") {
    FieldElement x(Rational(-7), Rational(4), 3);   // -7 + 4 sqrt3 < 0 (48 < 49)
    CHECK(x.sign() == -1);
    FieldElement y(Rational(-6), Rational(4), 3);   // 48 > 36
    CHECK(y.sign() == 1);
    CHECK(FieldElement(0).sign() == 0);
}

TEST_CASE("mismatched surds rejected, rationals mix freely") {
    FieldElement a(Rational(1), Rational(1), 2), b(Rational(1), Rational(1), 3);
    CHECK_THROWS(a + b);
    CHECK(a + FieldElement(2) == FieldElement(Rational(3), Rational(1), 2));
}

TEST_CASE("exact complex division") {
    ExactComplex z(FieldElement(3), FieldElement(4));
    ExactComplex w = z / z;
    CHECK(w == ExactComplex(1));
    CHECK(ExactComplex::i().pow_int(4) == ExactComplex(1));
    CHECK_THROWS(z / ExactComplex(0));
}

TEST_CASE("pi-graded ring rejects pi^-2") {
    PiGraded a = PiGraded::over_pi(ExactComplex(2));
    PiGraded b = PiGraded::integer(ExactComplex(3));
    CHECK((a * b).c1() == ExactComplex(6));
    CHECK_THROWS(a * a);
}

TEST_CASE("numeric_eval hits known constants") {
    // 4/pi at 64 bits
    PiGraded fourpi = PiGraded::over_pi(ExactComplex(4));
    Real v = fourpi.eval(64).re;
    CHECK(std::abs(v.to_double() - 1.2732395447351628) < 1e-15);
    // lambda = (2 gamma + 3 log 2)/pi
    SymbolicConstant lam = SymbolicConstant::over_pi(Rational(0), Rational(2), Rational(3));
    CHECK(std::abs(lam.eval(128).to_double() - 1.0293737056545707) < 1e-12);
    CHECK(PiGraded().eval(64).re.is_zero());
}

TEST_CASE("numeric_eval self-consistency across precisions") {
    SymbolicConstant lam = SymbolicConstant::over_pi(Rational(0), Rational(2), Rational(3));
    Real lo = lam.eval(128), hi = lam.eval(256);
    Real diff = (lo - hi).abs();
    CHECK(diff < pow_si(Real::of(2L, 64), -120));
}

TEST_CASE("rational reconstruction") {
    // 1/6 from its float image
    Real x = Real::of(Rational(1, 6), 256);
    auto q = rational_reconstruct(x, Integer(10000));
    REQUIRE(q.has_value());
    CHECK(*q == Rational(1, 6));
    // 0.5
    auto h = rational_reconstruct(Real::of(0.5, 128), Integer(100));
    REQUIRE(h.has_value());
    CHECK(*h == Rational(1, 2));
    // (1/pi numeric) * pi -> 1
    Real invpi = Real::of(1L, 256) / Real::pi(256);
    auto one = rational_reconstruct(invpi * Real::pi(256), Integer(1000));
    REQUIRE(one.has_value());
    CHECK(*one == Rational(1));
    // any accepted value satisfies the guarantee |x - p/q| < 1/(2 q Q)
    auto piq = rational_reconstruct(Real::pi(256), Integer(50));
    REQUIRE(piq.has_value());
    CHECK(*piq == Rational(22, 7));
    // 201/400 sits exactly on the acceptance boundary of 1/2 at Q = 100: failure
    CHECK(!rational_reconstruct(Real::of(Rational(201, 400), 256), Integer(100)).has_value());
}

TEST_CASE("reconstruct(numeric_eval(p/q)) = p/q randomized") {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int it = 0; it < 300; ++it) {
        Rational q(num(rng), den(rng));
        Real x = Real::of(q, 128);
        auto rec = rational_reconstruct(x, Integer(1000000));
        REQUIRE(rec.has_value());
        CHECK(*rec == q);
    }
}

TEST_CASE("field element encoding round-trip") {
    FieldElement x(Rational(-1, 2), Rational(3, 4), 3);
    CHECK(x.str() == "-1/2+3/4*s");
    CHECK(FieldElement::parse(x.str(), 3) == x);
    FieldElement y(Rational(5, 7));
    CHECK(FieldElement::parse(y.str(), 1) == y);
    FieldElement z(Rational(0), Rational(-1, 3), 3);
    CHECK(FieldElement::parse(z.str(), 3) == z);
    CHECK(FieldElement::parse("1/2*s", 3) == FieldElement(Rational(0), Rational(1, 2), 3));
}

TEST_CASE("pi-graded printing") {
    PiGraded v(ExactComplex(17), ExactComplex(Rational(-48)));
    CHECK(v.str() == "17 + (-48)/pi");
}
