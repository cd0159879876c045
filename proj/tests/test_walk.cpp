#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latpot/walk.hpp"

using namespace latpot;

TEST_CASE("bundled walks validate") {
    for (const char* name : {"z2-simple", "z2-king", "tri-directed", "tri-6walk"}) {
        WalkPtr w = WalkSpec::bundled(name);
        CHECK(w->name() == name);
        CHECK(w->is_spherical());
    }
}

TEST_CASE("validation rejects bad specs") {
    RawWalkSpec raw;
    raw.name = "drift";
    raw.sqrt_d = 1;
    raw.basis1 = ExactComplex(1);
    raw.basis2 = ExactComplex::i();
    raw.steps = {{ExactComplex(1), Rational(1)}};
    CHECK_THROWS_WITH_AS(WalkSpec::validate(raw), doctest::Contains("drift"), std::invalid_argument);

    raw.steps = {{ExactComplex(1), Rational(1, 2)}, {-ExactComplex(1), Rational(1, 4)}};
    CHECK_THROWS_WITH_AS(WalkSpec::validate(raw), doctest::Contains("sum"), std::invalid_argument);

    // rank-1 step set
    raw.steps = {{ExactComplex(1), Rational(1, 2)}, {-ExactComplex(1), Rational(1, 2)}};
    CHECK_THROWS_WITH_AS(WalkSpec::validate(raw), doctest::Contains("rank-2"), std::invalid_argument);

    // step outside the declared lattice
    raw.steps = {{ExactComplex(FieldElement(Rational(1, 2))), Rational(1, 4)},
                 {ExactComplex(FieldElement(Rational(-1, 2))), Rational(1, 4)},
                 {ExactComplex::i(), Rational(1, 4)},
                 {-ExactComplex::i(), Rational(1, 4)}};
    CHECK_THROWS_WITH_AS(WalkSpec::validate(raw), doctest::Contains("integer"), std::invalid_argument);
}

TEST_CASE("moments of the bundled walks") {
    WalkPtr simple = WalkSpec::bundled("z2-simple");
    CHECK(simple->moment(1, 1) == ExactComplex(1));
    CHECK(simple->moment(2, 0) == ExactComplex(0));
    CHECK(simple->moment(4, 0) == ExactComplex(1));

    WalkPtr tri = WalkSpec::bundled("tri-directed");
    CHECK(tri->moment(3, 0) == ExactComplex(1));
    CHECK(tri->moment(1, 1) == ExactComplex(1));
    CHECK(tri->moment_reversed(3, 0) == ExactComplex(-1));

    // conj(mu_{a,b}) = mu_{b,a} and mu_{1,0} = 0 through total order 12
    for (const char* name : {"z2-simple", "z2-king", "tri-directed"}) {
        WalkPtr w = WalkSpec::bundled(name);
        CHECK(w->moment(1, 0).is_zero());
        for (int a = 0; a <= 12; ++a)
            for (int b = 0; a + b <= 12; ++b)
                CHECK(w->moment(a, b).conj() == w->moment(b, a));
    }
}

TEST_CASE("sphericity") {
    CHECK(WalkSpec::bundled("z2-simple")->is_spherical());
    CHECK(WalkSpec::bundled("z2-king")->is_spherical());
    // stretched walk: +-2 on the x-axis, +-i on the y-axis
    RawWalkSpec raw;
    raw.name = "stretched";
    raw.sqrt_d = 1;
    raw.basis1 = ExactComplex(1);
    raw.basis2 = ExactComplex::i();
    raw.steps = {{ExactComplex(2), Rational(1, 4)},
                 {ExactComplex(-2), Rational(1, 4)},
                 {ExactComplex::i(), Rational(1, 4)},
                 {-ExactComplex::i(), Rational(1, 4)}};
    CHECK(!WalkSpec::validate(raw)->is_spherical());
}

TEST_CASE("correlation matrices") {
    auto diag = [](WalkPtr w, Rational c) {
        CorrelationMatrix m = w->correlation_matrix();
        return m.m11 == FieldElement(c) && m.m22 == FieldElement(c) && m.m12.is_zero();
    };
    CHECK(diag(WalkSpec::bundled("z2-simple"), Rational(1, 2)));
    CHECK(diag(WalkSpec::bundled("z2-king"), Rational(3, 4)));
    CHECK(diag(WalkSpec::bundled("tri-directed"), Rational(1, 2)));
}

TEST_CASE("rotational symmetry order") {
    CHECK(WalkSpec::bundled("z2-simple")->rotational_symmetry_order() == 4);
    CHECK(WalkSpec::bundled("z2-king")->rotational_symmetry_order() == 4);
    CHECK(WalkSpec::bundled("tri-directed")->rotational_symmetry_order() == 3);
    CHECK(WalkSpec::bundled("tri-6walk")->rotational_symmetry_order() == 6);
}

TEST_CASE("reversibility and reflection symmetry") {
    CHECK(WalkSpec::bundled("z2-simple")->is_reversible());
    CHECK(WalkSpec::bundled("z2-king")->is_reversible());
    CHECK(!WalkSpec::bundled("tri-directed")->is_reversible());
    CHECK(WalkSpec::bundled("tri-6walk")->is_reversible());
    CHECK(WalkSpec::bundled("tri-directed")->is_reflection_symmetric());
}

TEST_CASE("tau constants of the three table walks") {
    CHECK(WalkSpec::bundled("z2-simple")->tau_constant() ==
          PiGraded::over_pi(ExactComplex(2)));
    CHECK(WalkSpec::bundled("z2-king")->tau_constant() ==
          PiGraded::over_pi(ExactComplex(Rational(4, 3))));
    CHECK(WalkSpec::bundled("tri-directed")->tau_constant() ==
          PiGraded::over_pi(ExactComplex(FieldElement(Rational(0), Rational(1), 3))));
}

TEST_CASE("lattice volume and coordinates") {
    WalkPtr tri = WalkSpec::bundled("tri-directed");
    CHECK(tri->lattice_volume() == FieldElement(Rational(0), Rational(1, 2), 3));
    ExactComplex z = tri->lattice_point(3, -2);
    auto [bx, by] = tri->basis_coords(z);
    CHECK(bx == 3);
    CHECK(by == -2);
}

TEST_CASE("walk file round trip") {
    WalkPtr w = WalkSpec::bundled("tri-directed");
    WalkPtr back = WalkSpec::from_json_text(w->to_json_text());
    CHECK(back->steps().size() == w->steps().size());
    CHECK(back->tau_constant() == w->tau_constant());
}
