#include <random>

#include "doctest.h"

#include "ecb/curve.hpp"
#include "ecb/errors.hpp"
#include "support.hpp"

using namespace ecb;

TEST_CASE("curve construction and invariants") {
    const WeierstrassCurve e(Rational(0), Rational(-4));
    CHECK(e.eta().to_double() == doctest::Approx(std::log(4.0)));
    CHECK(e.discriminant() == Rational(-432));
    const WeierstrassCurve f(Rational(4), Rational(-4));
    CHECK(f.discriminant() != 0);
    CHECK_THROWS_AS(WeierstrassCurve(Rational(3), Rational(1)), singular_curve_error);
    CHECK(e.M(Place::archimedean()) == 4);
    CHECK(e.M(Place::prime(2)) == 1);
    CHECK(e.c(Place::archimedean()) == 16);
    CHECK(e.c(Place::prime(3)) == 0);
    const WeierstrassCurve g(Rational(1, 4), Rational(3));
    CHECK(g.M(Place::prime(2)) == 4);
    CHECK(g.bad_places().size() == 2);
}

TEST_CASE("points") {
    const WeierstrassCurve e(Rational(0), Rational(-4));
    const ProjectivePoint p = ProjectivePoint::on(e, Rational(0), Rational(6), Rational(3));
    CHECK(p == ProjectivePoint::affine(e, Rational(0), Rational(2)));
    CHECK(p.negated() == ProjectivePoint::affine(e, Rational(0), Rational(-2)));
    CHECK(ProjectivePoint::identity().negated() == ProjectivePoint::identity());
    CHECK_THROWS_AS(ProjectivePoint::affine(e, Rational(1), Rational(1)), precondition_error);
    CHECK_THROWS_AS(ProjectivePoint::on(e, Rational(0), Rational(0), Rational(0)), precondition_error);
    const std::vector<Integer> prim = ProjectivePoint::affine(e, Rational(0), Rational(-2)).primitive_integer();
    CHECK(prim == std::vector<Integer>{0, 2, -1});
}

TEST_CASE("addition examples") {
    const WeierstrassCurve e(Rational(0), Rational(-4));
    const ProjectivePoint p = ProjectivePoint::affine(e, Rational(0), Rational(2));
    const ProjectivePoint q = ProjectivePoint::affine(e, Rational(0), Rational(-2));
    CHECK(add(e, p, p) == q);
    CHECK(add(e, p, q) == ProjectivePoint::identity());
    CHECK(sub(e, p, q) == q);
    CHECK(sub(e, p, p) == ProjectivePoint::identity());
    CHECK(sub(e, p, ProjectivePoint::identity()) == p);
    CHECK(negate(ProjectivePoint::identity()) == ProjectivePoint::identity());
}

TEST_CASE("group law on random curves") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto [curve, p] = testsupport::random_curve_with_point(rng);
        const ProjectivePoint o = ProjectivePoint::identity();
        const ProjectivePoint p2 = add(curve, p, p);
        const ProjectivePoint p3 = add(curve, p2, p);
        CHECK(add(curve, p, o) == p);
        CHECK(add(curve, o, p) == p);
        CHECK(add(curve, p, p.negated()) == o);
        CHECK(add(curve, p, p2) == add(curve, p2, p));
        CHECK(add(curve, add(curve, p, p2), p3) == add(curve, p, add(curve, p2, p3)));
        CHECK(sub(curve, p3, p2) == p);
        CHECK(curve.contains(p3.x(), p3.y(), p3.z()));
    }
}

TEST_CASE("addition families are bihomogeneous of bidegree (2, 2)") {
    for (int k = 1; k <= 3; ++k) {
        for (const MultiPoly& f : generic_addition_family(k).forms) {
            const std::vector<std::vector<std::size_t>> blocks{{2, 3, 4}, {5, 6, 7}};
            CHECK(f.is_multihomogeneous(blocks));
            CHECK(f.multidegree(blocks) == std::vector<int>{2, 2});
        }
    }
}

TEST_CASE("every family represents addition where it does not vanish") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const auto [curve, p] = testsupport::random_curve_with_point(rng);
        const ProjectivePoint q = add(curve, p, p);
        const ProjectivePoint expected = add(curve, p, q);
        for (int k = 1; k <= 3; ++k) {
            const std::optional<ProjectivePoint> r = add_with_family(curve, p, q, k);
            if (r) CHECK(*r == expected);
        }
    }
}

TEST_CASE("2-torsion points go through the general families") {
    // 4x^3 - 4x = 4x(x - 1)(x + 1): three rational 2-torsion points.
    const WeierstrassCurve e(Rational(4), Rational(0));
    const ProjectivePoint t = ProjectivePoint::affine(e, Rational(1), Rational(0));
    const ProjectivePoint u = ProjectivePoint::affine(e, Rational(-1), Rational(0));
    CHECK(add(e, t, t) == ProjectivePoint::identity());
    CHECK(add(e, t, u) == ProjectivePoint::affine(e, Rational(0), Rational(0)));
}
