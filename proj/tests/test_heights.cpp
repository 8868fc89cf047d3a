#include <cmath>
#include <random>

#include "doctest.h"

#include "ecb/division.hpp"
#include "ecb/errors.hpp"
#include "ecb/heights.hpp"
#include "support.hpp"

using namespace ecb;

namespace {

Real tolerance() { return Real::from_rational(Rational(1, 1000), default_precision); }

}  // namespace

TEST_CASE("projective distances") {
    const WeierstrassCurve e(Rational(0), Rational(-4));
    const ProjectivePoint p = ProjectivePoint::affine(e, Rational(0), Rational(2));
    const DistanceValue d = dist_v(p, ProjectivePoint::identity(), Place::archimedean());
    CHECK(d.value == Rational(1, 2));
    CHECK(d.log.to_double() == doctest::Approx(std::log(0.5)));
    CHECK(dist_v(p, p, Place::archimedean()).value == 0);
    CHECK(dist_v(p, p, Place::archimedean()).log.value.is_inf());
    CHECK(dist_v(p, ProjectivePoint::identity(), Place::prime(2)).value == 1);
    CHECK(projective_distance({Rational(1), Rational(0)}, {Rational(0), Rational(1)}, Place::archimedean()) == 1);
    CHECK(projective_distance({Rational(1), Rational(2)}, {Rational(2), Rational(4)}, Place::prime(3)) == 0);
}

TEST_CASE("naive heights") {
    const WeierstrassCurve e(Rational(4), Rational(-4));
    CHECK(naive_height(ProjectivePoint::affine(e, Rational(1), Rational(2))).to_double() == doctest::Approx(std::log(2.0)));
    CHECK(naive_height(ProjectivePoint::identity()).to_double() == 0);
    const WeierstrassCurve f(Rational(-15), Rational(0));
    // (1/16 : 31/32 : 1) = (2 : 31 : 32).
    CHECK(naive_height(ProjectivePoint::affine(f, Rational(1, 16), Rational(31, 32))).to_double() ==
          doctest::Approx(std::log(32.0)));
}

TEST_CASE("height band constants") {
    const WeierstrassCurve e(Rational(4), Rational(-4));
    const HeightBand b = height_band(e);
    const double eta = e.eta().to_double();
    CHECK(b.lower.to_double() == doctest::Approx(0.75 * eta + 5));
    CHECK(b.upper.to_double() == doctest::Approx(1.5 * eta + 8));
}

TEST_CASE("Neron-Tate heights") {
    const WeierstrassCurve torsion_curve(Rational(0), Rational(-4));
    const NeronTateResult t =
        neron_tate(torsion_curve, ProjectivePoint::affine(torsion_curve, Rational(0), Rational(2)), tolerance());
    CHECK(t.torsion);
    CHECK(t.value.value.is_zero());
    CHECK(neron_tate(torsion_curve, ProjectivePoint::identity(), tolerance()).torsion);

    const WeierstrassCurve e(Rational(4), Rational(-4));
    const DivisionPolyCache cache(e);
    const ProjectivePoint p = ProjectivePoint::affine(e, Rational(1), Rational(2));
    const NeronTateResult h1 = neron_tate(cache, p, tolerance());
    const NeronTateResult h2 = neron_tate(cache, scalar_mul(cache, 2, p), tolerance());
    CHECK_FALSE(h1.torsion);
    CHECK(h1.error_bound <= tolerance());
    CHECK(std::abs(h2.value.to_double() - 4 * h1.value.to_double()) <= 5e-3);
    CHECK(h1.value.to_double() > 0);

    const double naive = naive_height(p).to_double();
    const HeightBand band = height_band(e);
    CHECK(naive - h1.value.to_double() >= -band.lower.to_double() - 1e-3);
    CHECK(naive - h1.value.to_double() <= band.upper.to_double() + 1e-3);

    CHECK_THROWS_AS(neron_tate(cache, p, Real::from_long(0, default_precision)), precondition_error);
    CHECK_THROWS_AS(neron_tate(cache, p, tolerance(), 1), invariant_error);
}

TEST_CASE("random points respect the height band") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 6; ++i) {
        const testsupport::CurveSample s = testsupport::random_curve_with_point(rng);
        const NeronTateResult h = neron_tate(s.curve, s.point, tolerance());
        const double diff = naive_height(s.point).to_double() - h.value.to_double();
        const HeightBand band = height_band(s.curve);
        CHECK(diff >= -band.lower.to_double() - 1e-3);
        CHECK(diff <= band.upper.to_double() + 1e-3);
    }
}

TEST_CASE("small coordinate estimates") {
    const WeierstrassCurve f(Rational(-15), Rational(0));
    const ProjectivePoint q = ProjectivePoint::affine(f, Rational(1, 16), Rational(31, 32));
    const SmallCoordinateReport r = small_coordinate_estimates(f, q, Place::prime(2));
    CHECK(r.distance == Rational(1, 2));
    CHECK(r.coordinate_cap == 1);
    CHECK(r.delta_abs == 1);
    CHECK(r.all_ok());

    const WeierstrassCurve e(Rational(4), Rational(-4));
    const ProjectivePoint p = ProjectivePoint::affine(e, Rational(1), Rational(2));
    CHECK_THROWS_AS(small_coordinate_estimates(e, p, Place::archimedean()), precondition_error);
    CHECK_THROWS_AS(small_coordinate_estimates(e, p, Place::prime(2)), precondition_error);
}
