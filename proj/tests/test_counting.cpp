#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "ecb/counting.hpp"
#include "ecb/errors.hpp"

using namespace ecb;

namespace {

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace

TEST_CASE("weighted simplex counts") {
    const SimplexCount c = simplex_count({{Rational(2), Rational(3)}, Rational(1)});
    CHECK(c.exact == 7);
    REQUIRE(c.lower);
    CHECK(*c.t == 0);
    CHECK(*c.lower == 0);
    CHECK(*c.upper == 18);
    CHECK(c.within_bounds());

    for (unsigned long n = 1; n <= 4; ++n)
        for (unsigned long b = 0; b <= 6; ++b) {
            const WeightedSimplex s{std::vector<Rational>(n, Rational(1)), Rational(static_cast<long>(b))};
            CHECK(simplex_count(s).exact == binomial(b + n, n));
        }

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> w(1, 5), bd(0, 7), len(1, 4);
    for (int i = 0; i < 40; ++i) {
        WeightedSimplex s;
        const int n = len(rng);
        for (int j = 0; j < n; ++j) {
            Rational r(w(rng), (i % 2 == 0) ? 1 : w(rng));
            r.canonicalize();
            s.weights.push_back(r);
        }
        s.bound = Rational(bd(rng));
        const SimplexCount sc = simplex_count(s);
        CHECK(sc.exact == simplex_brute_force(s));
        CHECK(sc.within_bounds());
    }

    CHECK_THROWS_AS(simplex_count({{}, Rational(1)}), precondition_error);
    CHECK_THROWS_AS(simplex_count({{Rational(0)}, Rational(1)}), precondition_error);
    CHECK_THROWS_AS(simplex_count({{Rational(1)}, Rational(-1)}), precondition_error);
}

TEST_CASE("cone covers") {
    const ConeCover one = cone_cover(1, Rational(2), 200);
    CHECK(one.centers.size() == 2);
    CHECK(one.certificate_passed());

    const ConeCover two = cone_cover(2, Rational(2), 2000);
    CHECK(two.bound == 25);
    CHECK(two.within_bound());
    CHECK(two.certificate_passed());
    CHECK(two.angle == doctest::Approx(std::acos(0.5)));
    CHECK(two.chord_radius == doctest::Approx(2 * std::sin(std::acos(0.5) / 4)));

    const ConeCover three = cone_cover(3, Rational(8), 4000);
    CHECK(three.bound == 729);
    CHECK(three.within_bound());
    CHECK(three.certificate_passed());
    for (const auto& c : three.centers) {
        double norm = 0;
        for (double x : c) norm += x * x;
        CHECK(norm == doctest::Approx(1.0));
    }
    CHECK(three.cover_index({1.0, 0.0, 0.0}).has_value());

    CHECK_THROWS_AS(cone_cover(0, Rational(2)), precondition_error);
    CHECK_THROWS_AS(cone_cover(2, Rational(1)), precondition_error);
}

TEST_CASE("lattice enumeration") {
    const MordellWeilModel rank1 = MordellWeilModel::synthetic({{Rational(1)}});
    const EnumerationResult e1 = enumerate_bounded(rank1, Rational(4));
    CHECK(e1.points.size() == 5);
    CHECK(e1.bound.to_double() == doctest::Approx(5.0));
    CHECK(e1.within_bound() == Truth::yes);

    const MordellWeilModel plane = MordellWeilModel::synthetic({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    const EnumerationResult e2 = enumerate_bounded(plane, Rational(1));
    CHECK(e2.points.size() == 5);
    CHECK(e2.bound.to_double() == doctest::Approx(9.0));
    CHECK(e2.within_bound() == Truth::yes);

    const MordellWeilModel with_torsion = MordellWeilModel::synthetic({{Rational(1)}}, 2);
    const EnumerationResult e0 = enumerate_bounded(with_torsion, Rational(0));
    CHECK(e0.points.size() == 2);
    for (const LatticePoint& p : e0.points) CHECK(p.coefficients == std::vector<long>{0});

    CHECK(minimal_nonzero_height(MordellWeilModel::synthetic({{Rational(2), Rational(1)}, {Rational(1), Rational(2)}}))
              .to_double() == doctest::Approx(2.0));
    CHECK_THROWS_AS(MordellWeilModel::synthetic({{Rational(1), Rational(2)}, {Rational(2), Rational(1)}}),
                    precondition_error);
    CHECK_THROWS_AS(check_positive_definite(std::vector<std::vector<Rational>>{{Rational(1), Rational(0)},
                                                                               {Rational(1), Rational(1)}}),
                    precondition_error);
}

TEST_CASE("curve-backed lattice") {
    const WeierstrassCurve e(Rational(4), Rational(-4));
    const Real tol = Real::from_rational(Rational(1, 1000), default_precision);
    const MordellWeilModel m =
        MordellWeilModel::from_points(e, {ProjectivePoint::affine(e, Rational(1), Rational(2))}, {}, tol);
    CHECK(m.rank() == 1);
    const EnumerationResult r = enumerate_bounded(m, Rational(1), tol);
    // hhat(P) is about 0.0748, so |n| <= 3 qualifies and |n| = 4 does not.
    CHECK(r.points.size() == 7);
    CHECK(r.within_bound() == Truth::yes);
    for (const LatticePoint& p : r.points) {
        REQUIRE(p.point);
        REQUIRE(p.verified);
    }
}

TEST_CASE("a-sequences") {
    AiSequenceInput in;
    in.heights = {Rational(1), Rational(49), Rational(2401)};
    in.alpha = Rational(1, 4);
    const AiSequenceReport r = ai_sequence(in);
    CHECK(r.a == std::vector<Integer>{49, 7, 1});
    CHECK(r.growth_clause == Truth::yes);
    CHECK(r.ratio_clause == Truth::yes);
    CHECK(r.a_powers_of_seven);
    CHECK(r.a_ratio_seven);
    CHECK(r.a_square_sum);
    CHECK(r.a_count);
    CHECK(r.a_inverse_alpha);
    CHECK_FALSE(r.falsified());

    AiSequenceInput two;
    two.heights = {Rational(1), Rational(100)};
    two.alpha = Rational(1, 4);
    CHECK(ai_sequence(two).a == std::vector<Integer>{10, 1});

    AiSequenceInput bad;
    bad.heights = {Rational(1), Rational(2)};
    bad.alpha = Rational(1, 4);
    const AiSequenceReport b = ai_sequence(bad);
    CHECK(b.growth_clause == Truth::no);
    const auto v = b.violated_clauses();
    CHECK(std::find(v.begin(), v.end(), "growth") != v.end());

    AiSequenceInput unsorted;
    unsorted.heights = {Rational(4), Rational(1)};
    unsorted.alpha = Rational(1, 4);
    CHECK_THROWS_AS(ai_sequence(unsorted), precondition_error);
}

TEST_CASE("Siegel small solutions") {
    CHECK(siegel_small_solution({{Rational(1), Rational(1), Rational(1)}}).x == std::vector<Integer>{1, -1, 0});
    CHECK(siegel_small_solution({{Rational(1), Rational(0), Rational(-2)}, {Rational(0), Rational(1), Rational(-3)}}).x ==
          std::vector<Integer>{2, 3, 1});

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::vector<Rational>> a(2, std::vector<Rational>(5));
        for (auto& row : a)
            for (auto& x : row) x = d(rng);
        const SiegelSolution s = siegel_small_solution(a);
        bool nonzero = false;
        for (const Integer& x : s.x) nonzero = nonzero || x != 0;
        CHECK(nonzero);
        for (const auto& row : a) {
            Rational dot = 0;
            for (std::size_t j = 0; j < 5; ++j) dot += row[j] * s.x[j];
            CHECK(dot == 0);
        }
        CHECK(s.dirichlet_exponent == Rational(2, 3));
    }
    CHECK_THROWS_AS(siegel_small_solution({{Rational(1)}}), precondition_error);
}
