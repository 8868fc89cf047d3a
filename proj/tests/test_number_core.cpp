#include <random>

#include "doctest.h"

#include "ecb/errors.hpp"
#include "ecb/number_core.hpp"
#include "support.hpp"

using namespace ecb;

TEST_CASE("rational parsing and formatting round-trip") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("17") == Rational(17));
    CHECK(format_rational(Rational(-3, 2)) == "-3/2");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1.5"), precondition_error);
    CHECK_THROWS_AS(parse_rational("1/0"), precondition_error);
    CHECK_THROWS_AS(parse_rational(""), precondition_error);
}

TEST_CASE("places") {
    CHECK(Place::parse("inf").is_archimedean());
    CHECK(Place::parse("7") == Place::prime(7));
    CHECK_THROWS_AS(Place::prime(6), precondition_error);
    CHECK(Place::archimedean() < Place::prime(2));
    CHECK(Place::prime(2) < Place::prime(3));
}

TEST_CASE("absolute values") {
    CHECK(abs_value(Rational(6), Place::prime(2)) == Rational(1, 2));
    CHECK(abs_value(Rational(6), Place::archimedean()) == Rational(6));
    CHECK(abs_value(Rational(-3, 4), Place::prime(2)) == Rational(4));
    CHECK(abs_value(Rational(0), Place::prime(5)) == Rational(0));
    CHECK(valuation(Rational(-3, 40), Integer(2)) == -3);
    CHECK_THROWS_AS(log_abs_value(Rational(0), Place::archimedean()), ecb::domain_error);
}

TEST_CASE("prime support") {
    const std::vector<Integer> ps = prime_divisors(Integer(360));
    REQUIRE(ps.size() == 3);
    CHECK(ps[0] == 2);
    CHECK(ps[1] == 3);
    CHECK(ps[2] == 5);
    // 2^61 - 1 is prime; (2^31 - 1)(2^61 - 1) needs the factoring path.
    const Integer m61 = (Integer(1) << 61) - 1, m31 = (Integer(1) << 31) - 1;
    const std::vector<Integer> big = prime_divisors(m61 * m31);
    REQUIRE(big.size() == 2);
    CHECK(big[0] == m31);
    CHECK(big[1] == m61);
    const std::vector<Place> s = support_places({Rational(-35, 12)});
    REQUIRE(s.size() == 5);
    CHECK(s[0].is_archimedean());
    CHECK(s[4] == Place::prime(7));
}

TEST_CASE("product formula") {
    for (const Rational& x : {Rational(6), Rational(1), Rational(-35, 12)}) {
        const Interval d = product_formula_defect(x).enclosure();
        CHECK(d.contains_zero());
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const LogValue d = product_formula_defect(testsupport::random_rational(rng, 1000000));
        CHECK(abs(d.value) <= Real::from_rational(Rational(1, Integer(1) << 120), 128));
    }
}

TEST_CASE("tuple heights") {
    CHECK(tuple_height({Rational(1), Rational(1), Rational(1)}).to_double() == doctest::Approx(0));
    CHECK(tuple_height({Rational(1), Rational(2)}).to_double() == doctest::Approx(std::log(2.0)));
    CHECK(tuple_height({Rational(1), Rational(0), Rational(-4)}).to_double() == doctest::Approx(std::log(4.0)));
    // Projective invariance: scaling by 6/35 leaves the height unchanged.
    const double h = tuple_height({Rational(3, 5), Rational(7), Rational(-1, 2)}).to_double();
    CHECK(tuple_height({Rational(18, 175), Rational(6, 5), Rational(-3, 35)}).to_double() == doctest::Approx(h));
    CHECK(h == doctest::Approx(std::log(70.0)));
    CHECK_THROWS_AS(tuple_height({Rational(0), Rational(0)}), ecb::domain_error);
}

TEST_CASE("primitive integer vectors and local maxima") {
    const std::vector<Integer> v = primitive_integer_vector({Rational(-1, 2), Rational(3, 4), Rational(0)});
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 2);
    CHECK(v[1] == -3);
    CHECK(v[2] == 0);
    CHECK(local_max({Rational(1, 2), Rational(3)}, Place::prime(2)) == Rational(2));
    CHECK(local_max({Rational(1, 2), Rational(3)}, Place::archimedean()) == Rational(3));
}

TEST_CASE("intervals round outward") {
    const Interval third = Interval::exact(Rational(1, 3));
    CHECK(third.lo() < third.hi());
    const Interval sum = third + third + third;
    CHECK(sum.lo() <= Real::from_long(1, 128));
    CHECK(sum.hi() >= Real::from_long(1, 128));
    CHECK(less(Interval::exact(1L), Interval::e()) == Truth::yes);
    CHECK(less(Interval::exact(3L), Interval::e()) == Truth::no);
    CHECK(less_equal(Interval::exact(2L), Interval::exact(2L)) == Truth::yes);
    const Interval l = log(Interval::e());
    CHECK(l.contains_zero() == false);
    CHECK(l.lo() <= Real::from_long(1, 128));
    CHECK(l.hi() >= Real::from_long(1, 128));
}
