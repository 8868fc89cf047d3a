// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any line fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ecb/bounds.hpp"
#include "ecb/counting.hpp"
#include "ecb/curve.hpp"
#include "ecb/division.hpp"
#include "ecb/errors.hpp"
#include "ecb/heights.hpp"
#include "ecb/number_core.hpp"
#include "ecb/poly.hpp"
#include "ecb/series.hpp"
#include "golden_formulas.hpp"
#include "support.hpp"

using namespace ecb;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records a failed check; the first few are kept in the detail text.
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (failures < 4) detail << (failures == 0 ? "" : "; ") << what;
        ++failures;
        pass = false;
    }
    int failures = 0;
};

const int prec = default_precision;

Interval ival(const Rational& q) { return Interval::exact(q, prec); }
Interval ival(long v) { return Interval::exact(v, prec); }

Real tau() { return Real::from_rational(Rational(1, 1000), prec); }

MultiPoly parse_like(const MultiPoly& shape, const char* text) { return MultiPoly::parse(text, shape.variables()); }

std::string describe(const ProjectivePoint& p) { return p.to_string(); }

// ---------------------------------------------------------------------------------------------
// 1. Printed formulas.

void golden_vectors(Outcome& o) {
    const DivisionPolyCache cache = DivisionPolyCache::generic();
    o.require(cache.q(1) == MultiPoly::constant(cache.variables(), Rational(1)), "Q1");
    o.require(cache.q(2) == MultiPoly::variable(cache.variables(), "Y"), "Q2");
    o.require(cache.q(3) == parse_like(cache.q(3), golden::q3), "Q3");
    o.require(cache.q(4) == parse_like(cache.q(4), golden::q4), "Q4");
    const MultiPoly x = MultiPoly::variable(cache.variables(), "X");
    o.require(cache.reduce(x.pow(3)) == parse_like(x, golden::t3), "T3");
    const MultiPoly delta = chart_delta(std::nullopt);
    o.require(delta == parse_like(delta, golden::delta), "Delta~");

    const char* const families[3][3] = {{golden::a1_0, golden::a1_1, golden::a1_2},
                                        {golden::a2_0, golden::a2_1, golden::a2_2},
                                        {golden::a3_0, golden::a3_1, golden::a3_2}};
    for (int k = 1; k <= 3; ++k) {
        const AdditionFamily& a = generic_addition_family(k);
        for (int i = 0; i < 3; ++i) {
            o.require(a.forms[static_cast<std::size_t>(i)] ==
                          parse_like(a.forms[static_cast<std::size_t>(i)], families[k - 1][i]),
                      "addition family " + std::to_string(k) + " form " + std::to_string(i));
        }
    }

    const MultiplicationForms& f2 = cache.mult_forms(2);
    const char* const dup[3] = {golden::f2_0, golden::f2_1, golden::f2_2};
    for (std::size_t i = 0; i < 3; ++i) o.require(f2.forms[i] == parse_like(f2.forms[i], dup[i]), "F^(2) form " + std::to_string(i));
    const MultiplicationForms& f3 = cache.mult_forms(3);
    const char* const trip[3] = {golden::f3_0, golden::f3_1, golden::f3_2};
    std::array<MultiPoly, 3> printed;
    for (std::size_t i = 0; i < 3; ++i) {
        printed[i] = parse_like(f3.forms[i], trip[i]);
        if (printed[i] == f3.forms[i]) continue;
        const MultiPoly diff = printed[i] - f3.forms[i];
        o.require(false, "F^(3) form " + std::to_string(i) + " differs from the printed one by " +
                             std::to_string(diff.monomial_count()) + " monomials");
    }
    if (o.pass) return;

    // Diagnostics only: congruence modulo the curve equation and the action on points.
    std::mt19937_64 rng(10);
    bool congruent0 = true, congruent1 = true, printed_triples = true, computed_triples = true;
    for (int s = 0; s < 10; ++s) {
        const testsupport::CurveSample c = testsupport::random_curve_with_point(rng);
        const std::vector<Rational> at{c.curve.g2(), c.curve.g3(), c.point.x(), c.point.y(), c.point.z()};
        congruent0 = congruent0 && printed[0].evaluate(at) == f3.forms[0].evaluate(at);
        congruent1 = congruent1 && printed[1].evaluate(at) == f3.forms[1].evaluate(at);
        const ProjectivePoint triple = add(c.curve, add(c.curve, c.point, c.point), c.point);
        auto gives_triple = [&](const std::array<MultiPoly, 3>& forms) {
            const Rational x = forms[0].evaluate(at), y = forms[1].evaluate(at), z = forms[2].evaluate(at);
            if (!c.curve.contains(x, y, z)) return false;
            return ProjectivePoint::on(c.curve, x, y, z) == triple;
        };
        printed_triples = printed_triples && gives_triple(printed);
        computed_triples = computed_triples && gives_triple(f3.forms);
    }
    o.detail << "; printed F0^(3) equals the computed form on the curve: " << (congruent0 ? "yes" : "no")
             << "; printed F1^(3) equals it on the curve: " << (congruent1 ? "yes" : "no")
             << "; printed forms map P to 3P: " << (printed_triples ? "yes" : "no")
             << "; computed forms map P to 3P: " << (computed_triples ? "yes" : "no");
}

// ---------------------------------------------------------------------------------------------
// 2. Scalar multiplication by the forms against repeated addition.

void scalar_mul_oracle(Outcome& o) {
    std::mt19937_64 rng(20);
    for (int s = 0; s < 20; ++s) {
        const testsupport::CurveSample sample = testsupport::random_curve_with_point(rng);
        const DivisionPolyCache cache(sample.curve);
        ProjectivePoint repeated = ProjectivePoint::identity();
        for (int n = 1; n <= 12; ++n) {
            repeated = add(sample.curve, repeated, sample.point);
            const ProjectivePoint by_forms = apply_mult_forms(cache, n, sample.point);
            o.require(by_forms == repeated, "n=" + std::to_string(n) + " at " + describe(sample.point) + ": " +
                                                describe(by_forms) + " vs " + describe(repeated));
            o.require(scalar_mul(cache, n, sample.point) == repeated, "scalar_mul n=" + std::to_string(n));
        }
    }
    o.detail << (o.pass ? "20 curves, n <= 12" : "");
}

// ---------------------------------------------------------------------------------------------
// 3. Degrees and heights of the multiplication and addition forms.

void degree_height_laws(Outcome& o) {
    std::mt19937_64 rng(30);
    const long family_const[3] = {12, 24, 144};
    const long length_const[3] = {38, 106, 425};
    for (int s = 0; s < 10; ++s) {
        const WeierstrassCurve curve = testsupport::random_curve_with_point(rng).curve;
        const Interval eta = curve.eta(prec).enclosure();
        const DivisionPolyCache cache(curve);
        for (int n = 1; n <= 8; ++n) {
            const MultiplicationForms& f = cache.mult_forms(n);
            for (const MultiPoly& form : f.forms) {
                o.require(form.total_degree() == n * n && form.is_homogeneous(), "degree of F^(" + std::to_string(n) + ")");
            }
            const Interval cap = ival(Rational(3, 2)) * (eta + ival(3L)) * ival(static_cast<long>(n * n));
            o.require(less_equal(gauss_weil_height(f.family(), prec).enclosure(), cap) == Truth::yes,
                      "height of F^(" + std::to_string(n) + ")");
        }
        for (int k = 1; k <= 3; ++k) {
            const AdditionFamily a = addition_family(curve, k);
            for (const MultiPoly& form : a.forms) {
                o.require(form.is_zero() || form.multidegree(pair_blocks()) == std::vector<int>{2, 2},
                          "bidegree of family " + std::to_string(k));
            }
            const Interval kk = ival(static_cast<long>(k));
            const Interval gw_cap = kk * eta + log(ival(family_const[k - 1]));
            o.require(less_equal(gauss_weil_height(a.family(), prec).enclosure(), gw_cap) == Truth::yes,
                      "Gauss-Weil cap of family " + std::to_string(k));
            std::vector<Place> places = relevant_places(a.family());
            for (const Place& v : curve.bad_places()) places.push_back(v);
            std::sort(places.begin(), places.end());
            places.erase(std::unique(places.begin(), places.end()), places.end());
            for (const Place& v : places) {
                if (!v.is_archimedean()) {
                    // Compared without logarithms, since equality is common here.
                    Rational cap = 1;
                    for (int i = 0; i < k; ++i) cap *= curve.M(v);
                    o.require(local_height_exact(a.family(), v) <= cap,
                              "local height of family " + std::to_string(k) + " at " + v.name());
                    continue;
                }
                const Interval mv = curve.m(v, prec).enclosure();
                const Interval cap = kk * mv + log(ival(family_const[k - 1]));
                o.require(less_equal(local_height(a.family(), v, prec).enclosure(), cap) == Truth::yes,
                          "local height of family " + std::to_string(k) + " at " + v.name());
                {
                    const Interval lcap = kk * mv + log(ival(length_const[k - 1]));
                    o.require(less_equal(local_length(a.family(), v, prec).enclosure(), lcap) == Truth::yes,
                              "archimedean length of family " + std::to_string(k));
                }
            }
        }
    }
    o.detail << (o.pass ? "10 curves, n <= 8, three addition families" : "");
}

// ---------------------------------------------------------------------------------------------
// 4. Formal parametrization.

void parametrization(Outcome& o) {
    o.require(dz_by_taylor(std::nullopt, 8) == dz_by_derivation(std::nullopt, 8), "symbolic recurrences differ");
    std::mt19937_64 rng(40);
    const int order = 10;
    for (int s = 0; s < 5; ++s) {
        const testsupport::CurveSample sample = testsupport::random_curve_with_point(rng);
        const WeierstrassCurve& curve = sample.curve;
        o.require(dz_by_taylor(curve, 8) == dz_by_derivation(curve, 8), "recurrences differ");
        const SeriesCoefficients c = dz_coefficients(curve, order);
        const ResidualReport r = verify_parametrization(c);
        o.require(r.residual_order() > order, "residual order " + std::to_string(r.residual_order()));
        const auto chart = sample.point.unit_y_chart();
        if (chart && chart_delta(curve).evaluate({chart->first, chart->second}) != 0) {
            o.require(verify_parametrization_at(c, chart->first, chart->second).residual_order() > order,
                      "point residual");
        }
        int deg = 0;
        for (const MultiPoly& p : c.dz) deg = std::max(deg, p.total_degree());
        o.require(deg <= 3 * order - 1, "degree " + std::to_string(deg));
        const Interval cap = ival(static_cast<long>(2 * order - 1)) * (curve.eta(prec).enclosure() + ival(4L));
        o.require(less_equal(gauss_weil_height(c.family(), prec).enclosure(), cap) == Truth::yes, "height cap");
    }
    o.detail << (o.pass ? "5 curves, T = 10, both recurrences to order 8" : "");
}

// ---------------------------------------------------------------------------------------------
// 5. Naive against canonical heights.

bool within(const Interval& x, const Interval& lo, const Interval& hi) {
    return less_equal(lo, x) == Truth::yes && less_equal(x, hi) == Truth::yes;
}

void height_band_check(Outcome& o) {
    std::mt19937_64 rng(50);
    const Interval t = Interval(tau(), tau());
    int points = 0;
    for (int s = 0; s < 6; ++s) {
        const testsupport::CurveSample sample = testsupport::random_curve_with_point(rng);
        const DivisionPolyCache cache(sample.curve);
        const HeightBand band = height_band(sample.curve, prec);
        Interval base(prec);
        for (long n = 1; n <= 5; ++n) {
            const ProjectivePoint q = scalar_mul(cache, n, sample.point);
            const NeronTateResult h = neron_tate(cache, q, tau());
            o.require(h.error_bound <= tau(), "Neron-Tate error above tolerance");
            const Interval diff = naive_height(q, prec).enclosure() - h.value.enclosure();
            o.require(within(diff, -band.lower - t, band.upper + t), "band at " + describe(q));
            ++points;
            if (n == 1) {
                base = h.value.enclosure();
                continue;
            }
            const Interval gap = h.value.enclosure() - ival(n * n) * base;
            const Interval slack = ival(n * n + 1) * t;
            o.require(within(gap, -slack, slack), "quadraticity n=" + std::to_string(n));
        }
    }
    const WeierstrassCurve c3(Rational(0), Rational(-4));
    const WeierstrassCurve c2(Rational(4), Rational(0));
    const std::vector<std::pair<WeierstrassCurve, ProjectivePoint>> torsion{
        {c3, ProjectivePoint::affine(c3, Rational(0), Rational(2))},
        {c3, ProjectivePoint::affine(c3, Rational(0), Rational(-2))},
        {c2, ProjectivePoint::affine(c2, Rational(0), Rational(0))},
        {c2, ProjectivePoint::affine(c2, Rational(1), Rational(0))},
        {c2, ProjectivePoint::affine(c2, Rational(-1), Rational(0))}};
    for (const auto& [curve, p] : torsion) {
        const NeronTateResult h = neron_tate(curve, p, tau());
        o.require(h.value.value <= tau(), "torsion height at " + describe(p));
    }
    o.detail << (o.pass ? std::to_string(points) + " points on 6 curves, 5 torsion points" : "");
}

// ---------------------------------------------------------------------------------------------
// 6. Product formula.

void product_formula(Outcome& o) {
    std::mt19937_64 rng(60);
    std::uniform_int_distribution<long> num(-(1L << 40), 1L << 40), den(1, 1L << 40);
    const Real cap = Real::from_rational(Rational(1) / Rational(Integer(1) << 124), prec);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        long a = num(rng);
        if (a == 0) a = 1;
        Rational x(a, den(rng));
        x.canonicalize();
        const LogValue d = product_formula_defect(x, 128);
        const Real mag = abs(d.value);
        worst = std::max(worst, mag.to_double());
        o.require(mag <= cap, "defect " + mag.to_string(6) + " at " + format_rational(x));
    }
    o.detail << (o.pass ? "" : "; ") << "1000 rationals, largest |defect| = " << worst;
}

// ---------------------------------------------------------------------------------------------
// 7. Weighted simplices.

void simplex_checks(Outcome& o) {
    std::mt19937_64 rng(70);
    std::uniform_int_distribution<int> w(1, 6), b(0, 9), len(1, 4), kind(0, 1);
    for (int i = 0; i < 50; ++i) {
        WeightedSimplex s;
        const bool integral = kind(rng) == 0;
        const int n = len(rng);
        for (int j = 0; j < n; ++j) {
            Rational r(w(rng), integral ? 1 : w(rng));
            r.canonicalize();
            s.weights.push_back(r);
        }
        s.bound = integral ? Rational(b(rng)) : Rational(b(rng), w(rng));
        s.bound.canonicalize();
        const SimplexCount c = simplex_count(s);
        o.require(c.exact == simplex_brute_force(s), "brute force mismatch");
        o.require(c.within_bounds(), "integer-weight bounds");
    }
    for (unsigned long n = 1; n <= 5; ++n) {
        for (unsigned long d = 0; d <= 8; ++d) {
            Integer expected;
            mpz_bin_uiui(expected.get_mpz_t(), d + n, n);
            const SimplexCount c =
                simplex_count({std::vector<Rational>(n, Rational(1)), Rational(static_cast<long>(d))});
            o.require(c.exact == expected, "all-ones case");
            o.require(c.within_bounds(), "all-ones bounds");
        }
    }
    o.detail << (o.pass ? "50 random instances, 45 all-ones cases" : "");
}

// ---------------------------------------------------------------------------------------------
// 8. Lattice enumeration.

std::vector<std::vector<Rational>> random_gram(std::mt19937_64& rng, int r) {
    std::uniform_int_distribution<int> off(-2, 2), diag(1, 3);
    std::vector<std::vector<Rational>> l(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r), 0));
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) l[i][j] = off(rng);
        l[i][i] = diag(rng);
    }
    std::vector<std::vector<Rational>> g(l.size(), std::vector<Rational>(l.size(), 0));
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j)
            for (std::size_t k = 0; k < l.size(); ++k) g[i][j] += l[i][k] * l[j][k];
    return g;
}

void lattice_checks(Outcome& o) {
    const EnumerationResult exact = enumerate_bounded(MordellWeilModel::synthetic({{Rational(1)}}), Rational(4));
    o.require(exact.points.size() == 5, "rank-1 instance gave " + std::to_string(exact.points.size()) + " points");
    o.require(less_equal(exact.bound, ival(5L)) == Truth::yes && less_equal(ival(5L), exact.bound) == Truth::yes,
              "rank-1 bound is not 5");
    o.require(exact.within_bound() == Truth::yes, "rank-1 count above bound");

    std::mt19937_64 rng(80);
    std::uniform_int_distribution<int> rank(1, 3), tor(1, 4), radius(0, 30);
    std::size_t total = 0;
    for (int i = 0; i < 20; ++i) {
        const int r = rank(rng);
        const MordellWeilModel m = MordellWeilModel::synthetic(random_gram(rng, r), static_cast<std::size_t>(tor(rng)));
        const EnumerationResult e = enumerate_bounded(m, Rational(radius(rng)));
        total += e.points.size();
        o.require(e.within_bound() == Truth::yes, "random model " + std::to_string(i) + ": " +
                                                      std::to_string(e.points.size()) + " points");
    }
    o.detail << (o.pass ? "5 points against bound 5; 20 random models, " + std::to_string(total) + " points" : "");
}

// ---------------------------------------------------------------------------------------------
// 9. Cone covers.

void cone_checks(Outcome& o) {
    std::ostringstream sizes;
    for (int r = 1; r <= 3; ++r) {
        for (long c1 : {2L, 8L, 32L}) {
            const ConeCover c = cone_cover(r, Rational(c1), 10000);
            o.require(c.within_bound(), "r=" + std::to_string(r) + " c1=" + std::to_string(c1) + " count " +
                                            std::to_string(c.centers.size()));
            o.require(c.certificate_passed(), "r=" + std::to_string(r) + " c1=" + std::to_string(c1) + " uncovered " +
                                                  std::to_string(c.uncovered));
            sizes << (r == 1 && c1 == 2 ? "" : " ") << c.centers.size() << "/" << c.bound.get_str();
        }
    }
    o.detail << (o.pass ? "" : "; ") << "counts/bounds " << sizes.str();
}

// ---------------------------------------------------------------------------------------------
// 10. Optimizers and parameter constraints.

void optimizer_checks(Outcome& o) {
    o.require(choose_m0(Epsilon::parse("1e-6")) == 3, "m0(1e-6)");
    const std::vector<std::string> grid{"1e-5", "1e-6", "1e-8", "1e-10", "1e-12", "1e-15", "1e-20", "1e-30", "1e-50", "1e-100"};
    double worst_ratio = 0;
    for (const std::string& e : grid) {
        const Epsilon eps = Epsilon::parse(e);
        o.require(f_m0_cap(eps) == Truth::yes, "f(m0) cap at " + e);
        for (long eta : {0L, 5L, 50L}) {
            o.require(r_m0_cap(eps, ival(eta)) == Truth::yes, "R(m0) cap at " + e + ", eta " + std::to_string(eta));
        }
        const int m0 = choose_m0(eps);
        const Interval at_m0 = r_expression(m0, eps, ival(0L));
        Interval best = at_m0;
        for (int m = 2; m <= m0 + 3; ++m) {
            const Interval v = r_expression(m, eps, ival(0L));
            if (v.mid() < best.mid()) best = v;
        }
        worst_ratio = std::max(worst_ratio, (at_m0 / best).to_double());
    }
    const std::vector<std::pair<int, long>> m1_grid{{1, 4}, {1, 10}, {2, 2}, {2, 20}, {3, 2},
                                                     {4, 1}, {4, 2}, {4, 50}, {8, 1}, {8, 10}};
    for (const auto& [r, k] : m1_grid) {
        const Epsilon eps = Epsilon::exp_minus(Rational(k));
        const long expected = (static_cast<long>(r) * k) / 4 + 2;
        const std::string at = "r=" + std::to_string(r) + " eps=e^-" + std::to_string(k);
        o.require(choose_m1(eps, r) == expected, "m1 at " + at);
        o.require(s_m1_cap(eps, r) == Truth::yes, "S(m1) cap at " + at);
    }
    for (int m = 2; m <= 6; ++m) {
        for (const char* e : {"1e-3", "1e-4", "1e-6", "1e-10", "1e-20"}) {
            o.require(parameters(Epsilon::parse(e), m).all_hold(), "parameter constraints at m=" + std::to_string(m) + " eps=" + e);
        }
    }
    o.detail << (o.pass ? "" : "; ") << "diagnostic: max R(m0)/min R(m) = " << worst_ratio;
}

// ---------------------------------------------------------------------------------------------
// 11. Mumford auxiliary forms.

void mumford_forms_checks(Outcome& o) {
    std::mt19937_64 rng(110);
    std::uniform_int_distribution<long> mult(1, 4);
    for (int i = 0; i < 20; ++i) {
        const testsupport::CurveSample s = testsupport::random_curve_with_point(rng);
        const DivisionPolyCache cache(s.curve);
        const ProjectivePoint x1 = scalar_mul(cache, mult(rng), s.point);
        const ProjectivePoint x2 = scalar_mul(cache, -mult(rng), s.point);
        const ProjectivePoint y = sub(s.curve, x1, x2);
        const MumfordForms f = mumford_aux_forms(s.curve, y);
        const std::vector<Rational> at{x1.x(), x1.y(), x1.z(), x2.x(), x2.y(), x2.z()};
        o.require(f.q1.evaluate(at) == 0 && f.q2.evaluate(at) == 0, "forms do not vanish at instance " + std::to_string(i));
        o.require(f.bidegree1 == std::vector<int>{4, 4} && f.bidegree2 == std::vector<int>{4, 4}, "bidegree");
        for (const LocalCapCheck& c : mumford_local_caps(s.curve, y, f)) {
            o.require(c.holds == Truth::yes, "local cap at " + c.place.name() + " on instance " + std::to_string(i));
        }
    }
    o.detail << (o.pass ? "20 instances" : "");
}

// ---------------------------------------------------------------------------------------------
// 12. Gap principles and census.

struct SweepTally {
    std::size_t instances = 0;
    std::size_t certified = 0;
    std::size_t falsified = 0;

    void add(const GapCheck& g) {
        ++instances;
        if (g.hypotheses == Truth::yes) ++certified;
        if (g.falsified()) ++falsified;
    }
};

// Points nP, n = 1..count, with hhat and pairings from bilinearity and system membership
// evaluated on the curve.
struct PointFamily {
    std::vector<GapPoint> points;
    std::vector<std::vector<Interval>> pairings;
};

PointFamily multiples(const Interval& base, std::size_t count, const std::function<Truth(long)>& membership) {
    PointFamily f;
    for (std::size_t i = 1; i <= count; ++i) {
        f.points.push_back({ival(static_cast<long>(i * i)) * base, membership(static_cast<long>(i))});
    }
    f.pairings.assign(count, std::vector<Interval>(count, Interval(prec)));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) f.pairings[i][j] = ival(static_cast<long>((i + 1) * (j + 1))) * base;
    return f;
}

void sweep(const PointFamily& f, const Epsilon& eps, const Interval& eta, SweepTally& tally) {
    const std::size_t n = f.points.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            tally.add(mumford_check(f.points[a], f.points[b], f.pairings[a][b], a != b, eps, eta));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            tally.add(vojta_check({f.points[a], f.points[b]},
                                  {{f.pairings[a][a], f.pairings[a][b]}, {f.pairings[b][a], f.pairings[b][b]}}, eps, eta));
            for (std::size_t c = b + 1; c < n; ++c) {
                const std::vector<std::size_t> idx{a, b, c};
                std::vector<GapPoint> pts;
                std::vector<std::vector<Interval>> pair(3, std::vector<Interval>(3, Interval(prec)));
                for (std::size_t i = 0; i < 3; ++i) {
                    pts.push_back(f.points[idx[i]]);
                    for (std::size_t j = 0; j < 3; ++j) pair[i][j] = f.pairings[idx[i]][idx[j]];
                }
                tally.add(vojta_check(pts, pair, eps, eta));
            }
        }
}

void consistency_sweeps(Outcome& o) {
    const Epsilon eps = Epsilon::parse("1e-5");
    SweepTally synthetic, real;

    // Synthetic rank-one lattices: heights exact, system membership unknown.
    for (long h : {1L, 3L, 7L}) {
        const PointFamily f = multiples(ival(Rational(h, 10)), 12, [](long) { return Truth::unknown; });
        sweep(f, eps, ival(0L), synthetic);
    }

    // Curve points, with membership in system (I) at the 2-adic place.
    std::mt19937_64 rng(120);
    for (int s = 0; s < 8; ++s) {
        const testsupport::CurveSample sample = testsupport::random_curve_with_point(rng);
        const DivisionPolyCache cache(sample.curve);
        const NeronTateResult h = neron_tate(cache, sample.point, tau());
        const ApproximationSystem system{sample.curve, {Place::prime(2)}, {Rational(1)}, eps, std::nullopt};
        const PointFamily f = multiples(h.enclosure(), 8, [&](long n) {
            return ss_predicate(system, scalar_mul(cache, n, sample.point)).holds;
        });
        sweep(f, eps, sample.curve.eta(prec).enclosure(), real);
    }
    o.require(synthetic.falsified == 0, std::to_string(synthetic.falsified) + " synthetic falsifications");
    o.require(real.falsified == 0, std::to_string(real.falsified) + " curve falsifications");
    o.require(synthetic.instances + real.instances >= 1000, "fewer than 1000 instances");

    // Census runs.
    struct Run {
        std::string name;
        MordellWeilModel model;
        ApproximationSystem system;
        Rational cap;
    };
    const WeierstrassCurve a(Rational(4), Rational(-4));
    const WeierstrassCurve b(Rational(-15), Rational(0));
    std::vector<Run> runs;
    runs.push_back({"(4,-4) at inf",
                    MordellWeilModel::from_points(a, {ProjectivePoint::affine(a, Rational(1), Rational(2))}, {}, tau()),
                    {a, {Place::archimedean()}, {Rational(1)}, eps, std::nullopt},
                    Rational(2)});
    runs.push_back({"(-15,0) at 2",
                    MordellWeilModel::from_points(b, {ProjectivePoint::affine(b, Rational(1, 16), Rational(31, 32))}, {}, tau()),
                    {b, {Place::prime(2)}, {Rational(1)}, eps, std::nullopt},
                    Rational(100)});
    runs.push_back({"(-15,0) at inf and 2",
                    MordellWeilModel::from_points(b, {ProjectivePoint::affine(b, Rational(1, 16), Rational(31, 32))}, {}, tau()),
                    {b, {Place::archimedean(), Place::prime(2)}, {Rational(1, 2), Rational(1, 2)}, eps, std::nullopt},
                    Rational(100)});
    runs.push_back({"(4,-4) at 2 and 3",
                    MordellWeilModel::from_points(a, {ProjectivePoint::affine(a, Rational(1), Rational(2))}, {}, tau()),
                    {a, {Place::prime(2), Place::prime(3)}, {Rational(1, 3), Rational(2, 3)}, Epsilon::parse("exp(-12)"),
                     std::nullopt},
                    Rational(4)});
    std::size_t certain = 0;
    for (const Run& r : runs) {
        const CensusReport rep = census(r.model, r.system, r.cap, 4);
        o.require(rep.singleton_property, "singleton property fails in census " + r.name);
        o.require(!rep.falsified(), "census " + r.name + " exceeds a bound");
        for (const CensusLine& l : rep.lines)
            if (l.label.rfind("(I), all", 0) == 0) certain = std::max(certain, l.count_certain);
    }
    o.detail << (o.pass ? "" : "; ") << synthetic.instances + real.instances << " checker instances ("
             << synthetic.certified + real.certified << " with certified hypotheses), " << runs.size()
             << " census runs, largest certified (I) count " << certain;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"printed formulas", golden_vectors},
        {"scalar multiplication oracle", scalar_mul_oracle},
        {"degree and height laws", degree_height_laws},
        {"formal parametrization", parametrization},
        {"height band", height_band_check},
        {"product formula", product_formula},
        {"weighted simplex counts", simplex_checks},
        {"lattice enumeration", lattice_checks},
        {"cone covers", cone_checks},
        {"optimizers and parameters", optimizer_checks},
        {"Mumford auxiliary forms", mumford_forms_checks},
        {"gap principles and census", consistency_sweeps},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << (o.failures == 0 ? "" : "; ") << "exception: " << e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("criterion %2zu %-30s %s  (%.1fs) %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    seconds, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
