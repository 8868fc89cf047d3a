#include "ecb/heights.hpp"

#include <algorithm>

#include "ecb/errors.hpp"

namespace ecb {

namespace {

std::vector<Rational> as_rationals(const std::vector<Integer>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const Integer& a : v) out.emplace_back(a);
    return out;
}

LogValue log_or_minus_infinity(const Rational& value, int precision_bits) {
    if (value == 0) return LogValue{Real::infinity(-1, precision_bits), precision_bits, LogValue::Provenance::exact_rational_log};
    return log_of(value, precision_bits);
}

}  // namespace

Rational projective_distance(const std::vector<Rational>& p, const std::vector<Rational>& q, const Place& v) {
    if (p.size() != q.size() || p.empty()) throw precondition_error("projective_distance: tuples of different lengths");
    const std::vector<Rational> a = as_rationals(primitive_integer_vector(p));
    const std::vector<Rational> b = as_rationals(primitive_integer_vector(q));
    Rational numerator = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            numerator = std::max(numerator, abs_value(Rational(a[i] * b[j] - a[j] * b[i]), v));
        }
    }
    return numerator / (local_max(a, v) * local_max(b, v));
}

DistanceValue dist_v(const ProjectivePoint& p, const ProjectivePoint& q, const Place& v, int precision_bits) {
    const Rational value = projective_distance(p.coords(), q.coords(), v);
    return DistanceValue{value, log_or_minus_infinity(value, precision_bits), v};
}

LogValue naive_height(const ProjectivePoint& p, int precision_bits) { return tuple_height(p.coords(), precision_bits); }

HeightBand height_band(const WeierstrassCurve& curve, int precision_bits) {
    const Interval eta = curve.eta(precision_bits).enclosure();
    const Interval lower = Interval::exact(Rational(3, 4), precision_bits) * eta + Interval::exact(5L, precision_bits);
    const Interval upper = Interval::exact(Rational(3, 2), precision_bits) * eta + Interval::exact(8L, precision_bits);
    return HeightBand{lower, upper};
}

Interval NeronTateResult::enclosure() const {
    const Interval v = value.enclosure();
    return v + Interval(-error_bound, error_bound);
}

NeronTateResult neron_tate(const DivisionPolyCache& cache, const ProjectivePoint& p, const Real& tol, int max_iterations,
                           int precision_bits) {
    if (!(tol.sign() > 0)) throw precondition_error("neron_tate: tolerance must be positive");
    if (cache.is_generic()) throw precondition_error("neron_tate needs a cache specialized to a curve");
    const Real zero(precision_bits);
    NeronTateResult out{LogValue{zero, precision_bits, LogValue::Provenance::sum}, 0, zero, false};
    if (p.is_identity()) {
        out.torsion = true;
        return out;
    }
    const HeightBand band = height_band(*cache.curve(), precision_bits);
    const Real width = band.lower.hi() > band.upper.hi() ? band.lower.hi() : band.upper.hi();

    std::vector<ProjectivePoint> history{p};
    ProjectivePoint q = p;
    int k = 0;
    for (;;) {
        Real err = width;
        mpfr_div_2ui(err.get(), width.get(), static_cast<unsigned long>(2 * k), MPFR_RNDU);
        if (err < tol) {
            out.error_bound = err;
            break;
        }
        if (k == max_iterations) {
            throw invariant_error("neron_tate: tolerance not reached after " + std::to_string(max_iterations) +
                                  " doublings");
        }
        q = apply_mult_forms(cache, 2, q);
        ++k;
        const ProjectivePoint neg = q.negated();
        const bool repeated = q.is_identity() || std::any_of(history.begin(), history.end(), [&](const ProjectivePoint& h) {
                                  return h == q || h == neg;
                              });
        if (repeated) {
            out.iterations = k;
            out.torsion = true;
            return out;
        }
        history.push_back(q);
    }
    const LogValue h = naive_height(q, precision_bits);
    Real scaled = h.value;
    mpfr_div_2ui(scaled.get(), h.value.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    out.value = LogValue{scaled, precision_bits, LogValue::Provenance::sum};
    out.iterations = k;
    return out;
}

NeronTateResult neron_tate(const WeierstrassCurve& curve, const ProjectivePoint& p, const Real& tol, int precision_bits) {
    const DivisionPolyCache cache(curve);
    return neron_tate(cache, p, tol, neron_tate_max_iterations, precision_bits);
}

SmallCoordinateReport small_coordinate_estimates(const WeierstrassCurve& curve, const ProjectivePoint& p, const Place& v,
                                                 int max_degree, int precision_bits) {
    if (max_degree < 0) throw precondition_error("max_degree must be nonnegative");
    const ProjectivePoint origin = ProjectivePoint::identity();
    const Rational distance = projective_distance(p.coords(), origin.coords(), v);
    const Rational mv = curve.M(v);
    // Hypothesis: dist_v(P, 0) < exp(-2 m_v - c_v) = M_v^-2 e^-c_v.
    const Interval e16 = exp(Interval::exact(-16L, precision_bits));
    const Rational scaled = distance * mv * mv;
    const bool hypothesis = v.is_archimedean() ? less(Interval::exact(scaled, precision_bits), e16) == Truth::yes
                                               : scaled < 1;
    if (!hypothesis) {
        throw precondition_error("small_coordinate_estimates: dist_v(P, 0) < exp(-2 m_v - c_v) does not hold at " +
                                 v.name());
    }
    const auto chart = p.unit_y_chart();
    if (!chart) throw invariant_error("a point close to the identity has y = 0");

    SmallCoordinateReport r;
    r.place = v;
    r.x = chart->first;
    r.z = chart->second;
    r.distance = distance;
    r.coordinate_cap = 1 / mv;
    const Rational ax = abs_value(r.x, v), az = abs_value(r.z, v);
    const Rational coord_max = std::max(ax, az);
    const Rational delta = 3 * curve.g3() * r.z * r.z + 2 * curve.g2() * r.x * r.z + 1;
    r.delta_abs = abs_value(delta, v);
    if (!v.is_archimedean()) {
        r.coordinates_below_cap = coord_max < r.coordinate_cap;
        r.delta_ok = r.delta_abs == 1;
        return r;
    }
    r.coordinates_below_cap =
        less(Interval::exact(coord_max, precision_bits), e16 * Interval::exact(r.coordinate_cap, precision_bits)) ==
        Truth::yes;
    const Interval inv_sqrt_e = exp(Interval::exact(Rational(-1, 2), precision_bits));
    r.delta_ok = less(inv_sqrt_e, Interval::exact(r.delta_abs, precision_bits)) == Truth::yes;
    const Interval e = Interval::e(precision_bits);
    // sum over a + c <= d of |x|^a |z|^c; the Y exponent absorbs the rest since y = 1.
    std::vector<Rational> xpow{1}, zpow{1};
    for (int d = 1; d <= max_degree; ++d) {
        xpow.push_back(xpow.back() * ax);
        zpow.push_back(zpow.back() * az);
    }
    Rational running = 0;
    for (int d = 0; d <= max_degree; ++d) {
        for (int a = 0; a <= d; ++a) running += xpow[static_cast<std::size_t>(a)] * zpow[static_cast<std::size_t>(d - a)];
        r.monomial_sums.push_back(running);
        if (less_equal(Interval::exact(running, precision_bits), e) != Truth::yes) r.monomial_sums_ok = false;
    }
    return r;
}

}  // namespace ecb
