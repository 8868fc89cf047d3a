#include "ecb/bounds.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <regex>
#include <thread>

#include "ecb/errors.hpp"

namespace ecb {

namespace {

Interval ex(const Rational& q, int prec) { return Interval::exact(q, prec); }
Interval ex(long v, int prec) { return Interval::exact(v, prec); }
Interval ex(const Integer& z, int prec) { return Interval::exact(Rational(z), prec); }

Integer integer_power(long base, unsigned long e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
    return out;
}

Integer factorial(unsigned long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(const Integer& top, unsigned long k) {
    Integer out;
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
}

Integer ceil_of(const Rational& q) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Integer floor_of(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// The floor of a value known only as an enclosure; throws if the enclosure straddles an integer.
int certain_floor(const Interval& x, const char* what) {
    const Interval f = floor(x);
    if (!(f.lo() == f.hi())) throw precondition_error(std::string(what) + " is not determined at this precision");
    return static_cast<int>(mpfr_get_si(f.lo().get(), MPFR_RNDN));
}

Truth disjunction(Truth a, Truth b) {
    if (a == Truth::yes || b == Truth::yes) return Truth::yes;
    if (a == Truth::no && b == Truth::no) return Truth::no;
    return Truth::unknown;
}

Truth conjunction(Truth a, Truth b) {
    if (a == Truth::no || b == Truth::no) return Truth::no;
    if (a == Truth::yes && b == Truth::yes) return Truth::yes;
    return Truth::unknown;
}

// eps^p = exp(p log eps).
Interval eps_power(const Epsilon& eps, const Rational& p) { return exp(ex(p, eps.precision()) * eps.log); }

// eps < c, exactly when possible.
Truth eps_below(const Epsilon& eps, const Rational& c) {
    if (eps.exact) return *eps.exact < c ? Truth::yes : Truth::no;
    if (eps.neg_log) return less(ex(-*eps.neg_log, eps.precision()), log(ex(c, eps.precision())));
    return less(eps.value, ex(c, eps.precision()));
}

// eps <= e^(-4/r).
Truth eps_in_second_range(const Epsilon& eps, int r) {
    const Rational k(4, r);
    if (eps.neg_log) return *eps.neg_log >= k ? Truth::yes : Truth::no;
    return less_equal(eps.log, ex(-k, eps.precision()));
}

void require_first_range(const Epsilon& eps) {
    if (eps_below(eps, Rational(1, 15788)) != Truth::yes) {
        throw precondition_error("epsilon must be < 1/15788 (got " + eps.to_string() + ")");
    }
}

void require_second_range(const Epsilon& eps, int r) {
    if (r < 1) throw precondition_error("rank must be >= 1");
    if (eps_in_second_range(eps, r) != Truth::yes) {
        throw precondition_error("epsilon must be <= exp(-4/r) (got " + eps.to_string() + ", r = " + std::to_string(r) + ")");
    }
}

void require_eta(const Interval& eta) {
    if (eta.hi().sign() < 0) throw precondition_error("eta must be nonnegative");
}

// 34 eps^(-1/2) L^(3/2) (log L)^(-1/2) [499 eps^(-1/2) exp(sqrt(L log L))]^r with L = |log eps|.
Interval first_shape(const Epsilon& eps, int r) {
    const int prec = eps.precision();
    const Interval l = eps.abs_log();
    const Interval ll = log(l);
    const Interval inv_sqrt = eps_power(eps, Rational(-1, 2));
    const Interval head = ex(34L, prec) * inv_sqrt * pow(l, ex(Rational(3, 2), prec)) / sqrt(ll);
    return head * pow(ex(499L, prec) * inv_sqrt * exp(sqrt(l * ll)), static_cast<long>(r));
}

// 2 r^2 eps^(-1/2) L^2 (log r + log L + 82) (499 eps^(-1/2))^r.
Interval second_shape(const Epsilon& eps, int r) {
    const int prec = eps.precision();
    const Interval l = eps.abs_log();
    const Interval inv_sqrt = eps_power(eps, Rational(-1, 2));
    const Interval rr = ex(static_cast<long>(r), prec);
    return ex(2L, prec) * rr * rr * inv_sqrt * l * l * (log(rr) + log(l) + ex(82L, prec)) *
           pow(ex(499L, prec) * inv_sqrt, static_cast<long>(r));
}

// #tor (1 + 15 (eta + 4)^(1/2) eps^(-1/2 - 92/log L) / hmin^(1/2))^r + first_shape.
Interval third_shape(const Epsilon& eps, int r, const Interval& eta, const Interval& hmin, const Integer& tor) {
    const int prec = eps.precision();
    const Interval l = eps.abs_log();
    const Interval exponent = ex(Rational(-1, 2), prec) - ex(92L, prec) / log(l);
    const Interval inner = ex(15L, prec) * sqrt(eta + ex(4L, prec)) * exp(exponent * eps.log) / sqrt(hmin);
    return ex(tor, prec) * pow(ex(1L, prec) + inner, static_cast<long>(r)) + first_shape(eps, r);
}

// 56 (eta + 5) eps^(-1 - 183/log L), or 57 for the product form.
Interval first_shift(const Epsilon& eps, const Interval& eta, long factor) {
    const int prec = eps.precision();
    const Interval exponent = ex(-1L, prec) - ex(183L, prec) / log(eps.abs_log());
    return ex(factor, prec) * (eta + ex(5L, prec)) * exp(exponent * eps.log);
}

// (eta + 5) exp((r/4 L + 2)(log L + log r + c)).
Interval second_shift(const Epsilon& eps, const Interval& eta, int r, long c) {
    const int prec = eps.precision();
    const Interval l = eps.abs_log();
    const Interval rr = ex(static_cast<long>(r), prec);
    const Interval outer = rr / ex(4L, prec) * l + ex(2L, prec);
    return (eta + ex(5L, prec)) * exp(outer * (log(l) + log(rr) + ex(c, prec)));
}

}  // namespace

Rational parse_decimal(const std::string& text) {
    static const std::regex pattern(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern) || (m[2].length() == 0 && m[3].length() == 0)) {
        throw parse_error("not a decimal number: '" + text + "'");
    }
    const std::string digits = m[2].str() + m[3].str();
    const Integer mantissa(digits.empty() ? "0" : digits, 10);
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) exponent += std::stol(m[4].str());
    Rational out(mantissa);
    const Integer scale = integer_power(10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) out /= Rational(scale);
    else out *= Rational(scale);
    if (m[1] == "-") out = -out;
    out.canonicalize();
    return out;
}

Epsilon Epsilon::rational(const Rational& e, int precision_bits) {
    if (e <= 0) throw precondition_error("epsilon must be positive");
    Epsilon out;
    out.exact = e;
    out.value = ex(e, precision_bits);
    out.log = ecb::log(out.value);
    return out;
}

Epsilon Epsilon::exp_minus(const Rational& k, int precision_bits) {
    Epsilon out;
    out.neg_log = k;
    out.log = ex(-k, precision_bits);
    out.value = exp(out.log);
    return out;
}

Epsilon Epsilon::parse(const std::string& text, int precision_bits) {
    static const std::regex exp_form(R"(^\s*(?:exp\(\s*-\s*([^)]+)\)|e\^\(?\s*-\s*([^)]+?)\)?)\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, exp_form)) {
        const std::string k = m[1].matched ? m[1].str() : m[2].str();
        const Rational kr = k.find('/') != std::string::npos ? parse_rational(k) : parse_decimal(k);
        return exp_minus(kr, precision_bits);
    }
    if (text.find('/') != std::string::npos) return rational(parse_rational(text), precision_bits);
    return rational(parse_decimal(text), precision_bits);
}

Epsilon Epsilon::halved() const {
    if (exact) return rational(*exact / 2, precision());
    Epsilon out;
    const int prec = precision();
    out.value = value / ex(2L, prec);
    out.log = log - ecb::log(ex(2L, prec));
    return out;
}

Epsilon Epsilon::with_precision(int precision_bits) const {
    if (exact) return rational(*exact, precision_bits);
    if (neg_log) return exp_minus(*neg_log, precision_bits);
    return *this;
}

Interval Epsilon::abs_log() const {
    if (log.hi().sign() <= 0) return -log;
    if (log.lo().sign() >= 0) return log;
    return max(log, -log);
}

std::string Epsilon::to_string() const {
    if (exact) return format_rational(*exact);
    if (neg_log) return "exp(-" + format_rational(*neg_log) + ")";
    return value.mid().to_string(12);
}

Interval r_expression(int m, const Epsilon& eps, const Interval& eta) {
    if (m < 2) throw precondition_error("R(m) needs m >= 2");
    require_eta(eta);
    const int prec = eps.precision();
    const Interval big = eps_power(eps, Rational(-m, m - 1));
    const Interval inv = eps_power(eps, Rational(-1));
    const Interval mm = ex(static_cast<long>(m), prec);
    const Interval lead = ex(integer_power(2904L * m, static_cast<unsigned long>(m)), prec);
    return lead * ((ex(55L, prec) * big + mm * inv) * eta + ex(272L, prec) * big + ex(2L, prec) * mm * inv);
}

Interval f_expression(int m, const Epsilon& eps) {
    if (m < 2) throw precondition_error("f(m) needs m >= 2");
    const Interval lead = ex(integer_power(2904L * m, static_cast<unsigned long>(m)), eps.precision());
    return lead * eps_power(eps, Rational(-m, m - 1));
}

int choose_m0(const Epsilon& eps) {
    require_first_range(eps);
    const int prec = eps.precision();
    const Interval l = -eps.log;
    const Interval ll = log(l);
    const Interval value = sqrt(ex(2L, prec) * l / (ll - log(ll) + ex(16L, prec))) + ex(2L, prec);
    return certain_floor(value, "m0");
}

XiBracket xi_bracket(const Epsilon& eps) {
    require_first_range(eps);
    const int prec = eps.precision();
    const Interval l = -eps.log;
    const Interval ratio_log = log(l / log(l));
    XiBracket out;
    out.lower = sqrt(ex(2L, prec) * l / (ratio_log + ex(21L, prec))) + ex(1L, prec);
    out.upper = sqrt(ex(2L, prec) * l / (ratio_log + ex(16L, prec))) + ex(1L, prec);
    // g'(x) = log x + 1 + log 2904 - log a / (x - 1)^2 is increasing on x > 1.
    const Interval c = ex(1L, prec) + log(ex(2904L, prec));
    auto derivative = [&](const Real& x) {
        const Interval xi(x, x);
        const Interval d = xi - ex(1L, prec);
        return log(xi) + c - l / (d * d);
    };
    const Interval zero = ex(0L, prec);
    Real lo = (out.lower - ex(Rational(1, 2), prec)).lo();
    if (lo <= Real::from_long(1, prec)) lo = Real::from_rational(Rational(1001, 1000), prec);
    Real hi = (out.upper + ex(1L, prec)).hi();
    if (less(derivative(lo), zero) != Truth::yes || less(zero, derivative(hi)) != Truth::yes) {
        throw invariant_error("minimizer of log f is not bracketed by the search interval");
    }
    for (int k = 0; k < 200; ++k) {
        Real mid = (lo + hi) / Real::from_long(2, prec);
        const Truth below = less(derivative(mid), zero);
        if (below == Truth::yes) lo = mid;
        else if (less(zero, derivative(mid)) == Truth::yes) hi = mid;
        else break;
    }
    out.xi = Interval(lo, hi);
    out.inside = conjunction(less(out.lower, out.xi), less(out.xi, out.upper));
    return out;
}

Truth f_m0_cap(const Epsilon& eps) {
    const int m0 = choose_m0(eps);
    const int prec = eps.precision();
    const Interval l = -eps.log;
    const Interval cap = exp(l * (ex(1L, prec) + ex(183L, prec) / log(l)));
    return less_equal(f_expression(m0, eps), cap);
}

Truth r_m0_cap(const Epsilon& eps, const Interval& eta) {
    const int m0 = choose_m0(eps);
    return less_equal(r_expression(m0, eps, eta), first_shift(eps, eta, 56));
}

int choose_m1(const Epsilon& eps, int r) {
    require_second_range(eps, r);
    if (eps.neg_log) return static_cast<int>(floor_of(Rational(r) / 4 * *eps.neg_log + 2).get_si());
    const int prec = eps.precision();
    const Interval value = ex(Rational(r, 4), prec) * eps.abs_log() + ex(2L, prec);
    return certain_floor(value, "m1");
}

Interval s_expression(int m, const Epsilon& eps, int r) {
    if (m < 2 || r < 1) throw precondition_error("S(m) needs m >= 2 and r >= 1");
    const int prec = eps.precision();
    const Interval mm = ex(static_cast<long>(m), prec);
    const Interval bracket = mm * ex(static_cast<long>(m - 1), prec) * (log(mm) + ex(9L, prec)) + mm * eps.abs_log();
    const Interval base = ex(499L, prec) * eps_power(eps, Rational(-m, 2 * (m - 1)));
    return ex(4L, prec) * eps_power(eps, Rational(-1, 2)) * bracket * pow(base, static_cast<long>(r));
}

Truth s_m1_cap(const Epsilon& eps, int r) {
    const int m1 = choose_m1(eps, r);
    return less_equal(s_expression(m1, eps, r), second_shape(eps, r));
}

Interval large_height_count_bound(int m, const Epsilon& eps, int r) {
    if (m < 2 || r < 1) throw precondition_error("the count needs m >= 2 and r >= 1");
    const int prec = eps.precision();
    const Interval mm = ex(static_cast<long>(m), prec);
    const Interval bracket =
        mm * ex(static_cast<long>(m - 1), prec) * (log(mm) + ex(Rational(44, 5), prec)) + mm * eps.abs_log();
    const Interval base = ex(499L, prec) * eps_power(eps, Rational(-m, 2 * (m - 1)));
    return ex(4L, prec) * eps_power(eps, Rational(-1, 2)) * bracket * pow(base, static_cast<long>(r));
}

Parameters parameters(const Epsilon& eps, int m) {
    if (m < 2) throw precondition_error("parameters need m >= 2");
    const int prec = eps.precision();
    Parameters p;
    p.m = m;
    const Interval mm = ex(static_cast<long>(m), prec);
    const Interval power = eps_power(eps, Rational(m, m - 1));
    p.eps1 = mm * eps_power(eps, Rational(1, m - 1)) / ex(484L, prec);
    p.eps0 = power / ex(4000L, prec);
    p.alpha = power / ex(7744L, prec);
    const Interval one = ex(1L, prec);
    p.eps0_at_most_half = less_equal(p.eps0, ex(Rational(1, 2), prec));
    const Rational lead = Rational(Integer(m - 1) * integer_power(7, static_cast<unsigned long>(m)),
                                   factorial(static_cast<unsigned long>(m)) * integer_power(3, static_cast<unsigned long>(m)));
    p.first_constraint_lhs = ex(lead, prec) * pow(p.eps1, static_cast<long>(m)) /
                             (p.eps0 * (mm + p.eps0) * pow(one + p.eps0, static_cast<long>(m - 2)));
    p.first_constraint = less_equal(p.first_constraint_lhs, ex(Rational(1, 2), prec));
    p.second_constraint_ratio = ex(4L, prec) * mm * (p.eps0 + ex(2L, prec) * p.alpha) / (eps.value * p.eps1);
    p.second_constraint = less_equal(p.second_constraint_ratio, one);
    return p;
}

BoundKind parse_bound_kind(const std::string& text) {
    static const std::pair<const char*, BoundKind> names[] = {{"t1", BoundKind::t1},   {"t2", BoundKind::t2},
                                                              {"t3", BoundKind::t3},   {"c18", BoundKind::c18},
                                                              {"c19", BoundKind::c19}, {"c20", BoundKind::c20}};
    for (const auto& [name, kind] : names) {
        if (text == name) return kind;
    }
    throw parse_error("unknown bound kind '" + text + "' (expected t1, t2, t3, c18, c19 or c20)");
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::t1: return "t1";
        case BoundKind::t2: return "t2";
        case BoundKind::t3: return "t3";
        case BoundKind::c18: return "c18";
        case BoundKind::c19: return "c19";
        case BoundKind::c20: return "c20";
    }
    return "?";
}

BoundReport theorem_bounds(BoundKind kind, const BoundInputs& in) {
    if (in.rank < 1) throw precondition_error("the counting theorems assume rank r >= 1");
    if (in.card_s < 0) throw precondition_error("card S must be nonnegative");
    require_eta(in.eta);
    const Epsilon& eps = in.eps;
    const int prec = eps.precision();
    const int r = in.rank;
    BoundReport out;
    out.kind = kind;
    out.inputs = in;
    out.formula_id = to_string(kind);
    const bool needs_third = kind == BoundKind::t3 || kind == BoundKind::c20;
    if (needs_third) {
        if (!in.hmin || !(in.hmin->lo().sign() > 0)) throw precondition_error("hmin must be given and positive");
        if (!in.torsion || *in.torsion < 1) throw precondition_error("torsion count must be given and >= 1");
    }
    const Interval five_s = ex(integer_power(5, static_cast<unsigned long>(in.card_s)), prec);
    switch (kind) {
        case BoundKind::t1:
            require_first_range(eps);
            out.m = choose_m0(eps);
            out.cardinal_bound = first_shape(eps, r);
            out.shift = first_shift(eps, in.eta, 56);
            break;
        case BoundKind::t2:
            require_second_range(eps, r);
            out.m = choose_m1(eps, r);
            out.cardinal_bound = second_shape(eps, r);
            out.shift = second_shift(eps, in.eta, r, 16);
            break;
        case BoundKind::t3:
            require_first_range(eps);
            out.cardinal_bound = third_shape(eps, r, in.eta, *in.hmin, *in.torsion);
            break;
        case BoundKind::c18:
            require_first_range(eps);
            out.cardinal_bound = five_s * first_shape(eps.halved(), r);
            out.shift = first_shift(eps, in.eta, 57);
            break;
        case BoundKind::c19:
            require_second_range(eps, r);
            out.cardinal_bound = five_s * second_shape(eps.halved(), r);
            out.shift = second_shift(eps, in.eta, r, 17);
            break;
        case BoundKind::c20:
            require_first_range(eps);
            out.cardinal_bound = five_s * third_shape(eps.halved(), r, in.eta, *in.hmin, *in.torsion);
            out.shift = ex(2L, prec) * in.eta + ex(16L, prec);
            break;
    }
    return out;
}

Integer subset_a(const Rational& eps, const Rational& eps_prime, int card_t) {
    if (!(eps_prime > 0 && eps_prime < eps)) throw precondition_error("need 0 < eps' < eps");
    return ceil_of(eps_prime * card_t / (eps - eps_prime));
}

SubsetCombinatorResult subset_combinator_bound(int card_s, const Rational& eps, const std::vector<Rational>& eps_prime,
                                               const std::vector<Interval>& fct) {
    if (card_s < 0 || card_s > 20) throw precondition_error("card S must be in 0..20");
    const std::size_t subsets = std::size_t{1} << card_s;
    if (eps_prime.size() != subsets || fct.size() != subsets) {
        throw precondition_error("eps' and fct need one entry per subset of S");
    }
    const int prec = fct.front().precision();
    SubsetCombinatorResult out{ex(0L, prec), std::nullopt};
    bool half = true;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        const int t = std::popcount(mask);
        const Integer a = subset_a(eps, eps_prime[mask], t);
        const Integer coefficient = t == 0 ? Integer(1) : binomial(a + t - 1, static_cast<unsigned long>(t - 1));
        out.total = out.total + ex(coefficient, prec) * fct[mask];
        half = half && eps_prime[mask] == eps / 2;
    }
    if (half) out.closed_factor = integer_power(5, static_cast<unsigned long>(card_s));
    return out;
}

SubsetCombinatorResult subset_combinator_bound(int card_s, const Interval& fct) {
    if (card_s < 0 || card_s > 20) throw precondition_error("card S must be in 0..20");
    const std::size_t subsets = std::size_t{1} << card_s;
    return subset_combinator_bound(card_s, Rational(1), std::vector<Rational>(subsets, Rational(1, 2)),
                                   std::vector<Interval>(subsets, fct));
}

void ApproximationSystem::validate() const {
    if (places.empty()) throw precondition_error("the system needs at least one place");
    if (weights.size() != places.size()) throw precondition_error("one weight per place is required");
    Rational sum = 0;
    for (std::size_t i = 0; i < places.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (places[i] == places[j]) throw precondition_error("places of the system must be distinct");
        }
        if (weights[i] <= 0) throw precondition_error("weights must be positive");
        sum += weights[i];
    }
    if (sum != 1) throw precondition_error("weights must sum to 1 (got " + format_rational(sum) + ")");
    if (!(eps.value.lo().sign() > 0)) throw precondition_error("epsilon must be positive");
    if (shift && shift->hi().sign() < 0) throw precondition_error("the shift must be nonnegative");
}

ApproximationSystem ApproximationSystem::with_shift(const Interval& r) const {
    ApproximationSystem out = *this;
    out.shift = r;
    return out;
}

SystemVerdict ss_predicate(const ApproximationSystem& system, const ProjectivePoint& p) {
    system.validate();
    if (!system.curve.contains(p.x(), p.y(), p.z())) throw precondition_error(p.to_string() + " is not on the curve");
    const ProjectivePoint origin = ProjectivePoint::identity();
    SystemVerdict out;
    for (int prec : {system.eps.precision(), 256, 512, 1024}) {
        if (prec < system.eps.precision()) continue;
        const Epsilon eps = system.eps.with_precision(prec);
        const Interval h = naive_height(p, prec).enclosure();
        out.places.clear();
        out.holds = Truth::yes;
        for (std::size_t i = 0; i < system.places.size(); ++i) {
            const Place& v = system.places[i];
            PlaceVerdict pv;
            pv.place = v;
            const Interval lambda = ex(system.weights[i], prec);
            Interval inner = eps.value * h;
            if (system.shift) inner = inner + *system.shift;
            pv.threshold = -(lambda * inner) - ex(2L, prec) * system.curve.m(v, prec).enclosure() -
                           ex(static_cast<long>(system.curve.c(v)), prec);
            const DistanceValue d = dist_v(p, origin, v, prec);
            if (d.value == 0) {
                const Real minus_inf = Real::infinity(-1, prec);
                pv.log_distance = Interval(minus_inf, minus_inf);
                pv.holds = Truth::yes;
            } else {
                pv.log_distance = d.log.enclosure();
                pv.holds = less(pv.log_distance, pv.threshold);
            }
            out.holds = conjunction(out.holds, pv.holds);
            out.places.push_back(std::move(pv));
        }
        if (std::none_of(out.places.begin(), out.places.end(),
                         [](const PlaceVerdict& v) { return v.holds == Truth::unknown; })) {
            break;
        }
    }
    return out;
}

MumfordForms mumford_aux_forms(const WeierstrassCurve& curve, const ProjectivePoint& y) {
    if (!curve.contains(y.x(), y.y(), y.z())) throw precondition_error(y.to_string() + " is not on the curve");
    const AdditionFamily d = difference_family(curve, 3);
    const std::vector<std::string>& vars = pair_variables();
    const std::vector<Integer> rep = y.primitive_integer();
    std::vector<MultiPoly> args{d.forms[0], d.forms[1], d.forms[2]};
    for (const Integer& c : rep) args.push_back(MultiPoly::constant(vars, Rational(c)));
    MumfordForms out;
    out.q1 = d.forms[0].compose(args);
    out.q2 = d.forms[2].compose(args);
    out.bidegree1 = out.q1.multidegree(pair_blocks());
    out.bidegree2 = out.q2.multidegree(pair_blocks());
    if (!out.q1.is_multihomogeneous(pair_blocks()) || !out.q2.is_multihomogeneous(pair_blocks())) {
        throw invariant_error("auxiliary forms are not bihomogeneous");
    }
    return out;
}

std::vector<LocalCapCheck> mumford_local_caps(const WeierstrassCurve& curve, const ProjectivePoint& y,
                                              const MumfordForms& forms) {
    const PolyFamily family{{forms.q1, forms.q2}, "Q1, Q2"};
    const std::vector<Integer> rep = y.primitive_integer();
    // With y primitive, h_v(y) = 0 at every prime. A prime dividing no coefficient
    // denominator of Q1, Q2 and with M_v = 1 then has both sides equal to 0, so only the
    // denominators and the curve's bad places need factoring.
    Integer denominators = 1;
    for (const Rational& c : family.coefficients()) {
        mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Place> places = curve.bad_places();
    for (const Integer& p : prime_divisors(denominators)) places.push_back(Place::prime(p));
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    std::vector<Rational> yq(rep.begin(), rep.end());
    std::vector<LocalCapCheck> out;
    for (const Place& v : places) {
        LocalCapCheck c;
        c.place = v;
        const int prec = default_precision;
        const Interval hy = log_of(local_max(yq, v), prec).enclosure();
        c.cap = ex(8L, prec) * curve.m(v, prec).enclosure() + ex(2L, prec) * hy;
        if (v.is_archimedean()) {
            c.value = local_length(family, v, prec);
            c.cap = c.cap + ex(18L, prec);
            c.holds = less_equal(c.value.enclosure(), c.cap);
        } else {
            // Both sides are logs of rationals here, so compare the rationals.
            c.value = local_height(family, v, prec);
            const Rational mv = curve.M(v);
            const Rational ymax = local_max(yq, v);
            const Rational bound = mv * mv * mv * mv * mv * mv * mv * mv * ymax * ymax;
            c.holds = local_height_exact(family, v) <= bound ? Truth::yes : Truth::no;
        }
        out.push_back(std::move(c));
    }
    return out;
}

GapCheck vojta_check(const std::vector<GapPoint>& points, const std::vector<std::vector<Interval>>& pairings,
                     const Epsilon& eps, const Interval& eta) {
    const std::size_t m = points.size();
    if (m < 2) throw precondition_error("the Vojta check needs m >= 2 points");
    if (pairings.size() != m) throw precondition_error("pairing matrix has the wrong size");
    const int prec = eps.precision();
    const int mi = static_cast<int>(m);
    GapCheck out;
    const Interval cos_min = ex(1L, prec) - eps_power(eps, Rational(mi, mi - 1)) / ex(30976L, prec);
    Truth cone = Truth::yes;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            cone = conjunction(cone, less_equal(cos_min * sqrt(points[i].hhat * points[j].hhat), pairings[i][j]));
        }
    }
    Truth order = less_equal(r_expression(mi, eps, eta), points[0].hhat);
    for (std::size_t i = 1; i < m; ++i) order = conjunction(order, less_equal(points[i - 1].hhat, points[i].hhat));
    Truth system = Truth::yes;
    for (const GapPoint& p : points) system = conjunction(system, p.satisfies_system);
    if (cone == Truth::no) out.unmet.emplace_back("cone");
    if (order == Truth::no) out.unmet.emplace_back("height order");
    if (system == Truth::no) out.unmet.emplace_back("system (I)");
    out.hypotheses = conjunction(conjunction(cone, order), system);

    const Interval k = sqrt(ex(2L, prec)) * ex(integer_power(2904L * mi, m), prec) * eps_power(eps, Rational(-mi, mi - 1));
    Truth conclusion = Truth::no;
    for (std::size_t j = 1; j < m; ++j) {
        const Interval factor = j + 1 == m ? k * ex(static_cast<long>(m - 1), prec) : k;
        conclusion = disjunction(conclusion, less(points[j].hhat, factor * points[j - 1].hhat));
    }
    out.conclusion = conclusion;
    return out;
}

GapCheck mumford_check(const GapPoint& x1, const GapPoint& x2, const Interval& pairing, bool distinct,
                       const Epsilon& eps, const Interval& eta) {
    const int prec = eps.precision();
    GapCheck out;
    const Interval beta = eps.value / ex(2L, prec);
    const Interval theta = sqrt(eps.value) / ex(3L, prec);
    const Truth different = distinct ? Truth::yes : Truth::no;
    const Truth cone = less_equal((ex(1L, prec) - beta / ex(4L, prec)) * sqrt(x1.hhat * x2.hhat), pairing);
    const Interval floor_height = (ex(54L, prec) * eta + ex(204L, prec)) / eps.value;
    const Truth order = conjunction(less_equal(x1.hhat, x2.hhat), less_equal(floor_height, x1.hhat));
    const Truth system = conjunction(x1.satisfies_system, x2.satisfies_system);
    if (different == Truth::no) out.unmet.emplace_back("distinct points");
    if (cone == Truth::no) out.unmet.emplace_back("cone");
    if (order == Truth::no) out.unmet.emplace_back("height order");
    if (system == Truth::no) out.unmet.emplace_back("system (I)");
    out.hypotheses = conjunction(conjunction(different, cone), conjunction(order, system));
    out.conclusion = less_equal((ex(1L, prec) + theta) * x1.hhat, x2.hhat);
    return out;
}

bool CensusReport::falsified() const {
    if (!singleton_property) return true;
    return std::any_of(lines.begin(), lines.end(), [](const CensusLine& l) { return l.within == Truth::no; });
}

namespace {

CensusLine count_line(std::string label, const std::vector<Truth>& membership, const Interval& bound) {
    CensusLine line;
    line.label = std::move(label);
    for (Truth t : membership) {
        if (t == Truth::yes) ++line.count_certain;
        if (t != Truth::no) ++line.count_possible;
    }
    line.bound = bound;
    const int prec = bound.precision();
    const Truth possible = less_equal(ex(static_cast<long>(line.count_possible), prec), bound);
    const Truth certain = less_equal(ex(static_cast<long>(line.count_certain), prec), bound);
    if (possible == Truth::yes) line.within = Truth::yes;
    else if (certain == Truth::no) line.within = Truth::no;
    else line.within = Truth::unknown;
    return line;
}

// ss_predicate over every enumerated point, split across hardware threads; entry i
// always belongs to point i, so the result does not depend on scheduling.
std::vector<Truth> evaluate_system(const ApproximationSystem& system, const std::vector<LatticePoint>& points) {
    std::vector<Truth> out(points.size(), Truth::unknown);
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(1, points.size()));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < points.size(); i += workers) out[i] = ss_predicate(system, *points[i].point).holds;
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace

CensusReport census(const MordellWeilModel& model, const ApproximationSystem& system, const Rational& cap, int m_max) {
    if (!model.curve || model.torsion.empty()) throw precondition_error("census needs a model built from curve points");
    if (!(*model.curve == system.curve)) throw precondition_error("model and system are on different curves");
    if (m_max < 2) throw precondition_error("census needs m_max >= 2");
    system.validate();
    ApproximationSystem base = system;
    base.shift.reset();
    const Epsilon& eps = system.eps;
    const int prec = eps.precision();
    const Interval eta = system.curve.eta(prec).enclosure();
    const int r = static_cast<int>(model.rank());

    const EnumerationResult points = enumerate_bounded(model, cap);
    CensusReport out;
    out.enumerated = points.points.size();
    for (const LatticePoint& lp : points.points) {
        if (lp.point->is_identity()) ++out.identity_count;
    }
    const std::vector<Truth> in_first = evaluate_system(base, points.points);
    if (out.identity_count != 1) throw invariant_error("enumeration must contain the identity exactly once");

    for (int m = 2; m <= m_max; ++m) {
        const Interval rm = r_expression(m, eps, eta);
        std::vector<Truth> above(points.points.size());
        const std::vector<Truth> in_second = evaluate_system(base.with_shift(rm), points.points);
        for (std::size_t i = 0; i < points.points.size(); ++i) {
            const LatticePoint& lp = points.points[i];
            above[i] = conjunction(in_first[i], less(rm, lp.height));
            if (less_equal(lp.height, rm) == Truth::no || lp.point->is_identity()) continue;
            if (in_second[i] != Truth::no) {
                out.low_height_solutions.push_back(*lp.point);
                out.singleton_property = false;
            }
        }
        out.lines.push_back(count_line("(I), hhat > R(" + std::to_string(m) + ")", above,
                                       large_height_count_bound(m, eps, r)));
    }

    if (eps_below(eps, Rational(1, 15788)) == Truth::yes) {
        BoundInputs in{eps, r, eta, model.hmin, Integer(static_cast<unsigned long>(model.torsion_count)), 1};
        out.lines.push_back(count_line("(I), all heights vs t3", in_first, theorem_bounds(BoundKind::t3, in).cardinal_bound));
        const BoundReport t1 = theorem_bounds(BoundKind::t1, in);
        const ApproximationSystem shifted = base.with_shift(*t1.shift);
        const std::vector<Truth> member = evaluate_system(shifted, points.points);
        out.lines.push_back(count_line("t1 system", member, t1.cardinal_bound));
    }
    if (eps_in_second_range(eps, r) == Truth::yes) {
        BoundInputs in{eps, r, eta, std::nullopt, std::nullopt, 1};
        const BoundReport t2 = theorem_bounds(BoundKind::t2, in);
        const ApproximationSystem shifted = base.with_shift(*t2.shift);
        const std::vector<Truth> member = evaluate_system(shifted, points.points);
        out.lines.push_back(count_line("t2 system", member, t2.cardinal_bound));
    }
    return out;
}

}  // namespace ecb
