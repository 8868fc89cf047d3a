#include "ecb/real.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "ecb/errors.hpp"

namespace ecb {

Real::Real(int precision) {
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_integer(const mpz_class& z, int precision, mpfr_rnd_t rnd) {
    Real r(precision);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
}

Real Real::from_rational(const mpq_class& q, int precision, mpfr_rnd_t rnd) {
    Real r(precision);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
}

Real Real::from_double(double d, int precision) {
    Real r(std::max(precision, 53));
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

Real Real::from_long(long v, int precision) {
    Real r(precision);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::from_decimal(const std::string& text, int precision, mpfr_rnd_t rnd) {
    Real r(precision);
    if (mpfr_set_str(r.v_, text.c_str(), 10, rnd) != 0) {
        throw parse_error("not a decimal number: '" + text + "'");
    }
    return r;
}

Real Real::infinity(int sign, int precision) {
    Real r(precision);
    mpfr_set_inf(r.v_, sign);
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits <= 0) digits = static_cast<int>(mpfr_get_prec(v_) * 0.30103) + 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real Real::rounded(int precision, mpfr_rnd_t rnd) const {
    Real r(precision);
    mpfr_set(r.v_, v_, rnd);
    return r;
}

namespace {

int joint_precision(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

template <typename Op>
Real binary(const Real& a, const Real& b, Op op, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(joint_precision(a, b));
    op(r.get(), a.get(), b.get(), rnd);
    return r;
}

}  // namespace

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.precision());
    mpfr_log(r.get(), a.get(), rnd);
    return r;
}

Real exp(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.precision());
    mpfr_exp(r.get(), a.get(), rnd);
    return r;
}

Real sqrt(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.precision());
    mpfr_sqrt(r.get(), a.get(), rnd);
    return r;
}

Real pow(const Real& a, const Real& b, mpfr_rnd_t rnd) { return binary(a, b, mpfr_pow, rnd); }

Real log_rational(const mpq_class& q, int precision, mpfr_rnd_t rnd) {
    if (sgn(q) <= 0) throw domain_error("logarithm of a non-positive rational");
    // log(num) - log(den) with guard bits, then a single final rounding.
    const int work = precision + 32;
    Real num = Real::from_integer(q.get_num(), work + 64);
    Real den = Real::from_integer(q.get_den(), work + 64);
    Real ln(work), ld(work);
    mpfr_log(ln.get(), num.get(), MPFR_RNDN);
    mpfr_log(ld.get(), den.get(), MPFR_RNDN);
    Real diff(work);
    mpfr_sub(diff.get(), ln.get(), ld.get(), MPFR_RNDN);
    return diff.rounded(precision, rnd);
}

// ---------------------------------------------------------------- Interval

Interval::Interval(int precision) : lo_(precision), hi_(precision) {}

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.is_nan() || hi_.is_nan() || lo_ > hi_) throw invariant_error("malformed interval");
}

Interval Interval::exact(const mpq_class& q, int precision) {
    return Interval(Real::from_rational(q, precision, MPFR_RNDD), Real::from_rational(q, precision, MPFR_RNDU));
}

Interval Interval::exact(long v, int precision) { return exact(mpq_class(v), precision); }

Interval Interval::from_decimal(const std::string& text, int precision) {
    return Interval(Real::from_decimal(text, precision, MPFR_RNDD), Real::from_decimal(text, precision, MPFR_RNDU));
}

Interval Interval::from_double(double d, int precision) {
    Real r = Real::from_double(d, std::max(precision, 53));
    return Interval(r, r);
}

Interval Interval::pi(int precision) {
    Real lo(precision), hi(precision);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Interval(lo, hi);
}

Interval Interval::e(int precision) { return exp(exact(1L, precision)); }

Real Interval::mid() const {
    Real r(precision() + 1);
    mpfr_add(r.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r.rounded(precision());
}

namespace {

int joint_precision(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

template <typename Op>
Real directed(const Real& x, const Real& y, int prec, Op op, mpfr_rnd_t rnd) {
    Real r(prec);
    op(r.get(), x.get(), y.get(), rnd);
    return r;
}

template <typename Op>
Real directed1(const Real& x, int prec, Op op, mpfr_rnd_t rnd) {
    Real r(prec);
    op(r.get(), x.get(), rnd);
    return r;
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    const int p = joint_precision(a, b);
    return Interval(directed(a.lo(), b.lo(), p, mpfr_add, MPFR_RNDD), directed(a.hi(), b.hi(), p, mpfr_add, MPFR_RNDU));
}

Interval operator-(const Interval& a, const Interval& b) {
    const int p = joint_precision(a, b);
    return Interval(directed(a.lo(), b.hi(), p, mpfr_sub, MPFR_RNDD), directed(a.hi(), b.lo(), p, mpfr_sub, MPFR_RNDU));
}

Interval operator-(const Interval& a) {
    const int p = a.precision();
    return Interval(directed1(a.hi(), p, mpfr_neg, MPFR_RNDD), directed1(a.lo(), p, mpfr_neg, MPFR_RNDU));
}

Interval operator*(const Interval& a, const Interval& b) {
    const int p = joint_precision(a, b);
    const Real* xs[2] = {&a.lo(), &a.hi()};
    const Real* ys[2] = {&b.lo(), &b.hi()};
    Real lo = Real::infinity(1, p);
    Real hi = Real::infinity(-1, p);
    for (const Real* x : xs) {
        for (const Real* y : ys) {
            Real d = directed(*x, *y, p, mpfr_mul, MPFR_RNDD);
            Real u = directed(*x, *y, p, mpfr_mul, MPFR_RNDU);
            if (d < lo) lo = d;
            if (u > hi) hi = u;
        }
    }
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw domain_error("interval division by an interval containing zero");
    const int p = joint_precision(a, b);
    const Real* xs[2] = {&a.lo(), &a.hi()};
    const Real* ys[2] = {&b.lo(), &b.hi()};
    Real lo = Real::infinity(1, p);
    Real hi = Real::infinity(-1, p);
    for (const Real* x : xs) {
        for (const Real* y : ys) {
            Real d = directed(*x, *y, p, mpfr_div, MPFR_RNDD);
            Real u = directed(*x, *y, p, mpfr_div, MPFR_RNDU);
            if (d < lo) lo = d;
            if (u > hi) hi = u;
        }
    }
    return Interval(lo, hi);
}

Interval log(const Interval& a) {
    if (a.lo().sign() < 0) throw domain_error("logarithm of an interval reaching below zero");
    const int p = a.precision();
    return Interval(directed1(a.lo(), p, mpfr_log, MPFR_RNDD), directed1(a.hi(), p, mpfr_log, MPFR_RNDU));
}

Interval exp(const Interval& a) {
    const int p = a.precision();
    return Interval(directed1(a.lo(), p, mpfr_exp, MPFR_RNDD), directed1(a.hi(), p, mpfr_exp, MPFR_RNDU));
}

Interval sqrt(const Interval& a) {
    if (a.hi().sign() < 0) throw domain_error("square root of a negative interval");
    const int p = a.precision();
    Real lo = a.lo().sign() <= 0 ? Real(p) : directed1(a.lo(), p, mpfr_sqrt, MPFR_RNDD);
    return Interval(lo, directed1(a.hi(), p, mpfr_sqrt, MPFR_RNDU));
}

Interval pow(const Interval& a, const Interval& b) {
    if (a.lo().sign() <= 0) throw domain_error("real power of an interval that is not positive");
    return exp(b * log(a));
}

Interval pow(const Interval& a, long k) {
    const int p = a.precision();
    if (k == 0) return Interval::exact(1L, p);
    if (a.lo().sign() >= 0) {
        Real lo(p), hi(p);
        if (k > 0) {
            mpfr_pow_si(lo.get(), a.lo().get(), k, MPFR_RNDD);
            mpfr_pow_si(hi.get(), a.hi().get(), k, MPFR_RNDU);
        } else {
            if (a.lo().is_zero()) throw domain_error("negative power of an interval containing zero");
            mpfr_pow_si(lo.get(), a.hi().get(), k, MPFR_RNDD);
            mpfr_pow_si(hi.get(), a.lo().get(), k, MPFR_RNDU);
        }
        return Interval(lo, hi);
    }
    if (k < 0) return Interval::exact(1L, p) / pow(a, -k);
    Interval r = Interval::exact(1L, p);
    for (long i = 0; i < k; ++i) r = r * a;
    return r;
}

Interval acos(const Interval& a) {
    const int p = a.precision();
    if (a.lo() < Real::from_long(-1, p) || a.hi() > Real::from_long(1, p)) {
        throw domain_error("arccos argument outside [-1, 1]");
    }
    return Interval(directed1(a.hi(), p, mpfr_acos, MPFR_RNDD), directed1(a.lo(), p, mpfr_acos, MPFR_RNDU));
}

Interval sin(const Interval& a) {
    // Only used on subintervals of [-pi/2, pi/2], where sin is increasing.
    const int p = a.precision();
    Interval half_pi = Interval::pi(p) / Interval::exact(2L, p);
    if (a.lo() < -half_pi.lo() || a.hi() > half_pi.lo()) throw domain_error("sin argument outside [-pi/2, pi/2]");
    return Interval(directed1(a.lo(), p, mpfr_sin, MPFR_RNDD), directed1(a.hi(), p, mpfr_sin, MPFR_RNDU));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(a.lo() > b.lo() ? a.lo() : b.lo(), a.hi() > b.hi() ? a.hi() : b.hi());
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() < b.hi() ? a.hi() : b.hi());
}

Interval floor(const Interval& a) {
    const int p = a.precision();
    Real lo(p), hi(p);
    mpfr_floor(lo.get(), a.lo().get());
    mpfr_floor(hi.get(), a.hi().get());
    return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() > b.hi() ? a.hi() : b.hi());
}

Truth less(const Interval& a, const Interval& b) {
    if (a.hi() < b.lo()) return Truth::yes;
    if (a.lo() >= b.hi()) return Truth::no;
    return Truth::unknown;
}

Truth less_equal(const Interval& a, const Interval& b) {
    if (a.hi() <= b.lo()) return Truth::yes;
    if (a.lo() > b.hi()) return Truth::no;
    return Truth::unknown;
}

const char* to_string(Truth t) {
    switch (t) {
        case Truth::yes: return "yes";
        case Truth::no: return "no";
        default: return "unknown";
    }
}

}  // namespace ecb
