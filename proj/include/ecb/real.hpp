#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace ecb {

inline constexpr int default_precision = 128;

// Arbitrary-precision binary float with its own precision. Arithmetic between
// two values uses the larger precision and rounds to nearest.
class Real {
public:
    explicit Real(int precision = default_precision);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real from_integer(const mpz_class& z, int precision, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_rational(const mpq_class& q, int precision, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_double(double d, int precision);
    static Real from_long(long v, int precision);
    static Real from_decimal(const std::string& text, int precision, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real infinity(int sign, int precision);

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal rendering with `digits` significant digits (0 chooses enough to round-trip).
    std::string to_string(int digits = 0) const;
    Real rounded(int precision, mpfr_rnd_t rnd = MPFR_RNDN) const;

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& a);
Real log(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real exp(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real sqrt(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real pow(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);

// Natural logarithm of a positive rational, computed directly at the requested precision.
Real log_rational(const mpq_class& q, int precision, mpfr_rnd_t rnd = MPFR_RNDN);

// Closed interval [lo, hi] with outward (directed) rounding on every operation.
class Interval {
public:
    explicit Interval(int precision = default_precision);
    Interval(Real lo, Real hi);

    static Interval exact(const mpq_class& q, int precision = default_precision);
    static Interval exact(long v, int precision = default_precision);
    static Interval from_decimal(const std::string& text, int precision = default_precision);
    // Tightest enclosure of the double value (which is exactly representable).
    static Interval from_double(double d, int precision = default_precision);
    static Interval pi(int precision = default_precision);
    static Interval e(int precision = default_precision);

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    int precision() const { return lo_.precision(); }
    Real mid() const;
    double to_double() const { return mid().to_double(); }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

private:
    Real lo_;
    Real hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval sqrt(const Interval& a);
// a^b for a > 0.
Interval pow(const Interval& a, const Interval& b);
Interval pow(const Interval& a, long k);
Interval acos(const Interval& a);
Interval sin(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
// Interval enclosing floor(x); exact when lo and hi have the same floor.
Interval floor(const Interval& a);
Interval hull(const Interval& a, const Interval& b);

// Three-valued comparisons: certain when the enclosures are disjoint.
enum class Truth { yes, no, unknown };
Truth less(const Interval& a, const Interval& b);
Truth less_equal(const Interval& a, const Interval& b);
const char* to_string(Truth t);

}  // namespace ecb
