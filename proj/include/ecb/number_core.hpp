#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ecb/real.hpp"

namespace ecb {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (no decimals). The result is reduced.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

// A place of the rational field: the archimedean one or the p-adic one for a prime p.
class Place {
public:
    static Place archimedean();
    // Throws precondition_error unless p is prime.
    static Place prime(const Integer& p);
    static Place prime(long p) { return prime(Integer(p)); }
    // "inf" or a decimal prime.
    static Place parse(const std::string& text);

    bool is_archimedean() const { return p_ == 0; }
    const Integer& p() const { return p_; }
    std::string name() const;

    friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Place& a, const Place& b) { return a.p_ != b.p_; }
    // Archimedean first, then primes in increasing order.
    friend bool operator<(const Place& a, const Place& b) { return a.p_ < b.p_; }

private:
    explicit Place(Integer p) : p_(std::move(p)) {}
    Integer p_;  // 0 encodes the archimedean place
};

// Logarithmic quantity: a float approximation with its working precision and origin.
struct LogValue {
    enum class Provenance { exact_rational_log, sum };

    Real value;
    int precision_bits = default_precision;
    Provenance provenance = Provenance::exact_rational_log;

    double to_double() const { return value.to_double(); }
    // Enclosure of the true value, widened by (|value| + 1) * 2^(4 - precision_bits).
    Interval enclosure() const;
};

LogValue log_of(const Rational& positive, int precision_bits = default_precision);

// p-adic valuation; n must be nonzero.
long valuation(const Integer& n, const Integer& p);
long valuation(const Rational& x, const Integer& p);

// Normalized absolute value |x|_v as an exact rational: p^(-v_p(x)) or |x|.
Rational abs_value(const Rational& x, const Place& v);
// log |x|_v; throws domain_error for x = 0.
LogValue log_abs_value(const Rational& x, const Place& v, int precision_bits = default_precision);

// Distinct prime divisors of |n| in increasing order (trial division plus Pollard-Brent).
std::vector<Integer> prime_divisors(const Integer& n);

// The archimedean place plus every prime dividing some numerator or denominator.
std::vector<Place> support_places(const std::vector<Rational>& values);

// Sum over all places of log |x|_v.
LogValue product_formula_defect(const Rational& x, int precision_bits = default_precision);

// Integer vector proportional to `coords`, with gcd 1 and first nonzero entry positive.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& coords);

// max_i |x_i|_v as an exact rational.
Rational local_max(const std::vector<Rational>& coords, const Place& v);

// Weil height sum_v log max_i |x_i|_v of the projective tuple.
LogValue tuple_height(const std::vector<Rational>& coords, int precision_bits = default_precision);

}  // namespace ecb
