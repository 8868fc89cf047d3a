#include "ecb/number_core.hpp"

#include <algorithm>
#include <cctype>

#include "ecb/errors.hpp"

namespace ecb {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    if (t.empty()) throw parse_error("empty rational");
    const auto slash = t.find('/');
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        }
        return true;
    };
    auto to_int = [](std::string s) {
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        return Integer(s, 10);
    };
    const std::string num = t.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw parse_error("not a rational: '" + text + "'");
    Integer d = to_int(den);
    if (d == 0) throw parse_error("zero denominator: '" + text + "'");
    Rational q(to_int(num), d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

// ---------------------------------------------------------------- Place

Place Place::archimedean() { return Place(Integer(0)); }

Place Place::prime(const Integer& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) {
        throw precondition_error("not a prime: " + p.get_str());
    }
    return Place(p);
}

Place Place::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return archimedean();
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw parse_error("not a place: '" + text + "'");
    }
    if (text.empty()) throw parse_error("empty place");
    return prime(Integer(text, 10));
}

std::string Place::name() const { return is_archimedean() ? "inf" : p_.get_str(); }

// ---------------------------------------------------------------- logs

Interval LogValue::enclosure() const {
    const int p = precision_bits;
    Real radius = (abs(value) + Real::from_long(1, p));
    mpfr_mul_2si(radius.get(), radius.get(), 4 - p, MPFR_RNDU);
    Real lo(p), hi(p);
    mpfr_sub(lo.get(), value.get(), radius.get(), MPFR_RNDD);
    mpfr_add(hi.get(), value.get(), radius.get(), MPFR_RNDU);
    return Interval(lo, hi);
}

LogValue log_of(const Rational& positive, int precision_bits) {
    if (precision_bits < 53) throw precondition_error("precision below 53 bits");
    return LogValue{log_rational(positive, precision_bits), precision_bits, LogValue::Provenance::exact_rational_log};
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw domain_error("valuation of zero");
    Integer m = abs(n);
    return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& x, const Integer& p) {
    if (x == 0) throw domain_error("valuation of zero");
    const long vn = valuation(x.get_num(), p);
    return vn != 0 ? vn : -valuation(x.get_den(), p);
}

Rational abs_value(const Rational& x, const Place& v) {
    if (v.is_archimedean()) return abs(x);
    if (x == 0) return Rational(0);
    const long e = valuation(x, v.p());
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), v.p().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(Integer(1), pe) : Rational(pe);
}

LogValue log_abs_value(const Rational& x, const Place& v, int precision_bits) {
    if (x == 0) throw domain_error("log of |0|_v");
    return log_of(abs_value(x, v), precision_bits);
}

// ---------------------------------------------------------------- factorization

namespace {

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

Integer pollard_brent(const Integer& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return Integer(2);
    Integer y = seed % n, c = (seed * 7919 + 1) % n, m = 128;
    Integer g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = f(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            const Integer lim = std::min(m, Integer(r - k));
            for (Integer i = 0; i < lim; ++i) {
                y = f(y);
                q = (q * abs(Integer(x - y))) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(Integer(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.push_back(n);
        return;
    }
    for (unsigned long seed = 2;; ++seed) {
        Integer d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

}  // namespace

std::vector<Integer> prime_divisors(const Integer& n) {
    if (n == 0) throw domain_error("prime divisors of zero");
    Integer m = abs(n);
    std::vector<Integer> out;
    for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    factor_into(m, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Place> support_places(const std::vector<Rational>& values) {
    std::vector<Integer> primes;
    for (const Rational& q : values) {
        if (q == 0) continue;
        for (const Integer* part : {&q.get_num(), &q.get_den()}) {
            auto ps = prime_divisors(*part);
            primes.insert(primes.end(), ps.begin(), ps.end());
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Place> places{Place::archimedean()};
    for (const Integer& p : primes) places.push_back(Place::prime(p));
    return places;
}

LogValue product_formula_defect(const Rational& x, int precision_bits) {
    if (x == 0) throw domain_error("product formula for zero");
    const int work = precision_bits + 32;
    Real total = log_rational(abs(x), work);
    for (const Place& v : support_places({x})) {
        if (v.is_archimedean()) continue;
        const long e = valuation(x, v.p());
        Real term = log_rational(Rational(v.p()), work) * Real::from_long(-e, work);
        total = total + term;
    }
    return LogValue{total.rounded(precision_bits), precision_bits, LogValue::Provenance::sum};
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& coords) {
    Integer den_lcm = 1, num_gcd = 0;
    for (const Rational& q : coords) {
        if (q == 0) continue;
        den_lcm = lcm(den_lcm, q.get_den());
        num_gcd = gcd(num_gcd, q.get_num());
    }
    if (num_gcd == 0) throw domain_error("all-zero coordinate tuple");
    std::vector<Integer> out;
    out.reserve(coords.size());
    int sign = 0;
    for (const Rational& q : coords) {
        Integer v = q.get_num() * (den_lcm / q.get_den()) / num_gcd;
        if (sign == 0 && v != 0) sign = v > 0 ? 1 : -1;
        out.push_back(v);
    }
    if (sign < 0) {
        for (Integer& v : out) v = -v;
    }
    return out;
}

Rational local_max(const std::vector<Rational>& coords, const Place& v) {
    Rational best = 0;
    for (const Rational& q : coords) best = std::max(best, abs_value(q, v));
    return best;
}

LogValue tuple_height(const std::vector<Rational>& coords, int precision_bits) {
    // For a primitive integer representative every finite place contributes 0.
    const std::vector<Integer> a = primitive_integer_vector(coords);
    Integer best = 0;
    for (const Integer& v : a) best = std::max(best, Integer(abs(v)));
    return log_of(Rational(best), precision_bits);
}

}  // namespace ecb
