#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecb/number_core.hpp"

namespace ecb {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients over an ordered,
// named list of variables. Zero coefficients are never stored.
class MultiPoly {
public:
    using Terms = std::map<Exponents, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables);
    MultiPoly(std::vector<std::string> variables, Terms terms);

    static MultiPoly constant(std::vector<std::string> variables, const Rational& c);
    static MultiPoly variable(std::vector<std::string> variables, std::size_t index);
    static MultiPoly variable(std::vector<std::string> variables, const std::string& name);
    static MultiPoly monomial(std::vector<std::string> variables, Exponents exps, const Rational& c);
    // Parses the text form produced by to_string(); see that function for the grammar.
    static MultiPoly parse(const std::string& text, std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require_index(const std::string& name) const;
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // Number of monomials in the canonical expansion.
    std::size_t monomial_count() const { return terms_.size(); }
    Rational coefficient(const Exponents& e) const;

    // Total degree; -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(std::size_t var) const;
    // Degree in the variables of `block` taken together.
    int block_degree(const std::vector<std::size_t>& block) const;
    std::vector<int> multidegree(const std::vector<std::vector<std::size_t>>& blocks) const;
    bool is_homogeneous() const;
    bool is_multihomogeneous(const std::vector<std::vector<std::size_t>>& blocks) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly pow(unsigned k) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    MultiPoly derivative(std::size_t var) const;
    // Divided-power derivative (1/alpha!) d^|alpha| / dX^alpha.
    MultiPoly normalized_derivative(const Exponents& alpha) const;
    // Substitutes args[i] for variable i; all args must share one variable list.
    MultiPoly compose(const std::vector<MultiPoly>& args) const;
    // Replaces the named variables by rational values and drops them from the variable list.
    MultiPoly specialize(const std::map<std::string, Rational>& values) const;
    // Re-expresses the polynomial over `variables`, matching by name. Variables that are
    // absent from the new list must not occur.
    MultiPoly with_variables(const std::vector<std::string>& variables) const;
    // Exact division by the monomial vars^e; throws invariant_error if some term is not divisible.
    MultiPoly divide_by_monomial(const Exponents& e) const;
    // Homogenizes to degree `degree` using variable `var` (which must not occur).
    MultiPoly homogenize(std::size_t var, int degree) const;

    // Sparse sum form "c * X^a*Y^b + ...", with "p/q" rationals and "-" for negative terms.
    std::string to_string() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void check_compatible(const MultiPoly& o) const;
    void add_term(const Exponents& e, const Rational& c);

    std::vector<std::string> vars_;
    Terms terms_;
};

MultiPoly operator+(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(MultiPoly a, const Rational& c);
MultiPoly operator*(const Rational& c, MultiPoly a);
MultiPoly operator-(MultiPoly a);

// A labelled finite family of polynomials (P_i).
struct PolyFamily {
    std::vector<MultiPoly> members;
    std::string label;

    // Every coefficient of every member, in member order.
    std::vector<Rational> coefficients() const;
};

// H_v: largest |coefficient|_v. L_inf: sum of archimedean absolute values of the coefficients.
Rational local_height_exact(const MultiPoly& p, const Place& v);
Rational local_length_exact(const MultiPoly& p);
LogValue local_height(const MultiPoly& p, const Place& v, int precision_bits = default_precision);
// Only defined at the archimedean place.
LogValue local_length(const MultiPoly& p, const Place& v, int precision_bits = default_precision);

// Family versions: maximum over the members.
Rational local_height_exact(const PolyFamily& f, const Place& v);
Rational local_length_exact(const PolyFamily& f);
LogValue local_height(const PolyFamily& f, const Place& v, int precision_bits = default_precision);
LogValue local_length(const PolyFamily& f, const Place& v, int precision_bits = default_precision);

// Sum over all places of the family's local height.
LogValue gauss_weil_height(const PolyFamily& f, int precision_bits = default_precision);
// Places where some coefficient of the family is not a v-adic unit, plus the archimedean one.
std::vector<Place> relevant_places(const PolyFamily& f);

}  // namespace ecb
