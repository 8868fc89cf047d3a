#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecb/curve.hpp"
#include "ecb/poly.hpp"

namespace ecb {

// f(l) = max(0, 2l - 1) and g(l) = 2 f(l) - l = max(0, 3l - 2).
int f_index(int l);
int g_index(int l);

// Affine chart polynomials over `vars`, which is (X, Z) for a specialized curve and
// (g2, g3, X, Z) when the coefficients are symbolic. X and Z stand for x/y and z/y.
//   G~(X, Z)     = Z + g2 X Z^2 + g3 Z^3 - 4 X^3
//   Delta~(X, Z) = dG~/dZ = 3 g3 Z^2 + 2 g2 X Z + 1
//   R(X, Z)      = Delta~ dDelta~/dX - dG~/dX dDelta~/dZ
MultiPoly chart_relation(const std::optional<WeierstrassCurve>& curve);
MultiPoly chart_delta(const std::optional<WeierstrassCurve>& curve);
MultiPoly chart_r(const std::optional<WeierstrassCurve>& curve);

// The numerators d^l Z of tau~(Z) = Z + sum_l d^l Z / Delta~^(2l-1) t^l, for l = 0..order.
struct SeriesCoefficients {
    std::optional<WeierstrassCurve> curve;  // empty: g2, g3 symbolic
    int order = 0;
    std::vector<std::string> variables;
    std::vector<MultiPoly> dz;
    MultiPoly delta;

    bool is_symbolic() const { return !curve.has_value(); }
    PolyFamily family() const;
};

// The Taylor-coefficient recurrence, using power sums of the series tail.
std::vector<MultiPoly> dz_by_taylor(const std::optional<WeierstrassCurve>& curve, int order);
// The derivation recurrence d^(l+1) Z = (1/(l+1)) [d_X(d^l Z) Delta~^2 - d_Z(d^l Z) G~_X Delta~
//                                                   - (2l - 1) d^l Z R].
std::vector<MultiPoly> dz_by_derivation(const std::optional<WeierstrassCurve>& curve, int order);

// Computes both recurrences and throws invariant_error if they disagree.
SeriesCoefficients dz_coefficients(const WeierstrassCurve& curve, int order);
SeriesCoefficients dz_coefficients_symbolic(int order);

struct ResidualReport {
    int order = 0;
    // First t-power in 1..order whose coefficient does not vanish; empty when all vanish.
    std::optional<int> first_bad;
    // order + 1 when every coefficient through `order` vanishes, otherwise *first_bad.
    int residual_order() const { return first_bad ? *first_bad : order + 1; }
    bool ok() const { return !first_bad; }
};

// Identity check: with t = Delta~^2 u, G~(X + Delta~^2 u, Z + Delta~ sum_l d^l Z u^l)
// must have zero u^l coefficients for 1 <= l <= order, as polynomials.
ResidualReport verify_parametrization(const SeriesCoefficients& s);
// Point check at a chart point (x, z) of the curve with Delta~(x, z) != 0.
ResidualReport verify_parametrization_at(const SeriesCoefficients& s, const Rational& x, const Rational& z);

// Series sum_l N_l / Delta~^f(l) t^l with explicit numerators N_l over the chart variables.
struct TruncatedSeries {
    std::vector<std::string> variables;
    int order = 0;
    std::vector<MultiPoly> numerators;

    int denominator_exponent(int l) const { return f_index(l); }
    PolyFamily family() const;
    // Coefficient values N_l(x, z) / Delta~(x, z)^f(l).
    std::vector<Rational> evaluate(const SeriesCoefficients& s, const Rational& x, const Rational& z) const;
};

// Product of two truncated series in the same normalization.
TruncatedSeries series_product(const SeriesCoefficients& s, const TruncatedSeries& a, const TruncatedSeries& b);
// tau~(X^a1 Z^a2). For X alone the l = 1 numerator is Delta~ so that the value is X + t.
TruncatedSeries expand_monomial(const SeriesCoefficients& s, int a1, int a2);

// Variable names (X{j}0, X{j}1, X{j}2) for blocks j = 1..m, concatenated.
std::vector<std::string> block_variables(int m);
std::vector<std::vector<std::size_t>> block_indices(int m);

// Homogenized coefficients d^(i_1..i_m) P, for all index tuples with i_1 + ... + i_m <= order,
// of a form P multihomogeneous in m blocks of three variables (X, Y, Z). Each block j gets
// the homogenized series tau(m) = Y^-deg m sum_l Y^l d^l m / Delta^f(l) t^l with
// d^l m = Y^(g(l) + deg m) d~^l m~(X/Y, Z/Y). Requires a specialized s with s.order >= order.
std::map<std::vector<int>, MultiPoly> multi_expand(const SeriesCoefficients& s, const MultiPoly& form, int m, int order);
// Homogenized d^l m for the monomial X^a Y^b Z^c, over (X, Y, Z).
MultiPoly homogenized_monomial_coefficient(const SeriesCoefficients& s, int a, int b, int c, int l);

}  // namespace ecb
