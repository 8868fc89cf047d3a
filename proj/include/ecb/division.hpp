#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ecb/curve.hpp"
#include "ecb/poly.hpp"

namespace ecb {

// Reduction coefficients of T_n = T(X^n) = A_n X^2 + B_n X + C_n, each a polynomial in Y.
struct ReductionCoefficients {
    MultiPoly a, b, c;
};

// The forms (F0, F1, F2), homogeneous of degree n^2 in (X, Y, Z), representing
// multiplication by n on the curve.
struct MultiplicationForms {
    int n = 1;
    std::array<MultiPoly, 3> forms;

    PolyFamily family() const;
};

// Memoized division polynomials Q_n, reduction coefficients and multiplication forms.
//
// A specialized cache works over (X, Y) for one curve. The generic cache keeps g2 and
// g3 as variables, working over (g2, g3, X, Y) and producing forms over (g2, g3, X, Y, Z);
// its degree and homogeneity statements refer to (X, Y, Z) only.
//
// Q_n is stored in canonical form: a polynomial in X for odd n and Y times a polynomial
// in X for even n. Lookups are safe from several threads.
class DivisionPolyCache {
public:
    explicit DivisionPolyCache(const WeierstrassCurve& curve);
    static DivisionPolyCache generic();

    DivisionPolyCache(const DivisionPolyCache&) = delete;
    DivisionPolyCache& operator=(const DivisionPolyCache&) = delete;
    DivisionPolyCache(DivisionPolyCache&&) noexcept;
    ~DivisionPolyCache();

    bool is_generic() const { return !curve_.has_value(); }
    const std::optional<WeierstrassCurve>& curve() const { return curve_; }
    // (X, Y) or (g2, g3, X, Y).
    const std::vector<std::string>& variables() const { return vars_; }
    // Variables of the multiplication forms: variables() followed by Z.
    const std::vector<std::string>& form_variables() const { return form_vars_; }

    // Q_n for n >= -1.
    MultiPoly q(int n) const;
    // (A_n, B_n, C_n) for n >= 0, from the first-order recurrences.
    ReductionCoefficients t_coefficients(int n) const;
    // The reduction T: the unique representative with X-degree <= 2 modulo
    // Y^2 = 4X^3 - g2 X - g3, obtained by rewriting X^3 -> (Y^2 + g2 X + g3)/4 on the
    // highest X-degree terms until none has X-degree >= 3.
    MultiPoly reduce(const MultiPoly& p) const;
    // The unreduced affine polynomials (F~0, F~1, F~2) for n >= 1.
    std::array<MultiPoly, 3> affine_forms(int n) const;
    // The forms of degree n^2 for n >= 1.
    const MultiplicationForms& mult_forms(int n) const;

private:
    explicit DivisionPolyCache(std::vector<std::string> vars);

    MultiPoly g2_poly() const;
    MultiPoly g3_poly() const;
    MultiPoly x_poly() const;
    MultiPoly y_poly() const;
    // Rewrites every Y^k as Y^(k mod 2) (4X^3 - g2 X - g3)^(k div 2).
    MultiPoly canonical(const MultiPoly& p) const;
    MultiPoly compute_q(int n) const;

    std::optional<WeierstrassCurve> curve_;
    std::vector<std::string> vars_;
    std::vector<std::string> form_vars_;
    std::size_t ix_ = 0, iy_ = 0;

    struct State;
    std::unique_ptr<State> state_;
};

// Free-function wrappers.
MultiPoly q_poly(const DivisionPolyCache& cache, int n);
MultiPoly reduce_mod_curve(const DivisionPolyCache& cache, const MultiPoly& p);
const MultiplicationForms& mult_forms(const DivisionPolyCache& cache, int n);

// Largest |n| for which scalar_mul evaluates F^(n) directly; beyond it a binary
// ladder of F^(2) and the addition families is used.
inline constexpr int direct_multiplication_limit = 12;

// n P. n < 0 multiplies -P; n = 0 gives the identity. The cache must be specialized
// to the point's curve.
ProjectivePoint scalar_mul(const DivisionPolyCache& cache, long n, const ProjectivePoint& p);
// Evaluates F^(n) at p without the ladder fallback (n >= 1).
ProjectivePoint apply_mult_forms(const DivisionPolyCache& cache, int n, const ProjectivePoint& p);

}  // namespace ecb
