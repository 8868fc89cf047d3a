#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecb/number_core.hpp"
#include "ecb/poly.hpp"

namespace ecb {

// Projective Weierstrass cubic Y^2 Z = 4 X^3 - g2 X Z^2 - g3 Z^3.
class WeierstrassCurve {
public:
    // Throws singular_curve_error when g2^3 - 27 g3^2 = 0.
    WeierstrassCurve(Rational g2, Rational g3);

    const Rational& g2() const { return g2_; }
    const Rational& g3() const { return g3_; }
    const Rational& discriminant() const { return disc_; }

    // M_v = max(1, |g2|_v, |g3|_v) and m_v = log M_v.
    Rational M(const Place& v) const;
    LogValue m(const Place& v, int precision_bits = default_precision) const;
    // 16 at the archimedean place, 0 at finite places.
    int c(const Place& v) const { return v.is_archimedean() ? 16 : 0; }
    // Weil height of (1 : g2 : g3).
    LogValue eta(int precision_bits = default_precision) const;
    // The archimedean place and every prime with M_v > 1.
    std::vector<Place> bad_places() const;

    bool contains(const Rational& x, const Rational& y, const Rational& z) const;

    friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
        return a.g2_ == b.g2_ && a.g3_ == b.g3_;
    }

private:
    Rational g2_, g3_, disc_;
};

// A point of a Weierstrass curve with exact rational coordinates. The stored
// representative is canonical: (x : y : 1) when z != 0, and (0 : 1 : 0) otherwise.
class ProjectivePoint {
public:
    static ProjectivePoint identity();
    // Validates the curve equation; throws precondition_error otherwise.
    static ProjectivePoint on(const WeierstrassCurve& curve, const Rational& x, const Rational& y, const Rational& z);
    static ProjectivePoint affine(const WeierstrassCurve& curve, const Rational& x, const Rational& y);

    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    const Rational& z() const { return z_; }
    std::vector<Rational> coords() const { return {x_, y_, z_}; }
    bool is_identity() const { return z_ == 0; }
    // (x : -y : z); the identity is fixed.
    ProjectivePoint negated() const;
    // Integer representative with gcd 1 and first nonzero coordinate positive.
    std::vector<Integer> primitive_integer() const;
    // (x/y, z/y), the representative (x : 1 : z); empty when y = 0.
    std::optional<std::pair<Rational, Rational>> unit_y_chart() const;
    std::string to_string() const;

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
    }
    friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) { return !(a == b); }
    // Canonical-representative lexicographic order, for sorted output.
    friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b);

private:
    ProjectivePoint(Rational x, Rational y, Rational z);
    Rational x_, y_, z_;
};

// Variables (X1, Y1, Z1, X2, Y2, Z2) of the addition forms.
const std::vector<std::string>& pair_variables();
// Variable blocks {X1,Y1,Z1} and {X2,Y2,Z2} as index lists into pair_variables().
const std::vector<std::vector<std::size_t>>& pair_blocks();

// One of the three families (A0, A1, A2) of bihomogeneous (2,2) forms representing addition.
struct AdditionFamily {
    int index = 0;
    std::array<MultiPoly, 3> forms;

    PolyFamily family() const;
};

// The family with g2, g3 still symbolic, over (g2, g3, X1, Y1, Z1, X2, Y2, Z2).
const AdditionFamily& generic_addition_family(int index);
AdditionFamily addition_family(const WeierstrassCurve& curve, int index);

// Evaluates family `index` at (P, Q); empty when all three forms vanish there.
std::optional<ProjectivePoint> add_with_family(const WeierstrassCurve& curve, const ProjectivePoint& p,
                                               const ProjectivePoint& q, int index);
// Tries families 1, 2, 3 in that order and uses the first that does not vanish.
ProjectivePoint add(const WeierstrassCurve& curve, const ProjectivePoint& p, const ProjectivePoint& q);
ProjectivePoint negate(const ProjectivePoint& p);
ProjectivePoint sub(const WeierstrassCurve& curve, const ProjectivePoint& p, const ProjectivePoint& q);

// The difference family: addition family `index` with (X2, Y2, Z2) -> (X2, -Y2, Z2).
AdditionFamily difference_family(const WeierstrassCurve& curve, int index);

}  // namespace ecb
