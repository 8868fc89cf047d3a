#include "ecb/curve.hpp"

#include <sstream>

#include "ecb/errors.hpp"

namespace ecb {

WeierstrassCurve::WeierstrassCurve(Rational g2, Rational g3) : g2_(std::move(g2)), g3_(std::move(g3)) {
    disc_ = g2_ * g2_ * g2_ - 27 * g3_ * g3_;
    if (disc_ == 0) {
        throw singular_curve_error("singular curve: g2^3 - 27 g3^2 = 0 for g2 = " + format_rational(g2_) +
                                   ", g3 = " + format_rational(g3_));
    }
}

Rational WeierstrassCurve::M(const Place& v) const { return local_max({Rational(1), g2_, g3_}, v); }

LogValue WeierstrassCurve::m(const Place& v, int precision_bits) const { return log_of(M(v), precision_bits); }

LogValue WeierstrassCurve::eta(int precision_bits) const { return tuple_height({Rational(1), g2_, g3_}, precision_bits); }

std::vector<Place> WeierstrassCurve::bad_places() const {
    std::vector<Place> out;
    for (const Place& v : support_places({g2_, g3_})) {
        if (v.is_archimedean() || M(v) > 1) out.push_back(v);
    }
    return out;
}

bool WeierstrassCurve::contains(const Rational& x, const Rational& y, const Rational& z) const {
    if (x == 0 && y == 0 && z == 0) return false;
    return y * y * z == 4 * x * x * x - g2_ * x * z * z - g3_ * z * z * z;
}

// ---------------------------------------------------------------- points

ProjectivePoint::ProjectivePoint(Rational x, Rational y, Rational z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

ProjectivePoint ProjectivePoint::identity() { return ProjectivePoint(Rational(0), Rational(1), Rational(0)); }

ProjectivePoint ProjectivePoint::on(const WeierstrassCurve& curve, const Rational& x, const Rational& y, const Rational& z) {
    if (!curve.contains(x, y, z)) {
        throw precondition_error("(" + format_rational(x) + " : " + format_rational(y) + " : " + format_rational(z) +
                                 ") is not a point of the curve");
    }
    if (z == 0) return identity();  // the only point on z = 0 is (0 : 1 : 0)
    return ProjectivePoint(x / z, y / z, Rational(1));
}

ProjectivePoint ProjectivePoint::affine(const WeierstrassCurve& curve, const Rational& x, const Rational& y) {
    return on(curve, x, y, Rational(1));
}

std::vector<Integer> ProjectivePoint::primitive_integer() const { return primitive_integer_vector(coords()); }

std::optional<std::pair<Rational, Rational>> ProjectivePoint::unit_y_chart() const {
    if (y_ == 0) return std::nullopt;
    return std::make_pair(Rational(x_ / y_), Rational(z_ / y_));
}

std::string ProjectivePoint::to_string() const {
    return "(" + format_rational(x_) + " : " + format_rational(y_) + " : " + format_rational(z_) + ")";
}

bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.z_ != b.z_) return a.z_ < b.z_;
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.y_ < b.y_;
}

// ---------------------------------------------------------------- addition families

const std::vector<std::string>& pair_variables() {
    static const std::vector<std::string> vars{"X1", "Y1", "Z1", "X2", "Y2", "Z2"};
    return vars;
}

const std::vector<std::vector<std::size_t>>& pair_blocks() {
    static const std::vector<std::vector<std::size_t>> blocks{{0, 1, 2}, {3, 4, 5}};
    return blocks;
}

namespace {

const std::vector<std::string>& generic_variables() {
    static const std::vector<std::string> vars{"g2", "g3", "X1", "Y1", "Z1", "X2", "Y2", "Z2"};
    return vars;
}

const char* const family_text[3][3] = {
    {
        "Y1^2 X2 Z2 - 2 X1 Y1 Y2 Z2 + 2 Y1 Z1 X2 Y2 - 3 g3 X1 Z1 Z2^2 - g2 X1^2 Z2^2"
        " + 3 g3 Z1^2 X2 Z2 + g2 Z1^2 X2^2 - X1 Z1 Y2^2",
        "Y1^2 Y2 Z2 + 3 g3 Y1 Z1 Z2^2 + g2 X1 Y1 Z2^2 + 2 g2 Y1 Z1 X2 Z2 - Y1 Z1 Y2^2"
        " - 12 X1 Y1 X2^2 - 3 g3 Z1^2 Y2 Z2 - 2 g2 X1 Z1 Y2 Z2 - g2 Z1^2 X2 Y2 + 12 X1^2 X2 Y2",
        "Y1^2 Z2^2 + g2 X1 Z1 Z2^2 - g2 Z1^2 X2 Z2 - 12 X1^2 X2 Z2 - Z1^2 Y2^2 + 12 X1 Z1 X2^2",
    },
    {
        "4 Y1^2 X2^2 + g2^2 X1 Z1 Z2^2 + 12 g3 X1^2 Z2^2 - g2^2 Z1^2 X2 Z2"
        " + 4 g2 X1^2 X2 Z2 - 12 g3 Z1^2 X2^2 - 4 g2 X1 Z1 X2^2 - 4 X1^2 Y2^2",
        "4 Y1^2 X2 Y2 - g2^2 Y1 Z1 Z2^2 - 12 g3 X1 Y1 Z2^2 - 24 g3 Y1 Z1 X2 Z2"
        " - 8 g2 X1 Y1 X2 Z2 - 4 g2 Y1 Z1 X2^2 - 4 X1 Y1 Y2^2 + g2^2 Z1^2 Y2 Z2"
        " + 24 g3 X1 Z1 Y2 Z2 + 4 g2 X1^2 Y2 Z2 + 12 g3 Z1^2 X2 Y2 + 8 g2 X1 Z1 X2 Y2",
        "4 Y1^2 X2 Z2 + 8 X1 Y1 Y2 Z2 - 8 Y1 Z1 X2 Y2 - 12 g3 X1 Z1 Z2^2"
        " - 4 g2 X1^2 Z2^2 + 12 g3 Z1^2 X2 Z2 + 4 g2 Z1^2 X2^2 - 4 X1 Z1 Y2^2",
    },
    {
        "4 Y1^2 X2 Y2 + g2^2 Y1 Z1 Z2^2 + 12 g3 X1 Y1 Z2^2 + 24 g3 Y1 Z1 X2 Z2"
        " + 8 g2 X1 Y1 X2 Z2 + 4 g2 Y1 Z1 X2^2 + 4 X1 Y1 Y2^2 + g2^2 Z1^2 Y2 Z2"
        " + 24 g3 X1 Z1 Y2 Z2 + 4 g2 X1^2 Y2 Z2 + 12 g3 Z1^2 X2 Y2 + 8 g2 X1 Z1 X2 Y2",
        "4 Y1^2 Y2^2 + (g2^3 - 36 g3^2) Z1^2 Z2^2 - 12 g2 g3 X1 Z1 Z2^2 - 4 g2^2 X1^2 Z2^2"
        " - 12 g2 g3 Z1^2 X2 Z2 - 16 g2^2 X1 Z1 X2 Z2 - 144 g3 X1^2 X2 Z2"
        " - 4 g2^2 Z1^2 X2^2 - 144 g3 X1 Z1 X2^2 - 48 g2 X1^2 X2^2",
        "4 Y1^2 Y2 Z2 - 12 g3 Y1 Z1 Z2^2 - 4 g2 X1 Y1 Z2^2 - 8 g2 Y1 Z1 X2 Z2"
        " + 4 Y1 Z1 Y2^2 + 48 X1 Y1 X2^2 - 12 g3 Z1^2 Y2 Z2 - 8 g2 X1 Z1 Y2 Z2"
        " - 4 g2 Z1^2 X2 Y2 + 48 X1^2 X2 Y2",
    },
};

void check_index(int index) {
    if (index < 1 || index > 3) throw precondition_error("addition family index must be 1, 2 or 3");
}

std::map<std::string, Rational> curve_values(const WeierstrassCurve& curve) {
    return {{"g2", curve.g2()}, {"g3", curve.g3()}};
}

}  // namespace

PolyFamily AdditionFamily::family() const {
    return PolyFamily{{forms[0], forms[1], forms[2]}, "addition family " + std::to_string(index)};
}

const AdditionFamily& generic_addition_family(int index) {
    check_index(index);
    static const std::array<AdditionFamily, 3> families = [] {
        std::array<AdditionFamily, 3> out;
        for (int f = 0; f < 3; ++f) {
            out[static_cast<std::size_t>(f)].index = f + 1;
            for (int i = 0; i < 3; ++i) {
                out[static_cast<std::size_t>(f)].forms[static_cast<std::size_t>(i)] =
                    MultiPoly::parse(family_text[f][i], generic_variables());
            }
        }
        return out;
    }();
    return families[static_cast<std::size_t>(index - 1)];
}

AdditionFamily addition_family(const WeierstrassCurve& curve, int index) {
    const AdditionFamily& g = generic_addition_family(index);
    AdditionFamily out;
    out.index = index;
    const auto values = curve_values(curve);
    for (std::size_t i = 0; i < 3; ++i) out.forms[i] = g.forms[i].specialize(values);
    return out;
}

AdditionFamily difference_family(const WeierstrassCurve& curve, int index) {
    AdditionFamily a = addition_family(curve, index);
    const auto& vars = pair_variables();
    std::vector<MultiPoly> args;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        MultiPoly v = MultiPoly::variable(vars, i);
        args.push_back(vars[i] == "Y2" ? -v : v);
    }
    for (auto& f : a.forms) f = f.compose(args);
    return a;
}

std::optional<ProjectivePoint> add_with_family(const WeierstrassCurve& curve, const ProjectivePoint& p,
                                               const ProjectivePoint& q, int index) {
    const AdditionFamily& g = generic_addition_family(index);
    const std::vector<Rational> point{curve.g2(), curve.g3(), p.x(), p.y(), p.z(), q.x(), q.y(), q.z()};
    std::array<Rational, 3> r;
    for (std::size_t i = 0; i < 3; ++i) r[i] = g.forms[i].evaluate(point);
    if (r[0] == 0 && r[1] == 0 && r[2] == 0) return std::nullopt;
    if (!curve.contains(r[0], r[1], r[2])) {
        throw invariant_error("addition family " + std::to_string(index) + " produced a point off the curve");
    }
    return ProjectivePoint::on(curve, r[0], r[1], r[2]);
}

ProjectivePoint add(const WeierstrassCurve& curve, const ProjectivePoint& p, const ProjectivePoint& q) {
    for (int index = 1; index <= 3; ++index) {
        if (auto r = add_with_family(curve, p, q, index)) return *r;
    }
    throw invariant_error("all three addition families vanish at " + p.to_string() + ", " + q.to_string());
}

ProjectivePoint ProjectivePoint::negated() const {
    if (is_identity()) return *this;
    return ProjectivePoint(x_, -y_, z_);
}

ProjectivePoint negate(const ProjectivePoint& p) { return p.negated(); }

ProjectivePoint sub(const WeierstrassCurve& curve, const ProjectivePoint& p, const ProjectivePoint& q) {
    return add(curve, p, negate(q));
}

}  // namespace ecb
