#include "ecb/division.hpp"

#include "ecb/errors.hpp"

namespace ecb {

struct DivisionPolyCache::State {
    std::recursive_mutex mutex;
    std::map<int, MultiPoly> q;
    std::map<int, ReductionCoefficients> t;
    std::map<int, MultiplicationForms> forms;
    std::vector<MultiPoly> weierstrass_powers;  // (4X^3 - g2 X - g3)^k
};

PolyFamily MultiplicationForms::family() const {
    return PolyFamily{{forms[0], forms[1], forms[2]}, "multiplication by " + std::to_string(n)};
}

DivisionPolyCache::DivisionPolyCache(std::vector<std::string> vars)
    : vars_(std::move(vars)), state_(std::make_unique<State>()) {
    form_vars_ = vars_;
    form_vars_.push_back("Z");
    ix_ = vars_.size() - 2;
    iy_ = vars_.size() - 1;
}

DivisionPolyCache::DivisionPolyCache(const WeierstrassCurve& curve) : DivisionPolyCache(std::vector<std::string>{"X", "Y"}) {
    curve_ = curve;
}

DivisionPolyCache DivisionPolyCache::generic() { return DivisionPolyCache(std::vector<std::string>{"g2", "g3", "X", "Y"}); }

DivisionPolyCache::DivisionPolyCache(DivisionPolyCache&&) noexcept = default;
DivisionPolyCache::~DivisionPolyCache() = default;

MultiPoly DivisionPolyCache::g2_poly() const {
    return curve_ ? MultiPoly::constant(vars_, curve_->g2()) : MultiPoly::variable(vars_, std::size_t{0});
}

MultiPoly DivisionPolyCache::g3_poly() const {
    return curve_ ? MultiPoly::constant(vars_, curve_->g3()) : MultiPoly::variable(vars_, std::size_t{1});
}

MultiPoly DivisionPolyCache::x_poly() const { return MultiPoly::variable(vars_, ix_); }
MultiPoly DivisionPolyCache::y_poly() const { return MultiPoly::variable(vars_, iy_); }

MultiPoly DivisionPolyCache::canonical(const MultiPoly& p) const {
    std::lock_guard lock(state_->mutex);
    auto& powers = state_->weierstrass_powers;
    if (powers.empty()) {
        powers.push_back(MultiPoly::constant(vars_, Rational(1)));
        const MultiPoly x = x_poly();
        powers.push_back(Rational(4) * x.pow(3) - g2_poly() * x - g3_poly());
    }
    MultiPoly out(vars_);
    for (const auto& [e, c] : p.terms()) {
        const int b = e[iy_];
        Exponents rest = e;
        rest[iy_] = b % 2;
        const auto k = static_cast<std::size_t>(b / 2);
        while (powers.size() <= k) powers.push_back(powers.back() * powers[1]);
        out += MultiPoly::monomial(vars_, rest, c) * powers[k];
    }
    return out;
}

MultiPoly DivisionPolyCache::compute_q(int n) const {
    switch (n) {
        case -1: return MultiPoly::constant(vars_, Rational(-1));
        case 0: return MultiPoly(vars_);
        case 1: return MultiPoly::constant(vars_, Rational(1));
        case 2: return y_poly();
        default: break;
    }
    const MultiPoly g2 = g2_poly(), g3 = g3_poly(), x = x_poly(), y = y_poly();
    if (n == 3) {
        return Rational(3) * x.pow(4) - Rational(3, 2) * g2 * x.pow(2) - Rational(3) * g3 * x -
               Rational(1, 16) * g2.pow(2);
    }
    if (n == 4) {
        return Rational(1, 2) * y *
               (Rational(4) * x.pow(6) - Rational(5) * g2 * x.pow(4) - Rational(20) * g3 * x.pow(3) -
                Rational(5, 4) * g2.pow(2) * x.pow(2) - g2 * g3 * x - Rational(2) * g3.pow(2) +
                Rational(1, 16) * g2.pow(3));
    }
    const int k = n / 2;
    if (n % 2 == 1) {
        return canonical(q(k + 2) * q(k).pow(3) - q(k - 1) * q(k + 1).pow(3));
    }
    const MultiPoly yq = q(k) * (q(k + 2) * q(k - 1).pow(2) - q(k - 2) * q(k + 1).pow(2));
    Exponents ye(vars_.size(), 0);
    ye[iy_] = 1;
    return canonical(yq.divide_by_monomial(ye));
}

MultiPoly DivisionPolyCache::q(int n) const {
    if (n < -1) throw precondition_error("Q_n is defined for n >= -1");
    std::lock_guard lock(state_->mutex);
    auto it = state_->q.find(n);
    if (it != state_->q.end()) return it->second;
    MultiPoly value = compute_q(n);
    state_->q.emplace(n, value);
    return value;
}

ReductionCoefficients DivisionPolyCache::t_coefficients(int n) const {
    if (n < 0) throw precondition_error("T_n is defined for n >= 0");
    std::lock_guard lock(state_->mutex);
    auto& t = state_->t;
    if (t.empty()) {
        const MultiPoly zero(vars_), one = MultiPoly::constant(vars_, Rational(1));
        t.emplace(0, ReductionCoefficients{zero, zero, one});
        t.emplace(1, ReductionCoefficients{zero, one, zero});
        t.emplace(2, ReductionCoefficients{one, zero, zero});
    }
    if (auto it = t.find(n); it != t.end()) return it->second;
    const MultiPoly quarter_g2 = Rational(1, 4) * g2_poly();
    const MultiPoly quarter_y2g3 = Rational(1, 4) * (y_poly().pow(2) + g3_poly());
    for (int m = t.rbegin()->first; m < n; ++m) {
        const ReductionCoefficients& prev = t.at(m);
        ReductionCoefficients next{prev.b, quarter_g2 * prev.a + prev.c, quarter_y2g3 * prev.a};
        t.emplace(m + 1, std::move(next));
    }
    return t.at(n);
}

MultiPoly DivisionPolyCache::reduce(const MultiPoly& p) const {
    if (p.variables() != vars_) throw precondition_error("reduce: polynomial is not over the cache variables");
    MultiPoly::Terms terms = p.terms();
    const std::optional<Rational> g2 = curve_ ? std::optional<Rational>(curve_->g2()) : std::nullopt;
    const std::optional<Rational> g3 = curve_ ? std::optional<Rational>(curve_->g3()) : std::nullopt;
    auto accumulate = [&terms](const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    };
    for (;;) {
        int top = -1;
        for (const auto& [e, c] : terms) top = std::max(top, e[ix_]);
        if (top < 3) break;
        std::vector<std::pair<Exponents, Rational>> layer;
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->first[ix_] == top) {
                layer.emplace_back(it->first, it->second);
                it = terms.erase(it);
            } else {
                ++it;
            }
        }
        // c X^a Y^b -> (c/4) X^(a-3) (Y^(b+2) + g2 X Y^b + g3 Y^b)
        for (const auto& [e, c] : layer) {
            const Rational quarter = c / 4;
            Exponents base = e;
            base[ix_] -= 3;
            Exponents ey = base;
            ey[iy_] += 2;
            accumulate(ey, quarter);
            Exponents eg2 = base;
            eg2[ix_] += 1;
            Exponents eg3 = base;
            if (g2) {
                accumulate(eg2, quarter * *g2);
                accumulate(eg3, quarter * *g3);
            } else {
                eg2[0] += 1;
                eg3[1] += 1;
                accumulate(eg2, quarter);
                accumulate(eg3, quarter);
            }
        }
    }
    return MultiPoly(vars_, std::move(terms));
}

std::array<MultiPoly, 3> DivisionPolyCache::affine_forms(int n) const {
    if (n < 1) throw precondition_error("multiplication forms need n >= 1");
    const MultiPoly qn = q(n), qn1 = q(n + 1), qm1 = q(n - 1), qn2 = q(n + 2);
    // For n = 1 this is the convention Q_{-1} = -1.
    const MultiPoly qm2 = q(n - 2);
    const MultiPoly qn3 = qn.pow(3);
    MultiPoly f0 = x_poly() * qn3 - qn * qn1 * qm1;
    MultiPoly numerator = qn2 * qm1.pow(2) - qm2 * qn1.pow(2);
    Exponents ye(vars_.size(), 0);
    ye[iy_] = 1;
    MultiPoly f1 = numerator.divide_by_monomial(ye);
    return {std::move(f0), std::move(f1), qn3};
}

const MultiplicationForms& DivisionPolyCache::mult_forms(int n) const {
    if (n < 1) throw precondition_error("multiplication forms need n >= 1");
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->forms.find(n); it != state_->forms.end()) return it->second;
    const auto affine = affine_forms(n);
    const int degree = n * n;
    MultiplicationForms out;
    out.n = n;
    for (std::size_t i = 0; i < 3; ++i) {
        const MultiPoly reduced = reduce(affine[i]);
        MultiPoly::Terms terms;
        for (const auto& [e, c] : reduced.terms()) {
            const int d = e[ix_] + e[iy_];
            if (d > degree) {
                throw invariant_error("reduced multiplication form of degree " + std::to_string(d) + " exceeds n^2 = " +
                                      std::to_string(degree));
            }
            Exponents h = e;
            h.push_back(degree - d);
            terms.emplace(std::move(h), c);
        }
        out.forms[i] = MultiPoly(form_vars_, std::move(terms));
    }
    return state_->forms.emplace(n, std::move(out)).first->second;
}

MultiPoly q_poly(const DivisionPolyCache& cache, int n) { return cache.q(n); }

MultiPoly reduce_mod_curve(const DivisionPolyCache& cache, const MultiPoly& p) { return cache.reduce(p); }

const MultiplicationForms& mult_forms(const DivisionPolyCache& cache, int n) { return cache.mult_forms(n); }

namespace {

// Y^2 Z = 4 X^3 - g2 X Z^2 - g3 Z^3 at an integer triple, cleared of the denominators of g2, g3.
bool on_curve(const WeierstrassCurve& curve, const std::array<Integer, 3>& a) {
    Integer d;
    mpz_lcm(d.get_mpz_t(), curve.g2().get_den_mpz_t(), curve.g3().get_den_mpz_t());
    const Integer g2 = curve.g2().get_num() * (d / curve.g2().get_den());
    const Integer g3 = curve.g3().get_num() * (d / curve.g3().get_den());
    const Integer z2 = a[2] * a[2];
    const Integer lhs = d * a[1] * a[1] * a[2];
    const Integer rhs = 4 * d * a[0] * a[0] * a[0] - g2 * a[0] * z2 - g3 * z2 * a[2];
    return lhs == rhs;
}

// The forms at an integer triple, all multiplied by the same common denominator of their
// coefficients so that the arithmetic stays in the integers.
std::array<Integer, 3> evaluate_forms(const MultiplicationForms& f, const std::array<Integer, 3>& a) {
    Integer common = 1;
    for (const MultiPoly& form : f.forms) {
        for (const auto& [e, c] : form.terms()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    }
    const std::size_t degree = static_cast<std::size_t>(f.n) * static_cast<std::size_t>(f.n);
    std::array<std::vector<Integer>, 3> powers;
    for (std::size_t i = 0; i < 3; ++i) {
        powers[i].resize(degree + 1);
        powers[i][0] = 1;
        for (std::size_t k = 1; k <= degree; ++k) powers[i][k] = powers[i][k - 1] * a[i];
    }
    std::array<Integer, 3> out{0, 0, 0};
    Integer term;
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& [e, c] : f.forms[i].terms()) {
            term = c.get_num() * (common / c.get_den());
            for (std::size_t j = 0; j < 3; ++j) {
                if (e[j] != 0) term *= powers[j][static_cast<std::size_t>(e[j])];
            }
            out[i] += term;
        }
    }
    return out;
}

}  // namespace

ProjectivePoint apply_mult_forms(const DivisionPolyCache& cache, int n, const ProjectivePoint& p) {
    if (cache.is_generic()) throw precondition_error("scalar multiplication needs a cache specialized to a curve");
    const WeierstrassCurve& curve = *cache.curve();
    const std::vector<Integer> prim = p.primitive_integer();
    const std::array<Integer, 3> a{prim[0], prim[1], prim[2]};
    if (!on_curve(curve, a)) throw precondition_error(p.to_string() + " is not on the cache's curve");
    const std::array<Integer, 3> r = evaluate_forms(cache.mult_forms(n), a);
    if (r[0] == 0 && r[1] == 0 && r[2] == 0) {
        throw invariant_error("multiplication forms F^(" + std::to_string(n) + ") vanish at " + p.to_string());
    }
    if (!on_curve(curve, r)) {
        throw invariant_error("multiplication forms F^(" + std::to_string(n) + ") left the curve at " + p.to_string());
    }
    return ProjectivePoint::on(curve, Rational(r[0]), Rational(r[1]), Rational(r[2]));
}

ProjectivePoint scalar_mul(const DivisionPolyCache& cache, long n, const ProjectivePoint& p) {
    if (cache.is_generic()) throw precondition_error("scalar multiplication needs a cache specialized to a curve");
    if (n == 0 || p.is_identity()) return ProjectivePoint::identity();
    if (n < 0) return scalar_mul(cache, -n, negate(p));
    if (n <= direct_multiplication_limit) return apply_mult_forms(cache, static_cast<int>(n), p);
    const WeierstrassCurve& curve = *cache.curve();
    int top = 63;
    while (((static_cast<unsigned long>(n) >> top) & 1UL) == 0) --top;
    ProjectivePoint acc = p;
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = apply_mult_forms(cache, 2, acc);
        if ((static_cast<unsigned long>(n) >> bit) & 1UL) acc = add(curve, acc, p);
    }
    return acc;
}

}  // namespace ecb
