#include "ecb/series.hpp"

#include <functional>

#include "ecb/errors.hpp"

namespace ecb {

int f_index(int l) { return l <= 0 ? 0 : 2 * l - 1; }
int g_index(int l) { return l <= 0 ? 0 : 3 * l - 2; }

namespace {

std::vector<std::string> chart_variables(const std::optional<WeierstrassCurve>& curve) {
    if (curve) return {"X", "Z"};
    return {"g2", "g3", "X", "Z"};
}

struct Chart {
    std::vector<std::string> vars;
    std::size_t ix, iz;
    MultiPoly g2, g3, x, z, one;

    explicit Chart(const std::optional<WeierstrassCurve>& curve) : vars(chart_variables(curve)) {
        ix = vars.size() - 2;
        iz = vars.size() - 1;
        g2 = curve ? MultiPoly::constant(vars, curve->g2()) : MultiPoly::variable(vars, std::size_t{0});
        g3 = curve ? MultiPoly::constant(vars, curve->g3()) : MultiPoly::variable(vars, std::size_t{1});
        x = MultiPoly::variable(vars, ix);
        z = MultiPoly::variable(vars, iz);
        one = MultiPoly::constant(vars, Rational(1));
    }

    MultiPoly relation() const { return z + g2 * x * z.pow(2) + g3 * z.pow(3) - Rational(4) * x.pow(3); }
    MultiPoly delta() const { return Rational(3) * g3 * z.pow(2) + Rational(2) * g2 * x * z + one; }

    Exponents alpha(int h, int j) const {
        Exponents e(vars.size(), 0);
        e[ix] = h;
        e[iz] = j;
        return e;
    }
};

// Truncated product of two coefficient lists (plain power series, no normalization).
std::vector<MultiPoly> plain_product(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b, int order,
                                     const std::vector<std::string>& vars) {
    std::vector<MultiPoly> out(static_cast<std::size_t>(order) + 1, MultiPoly(vars));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<Rational> rational_product(const std::vector<Rational>& a, const std::vector<Rational>& b, int order) {
    std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

void require_order(int order) {
    if (order < 1) throw precondition_error("series order must be at least 1");
}

}  // namespace

MultiPoly chart_relation(const std::optional<WeierstrassCurve>& curve) { return Chart(curve).relation(); }
MultiPoly chart_delta(const std::optional<WeierstrassCurve>& curve) { return Chart(curve).delta(); }

MultiPoly chart_r(const std::optional<WeierstrassCurve>& curve) {
    const Chart c(curve);
    const MultiPoly g = c.relation(), d = c.delta();
    return d * d.derivative(c.ix) - g.derivative(c.ix) * d.derivative(c.iz);
}

PolyFamily SeriesCoefficients::family() const { return PolyFamily{dz, "d^l Z, l = 0.." + std::to_string(order)}; }

std::vector<MultiPoly> dz_by_taylor(const std::optional<WeierstrassCurve>& curve, int order) {
    require_order(order);
    const Chart c(curve);
    const MultiPoly g = c.relation(), delta = c.delta();
    // gd[h][j] = (1/(h! j!)) d^(h+j) G~ / dX^h dZ^j, nonzero only for h + j <= 3.
    MultiPoly gd[4][4];
    for (int h = 0; h <= 3; ++h) {
        for (int j = 0; h + j <= 3; ++j) gd[h][j] = g.normalized_derivative(c.alpha(h, j));
    }
    std::vector<MultiPoly> delta_pow{c.one};
    for (int k = 1; k <= 4; ++k) delta_pow.push_back(delta_pow.back() * delta);

    const auto n = static_cast<std::size_t>(order) + 1;
    std::vector<MultiPoly> dz(n, MultiPoly(c.vars));
    dz[0] = c.z;
    // conv[j][m] = coefficient of t^m in (sum_{k>=1} d^k Z t^k)^j.
    std::vector<std::vector<MultiPoly>> conv(4, std::vector<MultiPoly>(n, MultiPoly(c.vars)));
    for (int l = 1; l <= order; ++l) {
        const auto ul = static_cast<std::size_t>(l);
        for (int j = 2; j <= 3; ++j) {
            MultiPoly acc(c.vars);
            for (int k = 1; k <= l - 1; ++k) acc += dz[static_cast<std::size_t>(k)] * conv[static_cast<std::size_t>(j - 1)][ul - static_cast<std::size_t>(k)];
            conv[static_cast<std::size_t>(j)][ul] = std::move(acc);
        }
        MultiPoly sum(c.vars);
        for (int h = 0; h <= 3 && h <= l; ++h) {
            for (int j = 0; h + j <= 3; ++j) {
                if (h == 0 && j <= 1) continue;
                const int m = l - h;
                const MultiPoly* tail = nullptr;
                if (j == 0) {
                    if (m != 0) continue;
                    tail = &c.one;
                } else {
                    if (m < j) continue;
                    tail = &conv[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
                }
                sum += delta_pow[static_cast<std::size_t>(2 * h + j - 2)] * gd[h][j] * *tail;
            }
        }
        dz[ul] = -sum;
        conv[1][ul] = dz[ul];
    }
    return dz;
}

std::vector<MultiPoly> dz_by_derivation(const std::optional<WeierstrassCurve>& curve, int order) {
    require_order(order);
    const Chart c(curve);
    const MultiPoly g = c.relation(), delta = c.delta(), r = chart_r(curve);
    const MultiPoly gx = g.derivative(c.ix);
    const MultiPoly delta2 = delta * delta;
    std::vector<MultiPoly> dz{c.z, -gx};
    for (int l = 1; l < order; ++l) {
        const MultiPoly& cur = dz.back();
        MultiPoly next = cur.derivative(c.ix) * delta2 - cur.derivative(c.iz) * gx * delta - Rational(2 * l - 1) * cur * r;
        next *= Rational(1, l + 1);
        dz.push_back(std::move(next));
    }
    return dz;
}

namespace {

SeriesCoefficients build(const std::optional<WeierstrassCurve>& curve, int order) {
    std::vector<MultiPoly> a = dz_by_taylor(curve, order);
    const std::vector<MultiPoly> b = dz_by_derivation(curve, order);
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (a[l] != b[l]) {
            throw invariant_error("the two recurrences for d^l Z disagree at l = " + std::to_string(l));
        }
    }
    SeriesCoefficients s;
    s.curve = curve;
    s.order = order;
    s.variables = chart_variables(curve);
    s.dz = std::move(a);
    s.delta = chart_delta(curve);
    return s;
}

}  // namespace

SeriesCoefficients dz_coefficients(const WeierstrassCurve& curve, int order) { return build(curve, order); }

SeriesCoefficients dz_coefficients_symbolic(int order) { return build(std::nullopt, order); }

ResidualReport verify_parametrization(const SeriesCoefficients& s) {
    const Chart c(s.curve);
    const int order = s.order;
    const MultiPoly delta = s.delta;
    std::vector<MultiPoly> xs{c.x, delta * delta};
    std::vector<MultiPoly> zs{c.z};
    for (int l = 1; l <= order; ++l) zs.push_back(delta * s.dz[static_cast<std::size_t>(l)]);
    const auto z2 = plain_product(zs, zs, order, c.vars);
    const auto z3 = plain_product(z2, zs, order, c.vars);
    const auto xz2 = plain_product(xs, z2, order, c.vars);
    const auto x2 = plain_product(xs, xs, order, c.vars);
    const auto x3 = plain_product(x2, xs, order, c.vars);
    ResidualReport report;
    report.order = order;
    for (int l = 1; l <= order; ++l) {
        const auto ul = static_cast<std::size_t>(l);
        MultiPoly coeff = c.g2 * xz2[ul] + c.g3 * z3[ul] - Rational(4) * x3[ul];
        if (ul < zs.size()) coeff += zs[ul];
        if (!coeff.is_zero()) {
            report.first_bad = l;
            break;
        }
    }
    return report;
}

ResidualReport verify_parametrization_at(const SeriesCoefficients& s, const Rational& x, const Rational& z) {
    if (s.is_symbolic()) throw precondition_error("point verification needs a specialized curve");
    const WeierstrassCurve& curve = *s.curve;
    const std::vector<Rational> pt{x, z};
    if (chart_relation(curve).evaluate(pt) != 0) throw precondition_error("chart point is not on the curve");
    const Rational d = s.delta.evaluate(pt);
    if (d == 0) throw precondition_error("Delta~ vanishes at the chart point");
    const int order = s.order;
    std::vector<Rational> xs{x, Rational(1)};
    std::vector<Rational> zs{z};
    Rational dpow = d;  // d^(2l-1)
    for (int l = 1; l <= order; ++l) {
        zs.push_back(s.dz[static_cast<std::size_t>(l)].evaluate(pt) / dpow);
        dpow *= d * d;
    }
    const auto z2 = rational_product(zs, zs, order);
    const auto z3 = rational_product(z2, zs, order);
    const auto xz2 = rational_product(xs, z2, order);
    const auto x2 = rational_product(xs, xs, order);
    const auto x3 = rational_product(x2, xs, order);
    ResidualReport report;
    report.order = order;
    for (int l = 1; l <= order; ++l) {
        const auto ul = static_cast<std::size_t>(l);
        const Rational coeff = zs[ul] + curve.g2() * xz2[ul] + curve.g3() * z3[ul] - 4 * x3[ul];
        if (coeff != 0) {
            report.first_bad = l;
            break;
        }
    }
    return report;
}

PolyFamily TruncatedSeries::family() const { return PolyFamily{numerators, "monomial series numerators"}; }

std::vector<Rational> TruncatedSeries::evaluate(const SeriesCoefficients& s, const Rational& x, const Rational& z) const {
    if (s.is_symbolic()) throw precondition_error("evaluation needs a specialized curve");
    const std::vector<Rational> pt{x, z};
    const Rational d = s.delta.evaluate(pt);
    if (d == 0) throw precondition_error("Delta~ vanishes at the chart point");
    std::vector<Rational> out;
    for (int l = 0; l <= order; ++l) {
        Rational den = 1;
        for (int k = 0; k < f_index(l); ++k) den *= d;
        out.push_back(numerators[static_cast<std::size_t>(l)].evaluate(pt) / den);
    }
    return out;
}

TruncatedSeries series_product(const SeriesCoefficients& s, const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order != b.order || a.variables != b.variables) throw precondition_error("series_product: incompatible series");
    TruncatedSeries out;
    out.variables = a.variables;
    out.order = a.order;
    out.numerators.assign(static_cast<std::size_t>(a.order) + 1, MultiPoly(a.variables));
    for (int l = 0; l <= a.order; ++l) {
        MultiPoly acc(a.variables);
        for (int i = 0; i <= l; ++i) {
            const MultiPoly& ai = a.numerators[static_cast<std::size_t>(i)];
            const MultiPoly& bj = b.numerators[static_cast<std::size_t>(l - i)];
            if (ai.is_zero() || bj.is_zero()) continue;
            MultiPoly term = ai * bj;
            // f(l) - f(i) - f(l - i) is 1 when both indices are positive and 0 otherwise.
            if (i > 0 && l - i > 0) term *= s.delta;
            acc += term;
        }
        out.numerators[static_cast<std::size_t>(l)] = std::move(acc);
    }
    return out;
}

TruncatedSeries expand_monomial(const SeriesCoefficients& s, int a1, int a2) {
    if (a1 < 0 || a2 < 0) throw precondition_error("monomial exponents must be nonnegative");
    const Chart c(s.curve);
    const auto n = static_cast<std::size_t>(s.order) + 1;
    TruncatedSeries x_series{c.vars, s.order, std::vector<MultiPoly>(n, MultiPoly(c.vars))};
    x_series.numerators[0] = c.x;
    x_series.numerators[1] = s.delta;
    TruncatedSeries z_series{c.vars, s.order, s.dz};
    TruncatedSeries out{c.vars, s.order, std::vector<MultiPoly>(n, MultiPoly(c.vars))};
    out.numerators[0] = c.one;
    for (int i = 0; i < a1; ++i) out = series_product(s, out, x_series);
    for (int i = 0; i < a2; ++i) out = series_product(s, out, z_series);
    return out;
}

std::vector<std::string> block_variables(int m) {
    std::vector<std::string> vars;
    for (int j = 1; j <= m; ++j) {
        for (int k = 0; k < 3; ++k) vars.push_back("X" + std::to_string(j) + std::to_string(k));
    }
    return vars;
}

std::vector<std::vector<std::size_t>> block_indices(int m) {
    std::vector<std::vector<std::size_t>> blocks;
    for (int j = 0; j < m; ++j) {
        const auto b = static_cast<std::size_t>(3 * j);
        blocks.push_back({b, b + 1, b + 2});
    }
    return blocks;
}

namespace {

// Homogenizes numerator N(X, Z) of chart series to Y^(g(l) + deg) N(X/Y, Z/Y), writing the
// (X, Y, Z) exponents at positions offset..offset+2 of a vector of length `width`.
MultiPoly homogenize_numerator(const MultiPoly& numerator, int l, int degree, const std::vector<std::string>& vars,
                               std::size_t offset) {
    const int target = g_index(l) + degree;
    MultiPoly::Terms terms;
    for (const auto& [e, c] : numerator.terms()) {
        const int px = e[0], pz = e[1];
        const int py = target - px - pz;
        if (py < 0) throw invariant_error("series numerator degree exceeds g(l) + deg m");
        Exponents h(vars.size(), 0);
        h[offset] = px;
        h[offset + 1] = py;
        h[offset + 2] = pz;
        terms.emplace(std::move(h), c);
    }
    return MultiPoly(vars, std::move(terms));
}

}  // namespace

MultiPoly homogenized_monomial_coefficient(const SeriesCoefficients& s, int a, int b, int c, int l) {
    if (s.is_symbolic()) throw precondition_error("homogenized coefficients need a specialized curve");
    if (l < 0 || l > s.order) throw precondition_error("series index out of range");
    const TruncatedSeries t = expand_monomial(s, a, c);
    return homogenize_numerator(t.numerators[static_cast<std::size_t>(l)], l, a + b + c, {"X", "Y", "Z"}, 0);
}

std::map<std::vector<int>, MultiPoly> multi_expand(const SeriesCoefficients& s, const MultiPoly& form, int m, int order) {
    if (s.is_symbolic()) throw precondition_error("multi_expand needs a specialized curve");
    if (m < 1) throw precondition_error("multi_expand needs m >= 1");
    if (order < 0 || order > s.order) throw precondition_error("multi_expand order exceeds the series order");
    if (form.arity() != static_cast<std::size_t>(3 * m)) throw precondition_error("form must have 3m variables");
    const auto blocks = block_indices(m);
    if (!form.is_multihomogeneous(blocks)) throw precondition_error("form is not multihomogeneous in the m blocks");
    const auto& vars = form.variables();

    // Per block and monomial (a, b, c): homogenized coefficients for l = 0..order.
    std::map<std::pair<std::size_t, std::array<int, 3>>, std::vector<MultiPoly>> cache;
    std::map<std::pair<int, int>, TruncatedSeries> chart_cache;
    auto block_coefficients = [&](std::size_t j, const std::array<int, 3>& abc) -> const std::vector<MultiPoly>& {
        auto key = std::make_pair(j, abc);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto ck = std::make_pair(abc[0], abc[2]);
        auto ct = chart_cache.find(ck);
        if (ct == chart_cache.end()) ct = chart_cache.emplace(ck, expand_monomial(s, abc[0], abc[2])).first;
        std::vector<MultiPoly> out;
        for (int l = 0; l <= order; ++l) {
            out.push_back(homogenize_numerator(ct->second.numerators[static_cast<std::size_t>(l)], l,
                                               abc[0] + abc[1] + abc[2], vars, 3 * j));
        }
        return cache.emplace(key, std::move(out)).first->second;
    };

    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    std::function<void(std::size_t, int)> gen = [&](std::size_t pos, int left) {
        if (pos == cur.size()) {
            tuples.push_back(cur);
            return;
        }
        for (int i = 0; i <= left; ++i) {
            cur[pos] = i;
            gen(pos + 1, left - i);
        }
    };
    gen(0, order);

    std::map<std::vector<int>, MultiPoly> out;
    for (const auto& t : tuples) out.emplace(t, MultiPoly(vars));
    for (const auto& [e, coeff] : form.terms()) {
        std::vector<const std::vector<MultiPoly>*> per_block;
        for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
            per_block.push_back(&block_coefficients(j, {e[3 * j], e[3 * j + 1], e[3 * j + 2]}));
        }
        for (const auto& t : tuples) {
            MultiPoly prod = MultiPoly::constant(vars, coeff);
            for (std::size_t j = 0; j < per_block.size(); ++j) prod *= (*per_block[j])[static_cast<std::size_t>(t[j])];
            out.at(t) += prod;
        }
    }
    return out;
}

}  // namespace ecb
