#include "ecb/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "ecb/division.hpp"
#include "ecb/errors.hpp"

namespace ecb {

namespace {

Integer floor_of(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Integer binomial(const Integer& top, unsigned long k) {
    if (top < 0) return 0;
    Integer out;
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
}

Integer isqrt(const Integer& n) {
    Integer out;
    mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
    return out;
}

Truth conjunction(Truth a, Truth b) {
    if (a == Truth::no || b == Truth::no) return Truth::no;
    if (a == Truth::yes && b == Truth::yes) return Truth::yes;
    return Truth::unknown;
}

Truth from_bool(bool b) { return b ? Truth::yes : Truth::no; }

void check_weights(const WeightedSimplex& s) {
    if (s.weights.empty()) throw precondition_error("simplex needs at least one weight");
    for (const Rational& r : s.weights) {
        if (r <= 0) throw precondition_error("simplex weights must be positive");
    }
    if (s.bound < 0) throw precondition_error("simplex bound must be nonnegative");
}

// Number of tau_k..tau_n with sum tau_i / r_i <= remaining.
Integer count_from(const std::vector<Rational>& w, std::size_t k, const Rational& remaining) {
    const Integer top = floor_of(remaining * w[k]);
    if (k + 1 == w.size()) return top + 1;
    Integer total = 0;
    for (Integer t = 0; t <= top; ++t) total += count_from(w, k + 1, remaining - Rational(t) / w[k]);
    return total;
}

std::vector<double> random_unit(std::mt19937_64& rng, int r) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        std::vector<double> u(static_cast<std::size_t>(r));
        double norm2 = 0;
        for (double& x : u) {
            x = normal(rng);
            norm2 += x * x;
        }
        if (norm2 < 1e-300) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : u) x *= inv;
        return u;
    }
}

double chord2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

Rational quadratic_form(const std::vector<std::vector<Rational>>& g, const std::vector<long>& n) {
    Rational s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0) continue;
        for (std::size_t j = 0; j < n.size(); ++j) s += g[i][j] * n[i] * n[j];
    }
    return s;
}

Interval quadratic_form(const std::vector<std::vector<Interval>>& g, const std::vector<long>& n) {
    const int prec = g.front().front().precision();
    Interval s = Interval::exact(0L, prec);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0) continue;
        for (std::size_t j = 0; j < n.size(); ++j) {
            s = s + g[i][j] * Interval::exact(Rational(n[i]) * n[j], prec);
        }
    }
    return s;
}

// Diagonal of the inverse of the (approximately) symmetric matrix, by Gauss-Jordan in doubles.
std::vector<double> inverse_diagonal(std::vector<std::vector<double>> m) {
    const std::size_t r = m.size();
    std::vector<std::vector<double>> inv(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < r; ++i) {
            if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
        }
        if (m[piv][c] == 0.0) throw precondition_error("gram matrix is singular");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        const double d = m[c][c];
        for (std::size_t j = 0; j < r; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || m[i][c] == 0.0) continue;
            const double f = m[i][c];
            for (std::size_t j = 0; j < r; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    std::vector<double> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = inv[i][i];
    return out;
}

// Exact inverse diagonal over Q.
std::vector<Rational> inverse_diagonal(std::vector<std::vector<Rational>> m) {
    const std::size_t r = m.size();
    std::vector<std::vector<Rational>> inv(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && m[piv][c] == 0) ++piv;
        if (piv == r) throw precondition_error("gram matrix is singular");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        const Rational d = m[c][c];
        for (std::size_t j = 0; j < r; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < r; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    std::vector<Rational> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = inv[i][i];
    return out;
}

constexpr double max_box_size = 5e6;

// Per-coordinate bounds |n_i| <= sqrt(R (G^-1)_ii), which contain the whole ellipsoid.
std::vector<long> box_bounds(const MordellWeilModel& model, const Rational& radius) {
    std::vector<long> bounds;
    if (model.exact_gram) {
        for (const Rational& d : inverse_diagonal(*model.exact_gram)) {
            bounds.push_back(isqrt(floor_of(radius * d)).get_si());
        }
    } else {
        std::vector<std::vector<double>> mid(model.rank(), std::vector<double>(model.rank()));
        for (std::size_t i = 0; i < model.rank(); ++i) {
            for (std::size_t j = 0; j < model.rank(); ++j) mid[i][j] = model.gram[i][j].to_double();
        }
        // The extra unit absorbs the gram error and the double-precision inversion.
        for (double d : inverse_diagonal(mid)) {
            bounds.push_back(static_cast<long>(std::floor(std::sqrt(std::max(0.0, radius.get_d() * d)))) + 1);
        }
    }
    double size = 1;
    for (long b : bounds) size *= static_cast<double>(2 * b + 1);
    if (size > max_box_size) throw precondition_error("enumeration box too large for this radius");
    return bounds;
}

void for_each_in_box(const std::vector<long>& bounds, const std::function<void(const std::vector<long>&)>& visit) {
    std::vector<long> n(bounds.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = -bounds[i];
    for (;;) {
        visit(n);
        std::size_t k = 0;
        while (k < n.size() && n[k] == bounds[k]) {
            n[k] = -bounds[k];
            ++k;
        }
        if (k == n.size()) return;
        ++n[k];
    }
}

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t r = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && m[piv][c] == 0) ++piv;
        if (piv == r) return 0;
        if (piv != c) {
            std::swap(m[c], m[piv]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < r; ++i) {
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < r; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

// Interval determinant by cofactor expansion; ranks here are small.
Interval determinant(const std::vector<std::vector<Interval>>& m) {
    const std::size_t r = m.size();
    const int prec = m.front().front().precision();
    if (r == 1) return m[0][0];
    Interval det = Interval::exact(0L, prec);
    for (std::size_t c = 0; c < r; ++c) {
        std::vector<std::vector<Interval>> minor;
        for (std::size_t i = 1; i < r; ++i) {
            std::vector<Interval> row;
            for (std::size_t j = 0; j < r; ++j) {
                if (j != c) row.push_back(m[i][j]);
            }
            minor.push_back(std::move(row));
        }
        const Interval term = m[0][c] * determinant(minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace

SimplexCount simplex_count(const WeightedSimplex& s) {
    check_weights(s);
    SimplexCount out;
    out.exact = count_from(s.weights, 0, s.bound);
    const bool integral = s.bound.get_den() == 1 &&
                          std::all_of(s.weights.begin(), s.weights.end(), [](const Rational& r) { return r.get_den() == 1; });
    if (integral) {
        Rational inverse_sum = 0;
        Integer product = 1;
        for (const Rational& r : s.weights) {
            inverse_sum += 1 / r;
            product *= r.get_num();
        }
        const Integer t = floor_of(inverse_sum);
        const Integer delta = s.bound.get_num();
        const auto n = static_cast<unsigned long>(s.weights.size());
        out.t = t;
        out.lower = product * binomial(delta + t, n);
        out.upper = product * binomial(delta + Integer(n), n);
    }
    return out;
}

Integer simplex_brute_force(const WeightedSimplex& s) {
    check_weights(s);
    std::vector<Integer> top;
    for (const Rational& r : s.weights) top.push_back(floor_of(s.bound * r));
    std::vector<Integer> tau(s.weights.size(), 0);
    Integer count = 0;
    for (;;) {
        Rational sum = 0;
        for (std::size_t i = 0; i < tau.size(); ++i) sum += Rational(tau[i]) / s.weights[i];
        if (sum <= s.bound) ++count;
        std::size_t k = 0;
        while (k < tau.size() && tau[k] == top[k]) {
            tau[k] = 0;
            ++k;
        }
        if (k == tau.size()) return count;
        ++tau[k];
    }
}

std::optional<std::size_t> ConeCover::cover_index(const std::vector<double>& u) const {
    const double limit = chord_radius * chord_radius;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (chord2(centers[i], u) < limit) return i;
    }
    return std::nullopt;
}

ConeCover cone_cover(int r, const Rational& c1, std::size_t samples, std::uint64_t seed) {
    if (r < 1) throw precondition_error("cone_cover needs r >= 1");
    if (c1 <= 1) throw precondition_error("cone_cover needs c1 > 1");
    ConeCover out;
    out.dimension = r;
    out.c1 = c1;
    const Interval cos_angle = Interval::exact(1L) - Interval::exact(Rational(1) / c1);
    const Interval angle = acos(cos_angle);
    out.angle = angle.to_double();
    const Interval chord = Interval::exact(2L) * sin(angle / Interval::exact(4L));
    // The lower end keeps the net's separation (and so the packing count) on the safe side.
    out.chord_radius = chord.lo().to_double();
    const Interval paper = pow(Interval::exact(1L) + sqrt(Interval::exact(8 * c1)), static_cast<long>(r));
    mpfr_get_z(out.bound.get_mpz_t(), paper.lo().get(), MPFR_RNDD);

    std::mt19937_64 rng(seed);
    constexpr std::size_t round_size = 100000;
    constexpr int max_rounds = 200;
    for (int round = 0; round < max_rounds; ++round) {
        std::size_t added = 0;
        for (std::size_t k = 0; k < round_size; ++k) {
            std::vector<double> u = random_unit(rng, r);
            if (!out.cover_index(u)) {
                out.centers.push_back(std::move(u));
                ++added;
            }
        }
        if (added == 0) break;
    }
    std::mt19937_64 check(seed ^ 0x9e3779b97f4a7c15ULL);
    out.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        if (!out.cover_index(random_unit(check, r))) ++out.uncovered;
    }
    return out;
}

void check_positive_definite(const std::vector<std::vector<Rational>>& gram) {
    const std::size_t r = gram.size();
    if (r == 0) throw precondition_error("gram matrix is empty");
    for (const auto& row : gram) {
        if (row.size() != r) throw precondition_error("gram matrix is not square");
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (gram[i][j] != gram[j][i]) throw precondition_error("gram matrix is not symmetric");
        }
    }
    for (std::size_t k = 1; k <= r; ++k) {
        std::vector<std::vector<Rational>> lead(k);
        for (std::size_t i = 0; i < k; ++i) lead[i].assign(gram[i].begin(), gram[i].begin() + static_cast<long>(k));
        if (determinant(lead) <= 0) throw precondition_error("gram matrix is not positive definite");
    }
}

void check_positive_definite(const std::vector<std::vector<Interval>>& gram) {
    const std::size_t r = gram.size();
    if (r == 0) throw precondition_error("gram matrix is empty");
    for (const auto& row : gram) {
        if (row.size() != r) throw precondition_error("gram matrix is not square");
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const Interval d = gram[i][j] - gram[j][i];
            if (!d.contains_zero()) throw precondition_error("gram matrix is not symmetric within its error");
        }
    }
    const Interval zero = Interval::exact(0L, gram.front().front().precision());
    for (std::size_t k = 1; k <= r; ++k) {
        std::vector<std::vector<Interval>> lead(k);
        for (std::size_t i = 0; i < k; ++i) lead[i].assign(gram[i].begin(), gram[i].begin() + static_cast<long>(k));
        if (less(zero, determinant(lead)) != Truth::yes) {
            throw precondition_error("gram matrix is not certified positive definite");
        }
    }
}

Interval minimal_nonzero_height(const MordellWeilModel& model) {
    // Every generator is a candidate, so the minimum is at most the smallest diagonal entry.
    Rational radius;
    if (model.exact_gram) {
        radius = (*model.exact_gram)[0][0];
        for (std::size_t i = 1; i < model.rank(); ++i) radius = std::min(radius, (*model.exact_gram)[i][i]);
    } else {
        Real top = model.gram[0][0].hi();
        for (std::size_t i = 1; i < model.rank(); ++i) {
            if (model.gram[i][i].hi() > top) top = model.gram[i][i].hi();
        }
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), top.get());
        radius = q;
    }
    std::optional<Interval> best;
    std::optional<Rational> best_exact;
    for_each_in_box(box_bounds(model, radius), [&](const std::vector<long>& n) {
        if (std::all_of(n.begin(), n.end(), [](long v) { return v == 0; })) return;
        if (model.exact_gram) {
            const Rational q = quadratic_form(*model.exact_gram, n);
            if (!best_exact || q < *best_exact) best_exact = q;
        } else {
            const Interval q = quadratic_form(model.gram, n);
            best = best ? min(*best, q) : q;
        }
    });
    const int prec = model.gram.front().front().precision();
    if (best_exact) return Interval::exact(*best_exact, prec);
    if (!best) throw invariant_error("no nonzero lattice vector inside the generator radius");
    return *best;
}

MordellWeilModel MordellWeilModel::synthetic(std::vector<std::vector<Rational>> gram, std::size_t torsion_count,
                                             std::optional<Rational> hmin, int precision_bits) {
    if (torsion_count < 1) throw precondition_error("torsion count must be at least 1");
    check_positive_definite(gram);
    MordellWeilModel m;
    m.torsion_count = torsion_count;
    for (const auto& row : gram) {
        std::vector<Interval> irow;
        for (const Rational& q : row) irow.push_back(Interval::exact(q, precision_bits));
        m.gram.push_back(std::move(irow));
    }
    m.exact_gram = std::move(gram);
    if (hmin) {
        if (*hmin <= 0) throw precondition_error("hmin must be positive");
        m.hmin = Interval::exact(*hmin, precision_bits);
    } else {
        m.hmin = minimal_nonzero_height(m);
    }
    return m;
}

MordellWeilModel MordellWeilModel::from_points(const WeierstrassCurve& curve, std::vector<ProjectivePoint> generators,
                                               std::vector<ProjectivePoint> torsion, const Real& tol,
                                               std::optional<Interval> hmin, int precision_bits) {
    if (generators.empty()) throw precondition_error("a model needs rank >= 1");
    const DivisionPolyCache cache(curve);
    for (const ProjectivePoint& t : torsion) {
        const NeronTateResult h = neron_tate(cache, t, tol, neron_tate_max_iterations, precision_bits);
        if (less_equal(h.enclosure(), Interval(tol, tol)) != Truth::yes && !h.torsion) {
            throw precondition_error("listed torsion point " + t.to_string() + " has positive height");
        }
    }
    if (std::none_of(torsion.begin(), torsion.end(), [](const ProjectivePoint& t) { return t.is_identity(); })) {
        torsion.insert(torsion.begin(), ProjectivePoint::identity());
    }
    MordellWeilModel m;
    m.curve = curve;
    m.torsion_count = torsion.size();
    const std::size_t r = generators.size();
    std::vector<Interval> diag;
    for (const ProjectivePoint& g : generators) {
        diag.push_back(neron_tate(cache, g, tol, neron_tate_max_iterations, precision_bits).enclosure());
    }
    m.gram.assign(r, std::vector<Interval>(r, Interval(precision_bits)));
    const Interval half = Interval::exact(Rational(1, 2), precision_bits);
    for (std::size_t i = 0; i < r; ++i) {
        m.gram[i][i] = diag[i];
        for (std::size_t j = i + 1; j < r; ++j) {
            const ProjectivePoint sum = add(curve, generators[i], generators[j]);
            const Interval hs = neron_tate(cache, sum, tol, neron_tate_max_iterations, precision_bits).enclosure();
            m.gram[i][j] = m.gram[j][i] = half * (hs - diag[i] - diag[j]);
        }
    }
    check_positive_definite(m.gram);
    m.generators = std::move(generators);
    m.torsion = std::move(torsion);
    m.hmin = hmin ? *hmin : minimal_nonzero_height(m);
    if (!(m.hmin.lo().sign() > 0)) throw precondition_error("hmin is not certified positive");
    return m;
}

Interval lattice_count_bound(std::size_t torsion_count, std::size_t rank, const Interval& radius, const Interval& hmin) {
    const int prec = radius.precision();
    const Interval one = Interval::exact(1L, prec);
    const Interval base = one + sqrt(Interval::exact(4L, prec) * radius / hmin);
    return Interval::exact(static_cast<long>(torsion_count), prec) * pow(base, static_cast<long>(rank));
}

Truth EnumerationResult::within_bound() const {
    const Interval count = Interval::exact(static_cast<long>(points.size()), bound.precision());
    return less_equal(count, bound);
}

EnumerationResult enumerate_bounded(const MordellWeilModel& model, const Rational& radius, std::optional<Real> verify_tol) {
    if (radius < 0) throw precondition_error("enumeration radius must be nonnegative");
    if (model.rank() == 0) throw precondition_error("model has rank 0");
    const int prec = model.gram.front().front().precision();
    EnumerationResult out;
    out.radius = radius;
    out.bound = lattice_count_bound(model.torsion_count, model.rank(), Interval::exact(radius, prec), model.hmin);
    const Interval r_interval = Interval::exact(radius, prec);

    std::vector<std::pair<std::vector<long>, Interval>> kept;
    for_each_in_box(box_bounds(model, radius), [&](const std::vector<long>& n) {
        if (model.exact_gram) {
            const Rational q = quadratic_form(*model.exact_gram, n);
            if (q <= radius) kept.emplace_back(n, Interval::exact(q, prec));
        } else {
            const Interval q = quadratic_form(model.gram, n);
            if (less(r_interval, q) != Truth::yes) kept.emplace_back(n, q);
        }
    });
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::optional<DivisionPolyCache> cache;
    if (model.curve) cache.emplace(*model.curve);
    for (const auto& [n, q] : kept) {
        for (std::size_t t = 0; t < model.torsion_count; ++t) {
            LatticePoint lp{n, t, q, std::nullopt, std::nullopt};
            if (model.curve && !model.torsion.empty()) {
                ProjectivePoint p = model.torsion[t];
                for (std::size_t i = 0; i < n.size(); ++i) {
                    if (n[i] != 0) p = add(*model.curve, p, scalar_mul(*cache, n[i], model.generators[i]));
                }
                lp.point = p;
                if (verify_tol) {
                    const NeronTateResult h = neron_tate(*cache, p, *verify_tol, neron_tate_max_iterations, prec);
                    const Interval limit = r_interval + Interval(*verify_tol, *verify_tol);
                    if (less(limit, h.enclosure()) == Truth::yes) {
                        throw invariant_error("enumerated point " + p.to_string() + " has hhat above the radius");
                    }
                    lp.verified = h;
                }
            }
            out.points.push_back(std::move(lp));
        }
    }
    return out;
}

bool AiSequenceReport::comparison_applies() const {
    return growth_clause == Truth::yes && first_height_clause == Truth::yes;
}

bool AiSequenceReport::a_bounds_apply() const { return ratio_clause == Truth::yes && growth_clause == Truth::yes; }

bool AiSequenceReport::difference_applies() const { return cone_clause == Truth::yes && ratio_clause == Truth::yes; }

bool AiSequenceReport::falsified() const {
    if (comparison_applies() &&
        (comparison_hhat == Truth::no || comparison_ratio == Truth::no || comparison_h == Truth::no)) {
        return true;
    }
    if (a_bounds_apply() && !(a_inverse_alpha && a_powers_of_seven && a_ratio_seven && a_square_sum && a_count)) {
        return true;
    }
    return difference_applies() && difference_bound && !*difference_bound;
}

std::vector<std::string> AiSequenceReport::violated_clauses() const {
    std::vector<std::string> out;
    if (cone_clause == Truth::no) out.emplace_back("cone");
    if (ratio_clause == Truth::no) out.emplace_back("ratio");
    if (growth_clause == Truth::no) out.emplace_back("growth");
    if (first_height_clause == Truth::no) out.emplace_back("first-height");
    return out;
}

AiSequenceReport ai_sequence(const AiSequenceInput& in) {
    const std::size_t m = in.heights.size();
    if (m < 2) throw precondition_error("ai_sequence needs m >= 2 points");
    if (in.alpha <= 0) throw precondition_error("alpha must be positive");
    for (std::size_t i = 0; i < m; ++i) {
        if (in.heights[i] <= 0) throw precondition_error("heights must be positive");
        if (i > 0 && in.heights[i] < in.heights[i - 1]) throw precondition_error("heights must be nondecreasing");
    }
    if (in.pairings) {
        if (in.pairings->size() != m) throw precondition_error("pairing matrix has the wrong size");
        for (std::size_t i = 0; i < m; ++i) {
            if ((*in.pairings)[i].size() != m || (*in.pairings)[i][i] != in.heights[i]) {
                throw precondition_error("pairing matrix must be m x m with <x_i, x_i> = hhat(x_i)");
            }
        }
    }
    if (in.naive_heights && in.naive_heights->size() != m) throw precondition_error("naive heights have the wrong size");

    const std::vector<Rational>& h = in.heights;
    const Rational& alpha = in.alpha;
    AiSequenceReport r;
    for (std::size_t i = 0; i < m; ++i) r.a.push_back(isqrt(floor_of(h[m - 1] / h[i])));

    // Cone clause: <x_i, x_j> >= (1 - alpha/4) |x_i| |x_j|.
    if (in.pairings) {
        const Rational c = 1 - alpha / 4;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = 0; j < m && ok; ++j) {
                if (i == j) continue;
                const Rational p = (*in.pairings)[i][j];
                if (c <= 0) continue;
                ok = p >= 0 && p * p >= c * c * h[i] * h[j];
            }
        }
        r.cone_clause = from_bool(ok);
    }
    // Ratio clause: sqrt(q) >= 1 + 1/sqrt(alpha) with q = hhat_m / hhat_i, squared twice.
    {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const Rational s = h[m - 1] / h[i] - 1 - 1 / alpha;
            ok = ok && s >= 0 && s * s >= 4 / alpha;
        }
        r.ratio_clause = from_bool(ok);
    }
    {
        bool ok = true;
        for (std::size_t i = 1; i < m; ++i) ok = ok && h[i] >= 49 * h[i - 1];
        r.growth_clause = from_bool(ok);
    }
    const int prec = in.eta ? in.eta->precision() : default_precision;
    if (in.eta) {
        const Interval need = Interval::exact(7L, prec) * *in.eta + Interval::exact(37L, prec);
        r.first_height_clause = less_equal(need, Interval::exact(h[0], prec));
    }

    std::vector<Rational> ah(m);
    for (std::size_t i = 0; i < m; ++i) ah[i] = Rational(r.a[i] * r.a[i]) * h[i];
    {
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) ok = ok && ah[i] * ah[i] <= 2 * ah[j] * ah[j];
        }
        r.comparison_hhat = from_bool(ok);
    }
    if (in.naive_heights) {
        const auto& nh = *in.naive_heights;
        const Interval sqrt2 = sqrt(Interval::exact(2L, prec));
        const Interval two = Interval::exact(2L, prec);
        Truth ratio = Truth::yes, weighted = Truth::yes;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                const Interval hat = Interval::exact(h[i] / h[j], prec);
                const Interval naive = nh[i] / nh[j];
                ratio = conjunction(ratio, less_equal(naive, sqrt2 * hat));
                ratio = conjunction(ratio, less_equal(hat, sqrt2 * naive));
                const Interval ai = Interval::exact(Rational(r.a[i] * r.a[i]), prec) * nh[i];
                const Interval aj = Interval::exact(Rational(r.a[j] * r.a[j]), prec) * nh[j];
                weighted = conjunction(weighted, less_equal(ai, two * aj));
            }
        }
        r.comparison_ratio = ratio;
        r.comparison_h = weighted;
    }

    r.a_inverse_alpha = r.a_powers_of_seven = r.a_ratio_seven = true;
    Integer seven_power = 1;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = m - 1 - k;  // 7^(m - i) with 1-based i
        if (r.a[i] < seven_power || seven_power < Integer(7 * static_cast<long>(k))) r.a_powers_of_seven = false;
        seven_power *= 7;
    }
    Rational square_sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i + 1 < m && Rational(r.a[i] * r.a[i]) * alpha < 1) r.a_inverse_alpha = false;
        if (i > 0 && r.a[i - 1] < 7 * r.a[i]) r.a_ratio_seven = false;
        square_sum += r.a[i] * r.a[i];
    }
    const Rational a1sq(r.a[0] * r.a[0]);
    r.a_square_sum = square_sum <= Rational(49, 48) * a1sq;
    r.a_count = Rational(static_cast<long>(m - 1)) <= Rational(49, 48) * alpha * a1sq;

    if (in.pairings) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const Rational ai(r.a[i]);
            const Rational diff = ai * ai * h[i] + h[m - 1] - 2 * ai * (*in.pairings)[i][m - 1];
            ok = ok && diff <= alpha * (ai * ai * h[i] + h[m - 1]);
        }
        r.difference_bound = ok;
    }
    return r;
}

SiegelSolution siegel_small_solution(const std::vector<std::vector<Rational>>& a, const Rational& cs, int precision_bits) {
    const std::size_t rows = a.size();
    if (rows == 0) throw precondition_error("matrix has no rows");
    const std::size_t cols = a.front().size();
    for (const auto& row : a) {
        if (row.size() != cols) throw precondition_error("matrix rows have different lengths");
    }
    if (rows >= cols) throw precondition_error("siegel_small_solution needs m < n");

    // Reduced row echelon form over Q.
    std::vector<std::vector<Rational>> m = a;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
        std::size_t piv = row;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        const Rational d = m[row][c];
        for (Rational& v : m[row]) v /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::optional<std::vector<Integer>> best;
    std::optional<LogValue> best_height;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
        std::vector<Integer> x = primitive_integer_vector(v);
        std::vector<Rational> xq(x.begin(), x.end());
        LogValue hx = tuple_height(xq, precision_bits);
        if (!best_height || hx.value < best_height->value) {
            best = std::move(x);
            best_height = std::move(hx);
        }
    }
    if (!best) throw invariant_error("no kernel vector although m < n");

    for (const auto& arow : a) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += arow[j] * (*best)[j];
        if (s != 0) throw invariant_error("kernel vector does not solve the system");
    }

    SiegelSolution out{*best, *best_height, std::nullopt, Rational(static_cast<long>(rows), static_cast<long>(cols - rows)),
                       cs, std::nullopt, Truth::unknown};
    out.dirichlet_exponent.canonicalize();
    std::vector<Rational> entries;
    for (const auto& arow : a) entries.insert(entries.end(), arow.begin(), arow.end());
    if (std::any_of(entries.begin(), entries.end(), [](const Rational& q) { return q != 0; })) {
        out.height_a = tuple_height(entries, precision_bits);
        const Interval e = Interval::exact(out.dirichlet_exponent, precision_bits);
        const Interval log_n = log(Interval::exact(static_cast<long>(cols), precision_bits));
        out.bound = e * (out.height_a->enclosure() + log_n) +
                    (Interval::exact(1L, precision_bits) + e) * Interval::exact(cs, precision_bits);
        out.satisfies_bound = less_equal(out.height_x.enclosure(), *out.bound);
    }
    return out;
}

}  // namespace ecb
