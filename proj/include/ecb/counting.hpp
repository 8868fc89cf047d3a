#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecb/curve.hpp"
#include "ecb/heights.hpp"
#include "ecb/number_core.hpp"
#include "ecb/real.hpp"

namespace ecb {

// {tau in N^n : tau_1/r_1 + ... + tau_n/r_n <= B}.
struct WeightedSimplex {
    std::vector<Rational> weights;  // r_i > 0
    Rational bound;                 // B >= 0
};

struct SimplexCount {
    Integer exact;
    // Present when every r_i and B are integers:
    // r_1...r_n C(B + T, n) <= exact <= r_1...r_n C(B + n, n) with T = floor(sum 1/r_i).
    std::optional<Integer> lower;
    std::optional<Integer> upper;
    std::optional<Integer> t;

    bool within_bounds() const { return !lower || (*lower <= exact && exact <= *upper); }
};

// Throws precondition_error for an empty weight list, a nonpositive weight or B < 0.
SimplexCount simplex_count(const WeightedSimplex& s);
// Plain nested-loop count, used as an independent check.
Integer simplex_brute_force(const WeightedSimplex& s);

// A covering of the unit sphere of R^r by caps of chord radius 2 sin(phi),
// phi = arccos(1 - 1/c1) / 4; the cones over the caps have aperture arccos(1 - 1/c1).
struct ConeCover {
    int dimension = 0;
    Rational c1;
    double angle = 0;         // arccos(1 - 1/c1)
    double chord_radius = 0;  // 2 sin(angle / 4)
    std::vector<std::vector<double>> centers;
    Integer bound;            // floor((1 + sqrt(8 c1))^r), rounded down when not certified exactly
    std::size_t samples = 0;
    std::size_t uncovered = 0;

    bool within_bound() const { return Integer(static_cast<unsigned long>(centers.size())) <= bound; }
    bool certificate_passed() const { return uncovered == 0; }
    // Index of a center within chord_radius of the unit vector u, if any.
    std::optional<std::size_t> cover_index(const std::vector<double>& u) const;
};

// Greedy chord_radius-separated net from rounds of random candidates (fixed seed),
// stopped after a round adds nothing, then checked on `samples` fresh random unit vectors.
// Throws precondition_error unless r >= 1 and c1 > 1.
ConeCover cone_cover(int r, const Rational& c1, std::size_t samples = 10000, std::uint64_t seed = 0x5eed);

// A finitely generated group sum(n_i g_i) + torsion with its Neron-Tate quadratic form.
// Either backed by an actual curve (points are computed) or synthetic (lattice data only).
struct MordellWeilModel {
    std::optional<WeierstrassCurve> curve;
    std::vector<ProjectivePoint> generators;
    std::vector<ProjectivePoint> torsion;  // includes the identity; empty for synthetic models
    std::size_t torsion_count = 1;
    // Pairings <g_i, g_j> as enclosures, and exactly when the model is synthetic.
    std::vector<std::vector<Interval>> gram;
    std::optional<std::vector<std::vector<Rational>>> exact_gram;
    Interval hmin;  // smallest nonzero hhat on the model

    std::size_t rank() const { return gram.size(); }

    // Pairings from hhat(P + Q) - hhat(P) - hhat(Q), each hhat to within `tol`.
    // Verifies that the listed torsion points have hhat <= tol and that the gram matrix is
    // certified positive definite; hmin is computed unless supplied.
    static MordellWeilModel from_points(const WeierstrassCurve& curve, std::vector<ProjectivePoint> generators,
                                        std::vector<ProjectivePoint> torsion, const Real& tol,
                                        std::optional<Interval> hmin = std::nullopt,
                                        int precision_bits = default_precision);
    static MordellWeilModel synthetic(std::vector<std::vector<Rational>> gram, std::size_t torsion_count = 1,
                                      std::optional<Rational> hmin = std::nullopt,
                                      int precision_bits = default_precision);
};

// Throws precondition_error unless the matrix is symmetric and its leading minors are
// certified positive.
void check_positive_definite(const std::vector<std::vector<Interval>>& gram);
void check_positive_definite(const std::vector<std::vector<Rational>>& gram);

// Minimum of the quadratic form over nonzero integer vectors.
Interval minimal_nonzero_height(const MordellWeilModel& model);

struct LatticePoint {
    std::vector<long> coefficients;  // n_1..n_r
    std::size_t torsion_index = 0;
    Interval height;                 // quadratic form value, exact for synthetic models
    std::optional<ProjectivePoint> point;
    std::optional<NeronTateResult> verified;  // direct Neron-Tate computation when requested
};

struct EnumerationResult {
    Rational radius;
    std::vector<LatticePoint> points;  // sorted by coefficients, then torsion index
    Interval bound;                    // #tor (1 + sqrt(4R/hmin))^r

    Truth within_bound() const;
};

// Every element whose quadratic form value is not certified to exceed R. When the model has
// a curve and `verify_tol` is set, each point is recomputed and its hhat checked directly;
// a point whose enclosure lies above R + tol raises invariant_error.
EnumerationResult enumerate_bounded(const MordellWeilModel& model, const Rational& radius,
                                    std::optional<Real> verify_tol = std::nullopt);

// #tor (1 + sqrt(4R/hmin))^r.
Interval lattice_count_bound(std::size_t torsion_count, std::size_t rank, const Interval& radius,
                             const Interval& hmin);

// Indices are 0-based (x_1 is entry 0).
struct AiSequenceInput {
    std::vector<Rational> heights;  // hhat(x_i) = |x_i|^2, positive and nondecreasing
    Rational alpha;
    // <x_i, x_j>; enables the cone clause and the difference bound.
    std::optional<std::vector<std::vector<Rational>>> pairings;
    // Weil heights h(x_i) and eta, for the fourth clause and the naive-height comparisons.
    std::optional<std::vector<Interval>> naive_heights;
    std::optional<Interval> eta;
};

struct AiSequenceReport {
    std::vector<Integer> a;
    // The four clauses of the spacing hypothesis.
    Truth cone_clause = Truth::unknown;       // cos(x_i, x_j) >= 1 - alpha/4
    Truth ratio_clause = Truth::unknown;      // |x_m|/|x_i| >= 1/sqrt(alpha) + 1
    Truth growth_clause = Truth::unknown;     // hhat(x_i) >= 49 hhat(x_{i-1})
    Truth first_height_clause = Truth::unknown;  // hhat(x_1) >= 7 eta + 37
    // Lemma inequalities, evaluated whether or not their hypotheses hold.
    Truth comparison_hhat = Truth::unknown;   // a_j^2 hhat_j / sqrt2 <= a_i^2 hhat_i <= sqrt2 a_j^2 hhat_j
    Truth comparison_ratio = Truth::unknown;  // hhat ratios against h ratios within sqrt2
    Truth comparison_h = Truth::unknown;      // a_j^2 h_j / 2 <= a_i^2 h_i <= 2 a_j^2 h_j
    bool a_inverse_alpha = false;             // a_i >= 1/sqrt(alpha), i < m
    bool a_powers_of_seven = false;           // a_i >= 7^(m-i) >= 7(m-i)
    bool a_ratio_seven = false;               // a_{i-1} >= 7 a_i
    bool a_square_sum = false;                // sum a_i^2 <= (49/48) a_1^2
    bool a_count = false;                     // m - 1 <= (49/48) alpha a_1^2
    std::optional<bool> difference_bound;     // hhat(a_i x_i - x_m) <= alpha (a_i^2 hhat_i + hhat_m)

    // Hypothesis subsets under which each lemma applies.
    bool comparison_applies() const;
    bool a_bounds_apply() const;
    bool difference_applies() const;
    // Some applicable inequality was certified false.
    bool falsified() const;
    std::vector<std::string> violated_clauses() const;
};

// a_i = floor(|x_m| / |x_i|) computed exactly; throws precondition_error on bad input.
AiSequenceReport ai_sequence(const AiSequenceInput& input);

struct SiegelSolution {
    std::vector<Integer> x;  // primitive, first nonzero entry positive
    LogValue height_x;       // Weil height of x
    std::optional<LogValue> height_a;  // Weil height of the entries of A; empty when A = 0
    Rational dirichlet_exponent;       // m / (n - m)
    Rational cs;
    std::optional<Interval> bound;     // e (h(A) + log n) + (1 + e) c_S
    Truth satisfies_bound = Truth::unknown;
};

// A nonzero integer kernel vector of the m x n matrix (m < n), taken as the smallest-height
// member of the reduced-echelon kernel basis.
SiegelSolution siegel_small_solution(const std::vector<std::vector<Rational>>& a, const Rational& cs = 0,
                                     int precision_bits = default_precision);

}  // namespace ecb
