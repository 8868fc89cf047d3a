#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecb/counting.hpp"
#include "ecb/curve.hpp"
#include "ecb/heights.hpp"
#include "ecb/number_core.hpp"
#include "ecb/poly.hpp"
#include "ecb/real.hpp"

namespace ecb {

// A positive real epsilon, given either as a rational or as e^-k with k rational.
// Comparisons against thresholds are exact when one of the two exact forms allows it.
struct Epsilon {
    std::optional<Rational> exact;     // epsilon itself
    std::optional<Rational> neg_log;   // k with epsilon = e^-k
    Interval value;
    Interval log;                      // log epsilon

    static Epsilon rational(const Rational& e, int precision_bits = default_precision);
    static Epsilon exp_minus(const Rational& k, int precision_bits = default_precision);
    // "1/1000", "1e-6", "0.001" or "exp(-2)" / "e^-2".
    static Epsilon parse(const std::string& text, int precision_bits = default_precision);
    Epsilon halved() const;
    // Recomputed from the exact form when there is one.
    Epsilon with_precision(int precision_bits) const;
    int precision() const { return value.precision(); }
    Interval abs_log() const;
    std::string to_string() const;
};

// Exact rational value of a decimal literal such as "1e-6" or "-2.5".
Rational parse_decimal(const std::string& text);

// R(m) = (2904 m)^m [ (55 eps^(-m/(m-1)) + m/eps) eta + 272 eps^(-m/(m-1)) + 2m/eps ].
Interval r_expression(int m, const Epsilon& eps, const Interval& eta);
// f(m) = (2904 m)^m a^(m/(m-1)) with a = 1/eps.
Interval f_expression(int m, const Epsilon& eps);

// floor( sqrt(2 log a / (loglog a - logloglog a + 16)) + 2 ); requires eps < 1/15788.
int choose_m0(const Epsilon& eps);
// Bracket for the real minimizer xi of log f.
struct XiBracket {
    Interval lower;   // sqrt(2 log a / (log(log a / loglog a) + 21)) + 1
    Interval upper;   // sqrt(2 log a / (log(log a / loglog a) + 16)) + 1
    Interval xi;      // bisection enclosure of the minimizer of x log(2904 x) + x/(x-1) log a
    Truth inside = Truth::unknown;
};
XiBracket xi_bracket(const Epsilon& eps);
// f(m0) <= a^(1 + 183/loglog a).
Truth f_m0_cap(const Epsilon& eps);
// R(m0) <= 56 (eta + 5) a^(1 + 183/loglog a).
Truth r_m0_cap(const Epsilon& eps, const Interval& eta);

// floor(r/4 |log eps| + 2); requires eps <= e^(-4/r).
int choose_m1(const Epsilon& eps, int r);
// S(m) = 4 eps^(-1/2) [m(m-1)(log m + 9) + m |log eps|] (499 eps^(-m/(2(m-1))))^r.
Interval s_expression(int m, const Epsilon& eps, int r);
// S(m1) <= 2 r^2 eps^(-1/2) |log eps|^2 (log r + log|log eps| + 82) (499 eps^(-1/2))^r.
Truth s_m1_cap(const Epsilon& eps, int r);
// Cone-counting bound for solutions of (I) with hhat > R(m):
// 4 eps^(-1/2) [m(m-1)(log m + 8.8) + m |log eps|] (499 eps^(-m/(2(m-1))))^r.
Interval large_height_count_bound(int m, const Epsilon& eps, int r);

struct Parameters {
    int m = 2;
    Interval eps1;   // m eps^(1/(m-1)) / 484
    Interval eps0;   // eps^(m/(m-1)) / 4000
    Interval alpha;  // eps^(m/(m-1)) / 7744
    Truth eps0_at_most_half = Truth::unknown;
    Interval first_constraint_lhs;   // (m-1)/m! (7/3)^m eps1^m / (eps0 (m + eps0) (1 + eps0)^(m-2))
    Truth first_constraint = Truth::unknown;   // lhs <= 1/2
    Interval second_constraint_ratio;  // 4m(eps0 + 2 alpha) / (eps eps1)
    Truth second_constraint = Truth::unknown;  // ratio <= 1

    bool all_hold() const {
        return eps0_at_most_half == Truth::yes && first_constraint == Truth::yes && second_constraint == Truth::yes;
    }
};
Parameters parameters(const Epsilon& eps, int m);

enum class BoundKind { t1, t2, t3, c18, c19, c20 };
BoundKind parse_bound_kind(const std::string& text);
std::string to_string(BoundKind kind);

struct BoundInputs {
    Epsilon eps;
    int rank = 1;
    Interval eta;
    std::optional<Interval> hmin;
    std::optional<Integer> torsion;
    int card_s = 1;
};

struct BoundReport {
    BoundKind kind = BoundKind::t1;
    BoundInputs inputs;
    std::optional<int> m;              // m0 or m1 where the theorem's proof fixes one
    Interval cardinal_bound;
    std::optional<Interval> shift;     // the extra term in the exponent of the system
    std::string formula_id;
};

// Throws precondition_error for r < 1, eps outside the kind's range, a negative eta,
// or (t3, c20) a missing or nonpositive hmin or torsion count < 1.
BoundReport theorem_bounds(BoundKind kind, const BoundInputs& in);

// Subset sum over T in P(S) of C(A(T) + |T| - 1, |T| - 1) fct(eps'(T), T), the empty
// set contributing fct(eps'(empty), empty) once.
struct SubsetCombinatorResult {
    Interval total;
    // sum_n C(|S|, n) 4^n = 5^|S|, times fct(eps/2); only for eps' = eps/2 and A(T) = |T|.
    std::optional<Integer> closed_factor;
};
// A(T) = ceil(eps' |T| / (eps - eps')).
Integer subset_a(const Rational& eps, const Rational& eps_prime, int card_t);
// eps_prime[mask] and fct[mask] are indexed by subsets of S as bit masks.
SubsetCombinatorResult subset_combinator_bound(int card_s, const Rational& eps, const std::vector<Rational>& eps_prime,
                                               const std::vector<Interval>& fct);
// The eps' = eps/2, A(T) = |T| specialization with a constant fct.
SubsetCombinatorResult subset_combinator_bound(int card_s, const Interval& fct);

// dist_v(x, 0) < exp(-lambda_v (eps h(x) + shift) - 2 m_v - c_v) at every v in S.
// Without a shift this is system (I); with shift R it is system (II).
struct ApproximationSystem {
    WeierstrassCurve curve;
    std::vector<Place> places;
    std::vector<Rational> weights;   // lambda_v > 0 with sum 1
    Epsilon eps;
    std::optional<Interval> shift;

    // Throws precondition_error when the data are inconsistent.
    void validate() const;
    ApproximationSystem with_shift(const Interval& r) const;
};

struct PlaceVerdict {
    Place place = Place::archimedean();
    Truth holds = Truth::unknown;
    Interval log_distance;   // lower end -inf for the identity
    Interval threshold;
};

struct SystemVerdict {
    std::vector<PlaceVerdict> places;
    Truth holds = Truth::unknown;
};

// Evaluated in interval arithmetic, raising the precision up to 1024 bits while undecided.
SystemVerdict ss_predicate(const ApproximationSystem& system, const ProjectivePoint& p);

// Q1 = D0(D(X1, X2), y) and Q2 = D2(D(X1, X2), y) over pair_variables(), where D is the
// difference family of index 3.
struct MumfordForms {
    MultiPoly q1, q2;
    std::vector<int> bidegree1, bidegree2;
};
MumfordForms mumford_aux_forms(const WeierstrassCurve& curve, const ProjectivePoint& y);

struct LocalCapCheck {
    Place place = Place::archimedean();
    LogValue value;  // h_v or l_v of {Q1, Q2}
    Interval cap;    // 8 m_v + 2 h_v(y) (+ 18 at the archimedean place)
    Truth holds = Truth::unknown;
};
// At the archimedean place, every prime with M_v > 1 and every prime dividing a coefficient
// denominator of Q1 or Q2. The cap holds trivially at all other primes.
std::vector<LocalCapCheck> mumford_local_caps(const WeierstrassCurve& curve, const ProjectivePoint& y,
                                              const MumfordForms& forms);

// Neron-Tate data of one point for the gap-principle checkers.
struct GapPoint {
    Interval hhat;
    Truth satisfies_system = Truth::unknown;  // system (I)
};

struct GapCheck {
    Truth hypotheses = Truth::unknown;
    Truth conclusion = Truth::unknown;
    std::vector<std::string> unmet;   // names of hypotheses certified false

    bool falsified() const { return hypotheses == Truth::yes && conclusion == Truth::no; }
};

// m = points.size() >= 2; pairings[i][j] = <x_i, x_j>.
GapCheck vojta_check(const std::vector<GapPoint>& points, const std::vector<std::vector<Interval>>& pairings,
                     const Epsilon& eps, const Interval& eta);
// `distinct` records whether x1 != x2.
GapCheck mumford_check(const GapPoint& x1, const GapPoint& x2, const Interval& pairing, bool distinct,
                       const Epsilon& eps, const Interval& eta);

struct CensusLine {
    std::string label;
    std::size_t count_certain = 0;   // points certified to be counted
    std::size_t count_possible = 0;  // points not certified to be excluded
    Interval bound;
    Truth within = Truth::unknown;   // count <= bound
};

struct CensusReport {
    std::size_t enumerated = 0;
    std::size_t identity_count = 0;
    std::vector<CensusLine> lines;
    // Points of height <= R(m) satisfying (II) with shift R(m), other than the identity.
    std::vector<ProjectivePoint> low_height_solutions;
    bool singleton_property = true;

    bool falsified() const;
};

// Enumerates hhat <= cap on the model and compares the solutions of the system (taken as (I))
// with the counting theorems for m = 2..m_max.
CensusReport census(const MordellWeilModel& model, const ApproximationSystem& system, const Rational& cap,
                    int m_max = 5);

}  // namespace ecb
