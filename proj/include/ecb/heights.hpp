#pragma once

#include <optional>
#include <vector>

#include "ecb/curve.hpp"
#include "ecb/division.hpp"
#include "ecb/number_core.hpp"
#include "ecb/real.hpp"

namespace ecb {

// A v-adic projective distance: an exact rational in [0, 1] with its logarithm
// (minus infinity for distance 0).
struct DistanceValue {
    Rational value;
    LogValue log;
    Place place = Place::archimedean();
};

// dist_v(p, q) = max_{i<j} |p_i q_j - p_j q_i|_v / (max_i |p_i|_v max_j |q_j|_v),
// evaluated on primitive integer representatives.
DistanceValue dist_v(const ProjectivePoint& p, const ProjectivePoint& q, const Place& v,
                     int precision_bits = default_precision);
// Distance of arbitrary nonzero coordinate triples (not necessarily on a curve).
Rational projective_distance(const std::vector<Rational>& p, const std::vector<Rational>& q, const Place& v);

// Weil height of the point: log max |primitive integer coordinate|; 0 for the identity.
LogValue naive_height(const ProjectivePoint& p, int precision_bits = default_precision);

// Constants of the comparison -lower <= h(P) - hhat(P) <= upper:
// lower = 3/4 eta + 5, upper = 3/2 eta + 8.
struct HeightBand {
    Interval lower;
    Interval upper;
};
HeightBand height_band(const WeierstrassCurve& curve, int precision_bits = default_precision);

struct NeronTateResult {
    LogValue value;         // h(2^k P) / 4^k
    int iterations = 0;     // k
    Real error_bound;       // max(3/4 eta + 5, 3/2 eta + 8) / 4^k, rounded up; 0 for detected torsion
    bool torsion = false;   // 2^j P = +-2^i P was seen for some i < j, so hhat(P) = 0 exactly

    // value +- (error_bound plus the rounding radius of value).
    Interval enclosure() const;
};

inline constexpr int neron_tate_max_iterations = 24;

// Iterates Q <- 2Q with the duplication forms until the band error falls below tol.
// Throws precondition_error for tol <= 0 and invariant_error if max_iterations is reached first.
NeronTateResult neron_tate(const DivisionPolyCache& cache, const ProjectivePoint& p, const Real& tol,
                           int max_iterations = neron_tate_max_iterations, int precision_bits = default_precision);
NeronTateResult neron_tate(const WeierstrassCurve& curve, const ProjectivePoint& p, const Real& tol,
                           int precision_bits = default_precision);

// The comparison lemma for points very close to the identity.
struct SmallCoordinateReport {
    Place place = Place::archimedean();
    Rational x, z;                      // the representative (x : 1 : z)
    Rational distance;                  // dist_v(P, 0) = max(|x|_v, |z|_v)
    Rational coordinate_cap;            // min(1, 1/|g2|_v, 1/|g3|_v)
    bool coordinates_below_cap = false; // times e^-16 at the archimedean place
    Rational delta_abs;                 // |3 g3 z^2 + 2 g2 x z + 1|_v
    bool delta_ok = false;              // = 1 (finite) or > e^-1/2 (archimedean)
    // Archimedean only: for d = 0..max_degree, sum over |alpha| = d of |(x, 1, z)^alpha|.
    std::vector<Rational> monomial_sums;
    bool monomial_sums_ok = true;       // every sum <= e

    bool all_ok() const { return coordinates_below_cap && delta_ok && monomial_sums_ok; }
};

// Throws precondition_error unless dist_v(P, 0) < exp(-2 m_v - c_v) is certified.
SmallCoordinateReport small_coordinate_estimates(const WeierstrassCurve& curve, const ProjectivePoint& p,
                                                 const Place& v, int max_degree = 20,
                                                 int precision_bits = default_precision);

}  // namespace ecb
