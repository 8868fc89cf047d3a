#pragma once

#include <random>
#include <utility>

#include "ecb/curve.hpp"
#include "ecb/errors.hpp"
#include "ecb/number_core.hpp"

namespace testsupport {

// A nonsingular curve through a chosen rational point: pick g2 and (x, y), then solve for g3.
struct CurveSample {
    ecb::WeierstrassCurve curve;
    ecb::ProjectivePoint point;
};

inline CurveSample random_curve_with_point(std::mt19937_64& rng, int coeff = 9, int coord = 5) {
    std::uniform_int_distribution<int> c(-coeff, coeff), xs(-coord, coord), ys(1, coord + 4), den(1, 3);
    for (;;) {
        const ecb::Rational g2(c(rng));
        ecb::Rational x(xs(rng), den(rng));
        x.canonicalize();
        const ecb::Rational y(ys(rng));
        const ecb::Rational g3 = 4 * x * x * x - g2 * x - y * y;
        try {
            ecb::WeierstrassCurve curve(g2, g3);
            return {curve, ecb::ProjectivePoint::affine(curve, x, y)};
        } catch (const ecb::singular_curve_error&) {
        }
    }
}

inline ecb::Rational random_rational(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
    for (;;) {
        ecb::Rational q(num(rng), den(rng));
        q.canonicalize();
        if (q != 0) return q;
    }
}

}  // namespace testsupport
