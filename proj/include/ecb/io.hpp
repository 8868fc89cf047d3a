#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ecb/bounds.hpp"
#include "ecb/counting.hpp"
#include "ecb/curve.hpp"
#include "ecb/heights.hpp"
#include "ecb/number_core.hpp"
#include "ecb/real.hpp"

namespace ecb {

using Json = nlohmann::ordered_json;

// Reads and parses a JSON file; throws parse_error on I/O or syntax errors.
Json read_json_file(const std::string& path);

// Rationals are JSON strings "p/q" (or "p"), or JSON integers. Decimals are rejected.
Rational rational_from_json(const Json& j, const std::string& field);
Json to_json(const Rational& q);
Json to_json(const Integer& z);

// {"g2": "p/q", "g3": "p/q"}
WeierstrassCurve curve_from_json(const Json& j);
Json to_json(const WeierstrassCurve& curve);

// {"x": "...", "y": "...", "z": "..."} ("z" defaults to 1); validated against the curve.
ProjectivePoint point_from_json(const WeierstrassCurve& curve, const Json& j);
Json to_json(const ProjectivePoint& p);

// Curve-backed: {"curve": {...}, "generators": [...], "torsion": [...], "hmin"?: "p/q"}.
// Synthetic: {"gram": [["p/q", ...], ...], "torsion_count"?: n, "hmin"?: "p/q"}.
MordellWeilModel model_from_json(const Json& j, const Real& tol, int precision_bits = default_precision);

// {"curve": {...}, "places": ["inf", "2"], "weights": ["1/2", "1/2"], "epsilon": "1/1000",
//  "shift"?: "p/q"}. Epsilon accepts the forms of Epsilon::parse.
ApproximationSystem system_from_json(const Json& j, int precision_bits = default_precision);

// Intervals are written as {"lo": ..., "hi": ..., "mid": ...} with decimal strings.
Json to_json(const Interval& x);
Json to_json(const LogValue& v);
Json to_json(Truth t);
Json to_json(const NeronTateResult& r);
Json to_json(const SimplexCount& c);
Json to_json(const ConeCover& c, bool with_centers = false);
Json to_json(const EnumerationResult& e);
Json to_json(const SiegelSolution& s);
Json to_json(const BoundReport& r);
Json to_json(const Parameters& p);
Json to_json(const SystemVerdict& v);
Json to_json(const CensusReport& r);

// Reads a matrix of rationals: [["1", "2/3"], ...].
std::vector<std::vector<Rational>> matrix_from_json(const Json& j, const std::string& field);

}  // namespace ecb
