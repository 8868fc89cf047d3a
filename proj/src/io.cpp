#include "ecb/io.hpp"

#include <fstream>

#include "ecb/errors.hpp"

namespace ecb {

namespace {

const Json& require(const Json& j, const std::string& field) {
    if (!j.is_object() || !j.contains(field)) throw parse_error("missing field '" + field + "'");
    return j.at(field);
}

std::string real_text(const Real& r) { return r.to_string(20); }

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("invalid JSON in '" + path + "': " + e.what());
    }
}

Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(Integer(j.dump(), 10));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const precondition_error& e) {
            throw parse_error("field '" + field + "': " + e.what());
        }
    }
    throw parse_error("field '" + field + "' must be a rational string \"p/q\" or an integer");
}

Json to_json(const Rational& q) { return format_rational(q); }
Json to_json(const Integer& z) { return z.get_str(); }

WeierstrassCurve curve_from_json(const Json& j) {
    return WeierstrassCurve(rational_from_json(require(j, "g2"), "g2"), rational_from_json(require(j, "g3"), "g3"));
}

Json to_json(const WeierstrassCurve& curve) {
    Json out;
    out["g2"] = to_json(curve.g2());
    out["g3"] = to_json(curve.g3());
    return out;
}

ProjectivePoint point_from_json(const WeierstrassCurve& curve, const Json& j) {
    const Rational z = j.contains("z") ? rational_from_json(j.at("z"), "z") : Rational(1);
    return ProjectivePoint::on(curve, rational_from_json(require(j, "x"), "x"), rational_from_json(require(j, "y"), "y"), z);
}

Json to_json(const ProjectivePoint& p) {
    Json out;
    out["x"] = to_json(p.x());
    out["y"] = to_json(p.y());
    out["z"] = to_json(p.z());
    return out;
}

std::vector<std::vector<Rational>> matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) throw parse_error("field '" + field + "' must be an array of rows");
    std::vector<std::vector<Rational>> out;
    for (const Json& row : j) {
        if (!row.is_array()) throw parse_error("field '" + field + "' must be an array of rows");
        std::vector<Rational> r;
        for (const Json& e : row) r.push_back(rational_from_json(e, field));
        out.push_back(std::move(r));
    }
    return out;
}

MordellWeilModel model_from_json(const Json& j, const Real& tol, int precision_bits) {
    std::optional<Rational> hmin;
    if (j.contains("hmin")) hmin = rational_from_json(j.at("hmin"), "hmin");
    if (j.contains("curve")) {
        const WeierstrassCurve curve = curve_from_json(j.at("curve"));
        std::vector<ProjectivePoint> gens, torsion;
        for (const Json& g : require(j, "generators")) gens.push_back(point_from_json(curve, g));
        if (j.contains("torsion")) {
            for (const Json& t : j.at("torsion")) torsion.push_back(point_from_json(curve, t));
        }
        std::optional<Interval> h;
        if (hmin) h = Interval::exact(*hmin, precision_bits);
        return MordellWeilModel::from_points(curve, std::move(gens), std::move(torsion), tol, h, precision_bits);
    }
    std::size_t torsion_count = 1;
    if (j.contains("torsion_count")) {
        const Json& t = j.at("torsion_count");
        if (!t.is_number_integer() || t.get<long>() < 1) throw parse_error("torsion_count must be a positive integer");
        torsion_count = t.get<std::size_t>();
    }
    return MordellWeilModel::synthetic(matrix_from_json(require(j, "gram"), "gram"), torsion_count, hmin, precision_bits);
}

ApproximationSystem system_from_json(const Json& j, int precision_bits) {
    const Json& e = require(j, "epsilon");
    if (!e.is_string()) throw parse_error("epsilon must be a string");
    ApproximationSystem s{curve_from_json(require(j, "curve")), {}, {}, Epsilon::parse(e.get<std::string>(), precision_bits),
                          std::nullopt};
    for (const Json& p : require(j, "places")) {
        if (!p.is_string() && !p.is_number_integer()) throw parse_error("places must be \"inf\" or primes");
        s.places.push_back(Place::parse(p.is_string() ? p.get<std::string>() : p.dump()));
    }
    for (const Json& w : require(j, "weights")) s.weights.push_back(rational_from_json(w, "weights"));
    if (j.contains("shift")) s.shift = Interval::exact(rational_from_json(j.at("shift"), "shift"), precision_bits);
    s.validate();
    return s;
}

Json to_json(const Interval& x) {
    Json out;
    out["lo"] = real_text(x.lo());
    out["hi"] = real_text(x.hi());
    out["mid"] = real_text(x.mid());
    return out;
}

Json to_json(const LogValue& v) { return real_text(v.value); }

Json to_json(Truth t) { return to_string(t); }

Json to_json(const NeronTateResult& r) {
    Json out;
    out["value"] = to_json(r.value);
    out["error_bound"] = real_text(r.error_bound);
    out["iterations"] = r.iterations;
    out["torsion"] = r.torsion;
    return out;
}

Json to_json(const SimplexCount& c) {
    Json out;
    out["count"] = to_json(c.exact);
    if (c.lower) {
        out["lower"] = to_json(*c.lower);
        out["upper"] = to_json(*c.upper);
        out["t"] = to_json(*c.t);
    }
    out["within_bounds"] = c.within_bounds();
    return out;
}

Json to_json(const ConeCover& c, bool with_centers) {
    Json out;
    out["r"] = c.dimension;
    out["c1"] = to_json(c.c1);
    out["angle"] = c.angle;
    out["chord_radius"] = c.chord_radius;
    out["count"] = c.centers.size();
    out["bound"] = to_json(c.bound);
    out["within_bound"] = c.within_bound();
    out["samples"] = c.samples;
    out["uncovered"] = c.uncovered;
    out["certificate_passed"] = c.certificate_passed();
    if (with_centers) out["centers"] = c.centers;
    return out;
}

Json to_json(const EnumerationResult& e) {
    Json out;
    out["radius"] = to_json(e.radius);
    out["count"] = e.points.size();
    out["bound"] = to_json(e.bound);
    out["within_bound"] = to_json(e.within_bound());
    Json pts = Json::array();
    for (const LatticePoint& lp : e.points) {
        Json p;
        p["coefficients"] = lp.coefficients;
        p["torsion_index"] = lp.torsion_index;
        p["height"] = to_json(lp.height);
        if (lp.point) p["point"] = to_json(*lp.point);
        if (lp.verified) p["nt_height"] = to_json(*lp.verified);
        pts.push_back(std::move(p));
    }
    out["points"] = std::move(pts);
    return out;
}

Json to_json(const SiegelSolution& s) {
    Json out;
    Json x = Json::array();
    for (const Integer& v : s.x) x.push_back(to_json(v));
    out["x"] = std::move(x);
    out["height_x"] = to_json(s.height_x);
    if (s.height_a) out["height_a"] = to_json(*s.height_a);
    out["exponent"] = to_json(s.dirichlet_exponent);
    out["cs"] = to_json(s.cs);
    if (s.bound) out["bound"] = to_json(*s.bound);
    out["satisfies_bound"] = to_json(s.satisfies_bound);
    return out;
}

Json to_json(const BoundReport& r) {
    Json out;
    out["kind"] = to_string(r.kind);
    out["formula"] = r.formula_id;
    out["epsilon"] = r.inputs.eps.to_string();
    out["rank"] = r.inputs.rank;
    out["eta"] = to_json(r.inputs.eta);
    out["card_s"] = r.inputs.card_s;
    if (r.m) out["m"] = *r.m;
    out["bound"] = to_json(r.cardinal_bound);
    if (r.shift) out["shift"] = to_json(*r.shift);
    return out;
}

Json to_json(const Parameters& p) {
    Json out;
    out["m"] = p.m;
    out["eps1"] = to_json(p.eps1);
    out["eps0"] = to_json(p.eps0);
    out["alpha"] = to_json(p.alpha);
    out["eps0_at_most_half"] = to_json(p.eps0_at_most_half);
    out["first_constraint_lhs"] = to_json(p.first_constraint_lhs);
    out["first_constraint"] = to_json(p.first_constraint);
    out["second_constraint_ratio"] = to_json(p.second_constraint_ratio);
    out["second_constraint"] = to_json(p.second_constraint);
    out["all_hold"] = p.all_hold();
    return out;
}

Json to_json(const SystemVerdict& v) {
    Json out;
    out["holds"] = to_json(v.holds);
    Json places = Json::array();
    for (const PlaceVerdict& p : v.places) {
        Json e;
        e["place"] = p.place.name();
        e["holds"] = to_json(p.holds);
        e["log_distance"] = to_json(p.log_distance);
        e["threshold"] = to_json(p.threshold);
        places.push_back(std::move(e));
    }
    out["places"] = std::move(places);
    return out;
}

Json to_json(const CensusReport& r) {
    Json out;
    out["enumerated"] = r.enumerated;
    out["identity_count"] = r.identity_count;
    Json lines = Json::array();
    for (const CensusLine& l : r.lines) {
        Json e;
        e["label"] = l.label;
        e["count_certain"] = l.count_certain;
        e["count_possible"] = l.count_possible;
        e["bound"] = to_json(l.bound);
        e["within"] = to_json(l.within);
        lines.push_back(std::move(e));
    }
    out["lines"] = std::move(lines);
    Json low = Json::array();
    for (const ProjectivePoint& p : r.low_height_solutions) low.push_back(to_json(p));
    out["low_height_solutions"] = std::move(low);
    out["singleton_property"] = r.singleton_property;
    out["falsified"] = r.falsified();
    return out;
}

}  // namespace ecb
