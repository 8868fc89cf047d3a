// Command-line front end: curve arithmetic, heights, counting tools and bound evaluation.
// Every subcommand prints a readable report, or stable JSON with --json.
// Exit codes: 0 success, 2 precondition or input error, 3 internal invariant failure.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecb/bounds.hpp"
#include "ecb/counting.hpp"
#include "ecb/curve.hpp"
#include "ecb/division.hpp"
#include "ecb/errors.hpp"
#include "ecb/heights.hpp"
#include "ecb/io.hpp"
#include "ecb/series.hpp"

namespace {

using ecb::Json;

void print_text(const Json& j, int indent, std::ostream& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        const bool is_interval = v.is_object() && v.contains("mid") && v.size() == 3;
        if (is_interval) {
            out << pad << it.key() << ": " << v["mid"].get<std::string>() << "  [" << v["lo"].get<std::string>() << ", "
                << v["hi"].get<std::string>() << "]\n";
        } else if (v.is_object()) {
            out << pad << it.key() << ":\n";
            print_text(v, indent + 2, out);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << pad << it.key() << ":\n";
            for (const Json& e : v) {
                out << pad << "  -\n";
                print_text(e, indent + 4, out);
            }
        } else {
            out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

struct Output {
    bool json = false;

    void emit(const Json& j) const {
        if (json) std::cout << j.dump(2) << "\n";
        else print_text(j, 0, std::cout);
    }
};

ecb::WeierstrassCurve load_curve(const std::string& path) { return ecb::curve_from_json(ecb::read_json_file(path)); }

ecb::ProjectivePoint load_point(const ecb::WeierstrassCurve& curve, const std::string& path) {
    return ecb::point_from_json(curve, ecb::read_json_file(path));
}

ecb::Real parse_tolerance(const std::string& text) {
    const ecb::Rational t = text.find('/') != std::string::npos ? ecb::parse_rational(text) : ecb::parse_decimal(text);
    if (t <= 0) throw ecb::precondition_error("tolerance must be positive");
    return ecb::Real::from_rational(t, ecb::default_precision, MPFR_RNDD);
}

std::vector<ecb::Rational> parse_list(const std::string& text) {
    std::vector<ecb::Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(ecb::parse_rational(item));
    return out;
}

ecb::Json place_map(const ecb::WeierstrassCurve& curve) {
    Json places = Json::object();
    for (const ecb::Place& v : curve.bad_places()) places[v.name()] = ecb::to_json(curve.m(v));
    return places;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit bounds and exact arithmetic on Weierstrass elliptic curves"};
    app.require_subcommand(1);
    Output output;
    app.add_flag("--json", output.json, "Print machine-readable JSON");

    std::string curve_file, p_file, q_file, model_file, system_file, matrix_file;
    std::string tol_text = "1/1000", place_text = "inf", weights_text, bound_text, c1_text, cap_text, radius_text;
    std::string kind_text, eps_text, eta_text, hmin_text, cs_text = "0";
    long n = 1;
    int order = 4, rank = 1, m = 2, card_s = 1, m_max = 5;
    long torsion = 1;
    std::size_t samples = 10000;
    bool symbolic = false, centers = false, verify = false;

    auto* info = app.add_subcommand("info", "Curve invariants, eta and m_v at the bad places");
    info->add_option("--curve", curve_file, "Curve JSON file")->required();

    auto* add = app.add_subcommand("add", "P + Q");
    auto* sub = app.add_subcommand("sub", "P - Q");
    for (auto* c : {add, sub}) {
        c->add_option("--curve", curve_file)->required();
        c->add_option("--p", p_file)->required();
        c->add_option("--q", q_file)->required();
    }
    auto* neg = app.add_subcommand("neg", "-P");
    neg->add_option("--curve", curve_file)->required();
    neg->add_option("--p", p_file)->required();
    auto* mul = app.add_subcommand("mul", "nP through the multiplication forms");
    mul->add_option("--curve", curve_file)->required();
    mul->add_option("--p", p_file)->required();
    mul->add_option("-n", n, "Multiplier")->required();

    auto* height = app.add_subcommand("height", "Weil height of P");
    height->add_option("--curve", curve_file)->required();
    height->add_option("--p", p_file)->required();
    auto* nt = app.add_subcommand("nt-height", "Neron-Tate height of P by repeated doubling");
    nt->add_option("--curve", curve_file)->required();
    nt->add_option("--p", p_file)->required();
    nt->add_option("--tol", tol_text, "Error tolerance (default 1/1000)");
    auto* dist = app.add_subcommand("dist", "Projective v-adic distance of P and Q");
    dist->add_option("--curve", curve_file)->required();
    dist->add_option("--p", p_file)->required();
    dist->add_option("--q", q_file)->required();
    dist->add_option("--place", place_text, "inf or a prime");

    auto* series = app.add_subcommand("series", "Local parametrization coefficients and their residual check");
    series->add_option("--order", order, "Truncation order T")->required();
    series->add_flag("--symbolic", symbolic, "Keep g2, g3 symbolic");
    series->add_option("--curve", curve_file, "Curve JSON file (required unless --symbolic)");

    auto* simplex = app.add_subcommand("simplex", "Lattice points of a weighted simplex");
    simplex->add_option("--weights", weights_text, "r1,r2,...")->required();
    simplex->add_option("--bound", bound_text, "B")->required();
    auto* cones = app.add_subcommand("cones", "Cone cover of R^r with its covering certificate");
    cones->add_option("-r", rank, "Dimension")->required();
    cones->add_option("--c1", c1_text, "c1 > 1")->required();
    cones->add_option("--samples", samples, "Certificate samples");
    cones->add_flag("--centers", centers, "Include the cap centres");

    auto* enumerate = app.add_subcommand("enumerate", "Points of hhat <= R on a Mordell-Weil model");
    enumerate->add_option("--model", model_file)->required();
    enumerate->add_option("--max-nth", radius_text, "R")->required();
    enumerate->add_option("--tol", tol_text, "Neron-Tate tolerance for curve models");
    enumerate->add_flag("--verify", verify, "Recompute hhat of every point directly");
    auto* siegel = app.add_subcommand("siegel", "Small integer solution of A x = 0");
    siegel->add_option("--matrix", matrix_file, "JSON matrix file")->required();
    siegel->add_option("--cs", cs_text, "Field constant c_S");

    auto* bounds = app.add_subcommand("bounds", "Cardinality bound of a counting theorem");
    bounds->add_option("--kind", kind_text, "t1, t2, t3, c18, c19 or c20")->required();
    bounds->add_option("--epsilon", eps_text)->required();
    bounds->add_option("--rank", rank)->required();
    bounds->add_option("--eta", eta_text, "eta, when no curve is given");
    bounds->add_option("--curve", curve_file, "Curve JSON; eta is computed from it");
    bounds->add_option("--hmin", hmin_text);
    bounds->add_option("--tor", torsion);
    bounds->add_option("--cardS", card_s);
    auto* params = app.add_subcommand("params", "Parameters eps1, eps0, alpha and their constraints");
    params->add_option("--epsilon", eps_text)->required();
    params->add_option("-m", m)->required();

    auto* census_cmd = app.add_subcommand("census", "Compare solutions of a system with the counting theorems");
    census_cmd->add_option("--model", model_file)->required();
    census_cmd->add_option("--system", system_file)->required();
    census_cmd->add_option("--cap", cap_text, "Height cap")->required();
    census_cmd->add_option("--tol", tol_text, "Neron-Tate tolerance");
    census_cmd->add_option("--m-max", m_max, "Largest m for the R(m) split");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Json out;
        if (*info) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            out["g2"] = ecb::to_json(curve.g2());
            out["g3"] = ecb::to_json(curve.g3());
            out["discriminant"] = ecb::to_json(curve.discriminant());
            out["eta"] = ecb::to_json(curve.eta());
            out["places"] = place_map(curve);
        } else if (*add || *sub) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            const ecb::ProjectivePoint p = load_point(curve, p_file), q = load_point(curve, q_file);
            out = ecb::to_json(*add ? ecb::add(curve, p, q) : ecb::sub(curve, p, q));
        } else if (*neg) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            out = ecb::to_json(ecb::negate(load_point(curve, p_file)));
        } else if (*mul) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            const ecb::DivisionPolyCache cache(curve);
            out = ecb::to_json(ecb::scalar_mul(cache, n, load_point(curve, p_file)));
        } else if (*height) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            out["value"] = ecb::to_json(ecb::naive_height(load_point(curve, p_file)));
        } else if (*nt) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            out = ecb::to_json(ecb::neron_tate(curve, load_point(curve, p_file), parse_tolerance(tol_text)));
        } else if (*dist) {
            const ecb::WeierstrassCurve curve = load_curve(curve_file);
            const ecb::DistanceValue d =
                ecb::dist_v(load_point(curve, p_file), load_point(curve, q_file), ecb::Place::parse(place_text));
            out["place"] = d.place.name();
            out["value"] = ecb::to_json(d.value);
            out["log"] = ecb::to_json(d.log);
        } else if (*series) {
            if (!symbolic && curve_file.empty()) throw ecb::precondition_error("series needs --curve or --symbolic");
            const ecb::SeriesCoefficients s =
                symbolic ? ecb::dz_coefficients_symbolic(order) : ecb::dz_coefficients(load_curve(curve_file), order);
            out["order"] = order;
            out["variables"] = s.variables;
            out["delta"] = s.delta.to_string();
            Json dz = Json::array();
            for (const ecb::MultiPoly& p : s.dz) dz.push_back(p.to_string());
            out["dz"] = std::move(dz);
            out["residual_order"] = ecb::verify_parametrization(s).residual_order();
        } else if (*simplex) {
            out = ecb::to_json(ecb::simplex_count(ecb::WeightedSimplex{parse_list(weights_text), ecb::parse_rational(bound_text)}));
        } else if (*cones) {
            out = ecb::to_json(ecb::cone_cover(rank, ecb::parse_rational(c1_text), samples), centers);
        } else if (*enumerate) {
            const ecb::Real tol = parse_tolerance(tol_text);
            const ecb::MordellWeilModel model = ecb::model_from_json(ecb::read_json_file(model_file), tol);
            std::optional<ecb::Real> verify_tol;
            if (verify) verify_tol = tol;
            out = ecb::to_json(ecb::enumerate_bounded(model, ecb::parse_rational(radius_text), verify_tol));
        } else if (*siegel) {
            const Json j = ecb::read_json_file(matrix_file);
            const Json& rows = j.is_object() ? j.at("matrix") : j;
            out = ecb::to_json(ecb::siegel_small_solution(ecb::matrix_from_json(rows, "matrix"), ecb::parse_rational(cs_text)));
        } else if (*bounds) {
            ecb::BoundInputs in{ecb::Epsilon::parse(eps_text), rank, ecb::Interval::exact(0L), std::nullopt, std::nullopt,
                                card_s};
            if (!curve_file.empty() && !eta_text.empty()) throw ecb::precondition_error("give either --curve or --eta");
            if (!curve_file.empty()) in.eta = load_curve(curve_file).eta().enclosure();
            else if (!eta_text.empty()) in.eta = ecb::Interval::exact(ecb::parse_rational(eta_text));
            if (!hmin_text.empty()) in.hmin = ecb::Interval::exact(ecb::parse_rational(hmin_text));
            if (bounds->count("--tor") > 0) in.torsion = ecb::Integer(torsion);
            out = ecb::to_json(ecb::theorem_bounds(ecb::parse_bound_kind(kind_text), in));
        } else if (*params) {
            out = ecb::to_json(ecb::parameters(ecb::Epsilon::parse(eps_text), m));
        } else if (*census_cmd) {
            const ecb::MordellWeilModel model =
                ecb::model_from_json(ecb::read_json_file(model_file), parse_tolerance(tol_text));
            const ecb::ApproximationSystem system = ecb::system_from_json(ecb::read_json_file(system_file));
            out = ecb::to_json(ecb::census(model, system, ecb::parse_rational(cap_text), m_max));
        }
        output.emit(out);
        return 0;
    } catch (const ecb::invariant_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const ecb::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ecb::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
