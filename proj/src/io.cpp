#include "kolmo/io.hpp"

#include <algorithm>
#include <set>

#include "kolmo/moment_cone.hpp"

namespace kolmo::io {

namespace {

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    if (!j.is_object()) fail(errc::parse_error, where + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key))
            fail(errc::parse_error, "unknown field \"" + key + "\" in " + where);
}

FunctionClass class_from_string(const std::string& s) {
    if (s == "cm") return FunctionClass::CM;
    if (s == "mm") return FunctionClass::MM;
    fail(errc::parse_error, "class must be \"cm\" or \"mm\", got \"" + s + "\"");
}

const char* class_name(FunctionClass c) { return c == FunctionClass::CM ? "cm" : "mm"; }

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(errc::parse_error, where + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(errc::parse_error, where + " must be finite");
    return v;
}

}  // namespace

json to_json(const PerfectSpline& s) {
    return json{{"class", class_name(s.cls)},
                {"r", s.r},
                {"knots", s.knots},
                {"weights", s.weights},
                {"constant", s.constant}};
}

PerfectSpline spline_from_json(const json& j) {
    reject_unknown_fields(j, {"class", "r", "knots", "weights", "constant"}, "spline record");
    PerfectSpline s;
    s.cls = class_from_string(j.at("class").get<std::string>());
    s.r = j.at("r").get<int>();
    s.knots = j.at("knots").get<std::vector<double>>();
    s.weights = j.at("weights").get<std::vector<double>>();
    s.constant = j.value("constant", 0.0);
    return validate_spline(std::move(s));
}

json to_json(const AtomicMeasure& m) {
    json atoms = json::array();
    for (const Atom& a : m.atoms) atoms.push_back(json{{"position", a.position}, {"mass", a.mass}});
    return json{{"atoms", std::move(atoms)}};
}

json to_json(const Classification& c) {
    json j{{"status", membership_name(c.status)}};
    if (c.witness) j["witness"] = to_json(*c.witness);
    if (c.index) j["index"] = c.index->value();
    return j;
}

json to_json(const AdmissibilityReport& r) {
    json j{{"status", admissibility_name(r.status)}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (r.knot_count) j["knot_count"] = r.knot_count->value();
    j["recursion_trace"] = r.recursion_trace;
    return j;
}

json to_json(const SolverConfig& cfg) {
    return json{{"feasibility_tol", cfg.feasibility_tol},
                {"newton_tol", cfg.newton_tol},
                {"newton_max_iter", cfg.newton_max_iter},
                {"boundary_band", cfg.boundary_band},
                {"grid", json{{"u_min", cfg.grid.u_min},
                              {"u_max", cfg.grid.u_max},
                              {"points", cfg.grid.points},
                              {"include_zero", cfg.grid.include_zero}}}};
}

SolverConfig config_from_json(const json& j) {
    reject_unknown_fields(
        j, {"feasibility_tol", "newton_tol", "newton_max_iter", "boundary_band", "grid"},
        "solver config");
    SolverConfig cfg;
    cfg.feasibility_tol = j.value("feasibility_tol", cfg.feasibility_tol);
    cfg.newton_tol = j.value("newton_tol", cfg.newton_tol);
    cfg.newton_max_iter = j.value("newton_max_iter", cfg.newton_max_iter);
    cfg.boundary_band = j.value("boundary_band", cfg.boundary_band);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown_fields(g, {"u_min", "u_max", "points", "include_zero"}, "grid config");
        cfg.grid.u_min = g.value("u_min", cfg.grid.u_min);
        cfg.grid.u_max = g.value("u_max", cfg.grid.u_max);
        cfg.grid.points = g.value("points", cfg.grid.points);
        cfg.grid.include_zero = g.value("include_zero", cfg.grid.include_zero);
    }
    validate_config(cfg);
    return cfg;
}

Problem problem_from_json(const json& j) {
    reject_unknown_fields(j,
                          {"command", "class", "r", "orders", "values", "recursive", "t_star", "p",
                           "A", "count", "seed", "spline", "config"},
                          "problem");
    Problem p;
    if (!j.contains("command")) fail(errc::parse_error, "problem is missing \"command\"");
    p.command = j.at("command").get<std::string>();
    static const std::set<std::string> commands{"check",       "witness",       "represent",
                                                "canonical",   "interpolate",   "moment-bound",
                                                "extremal-dist", "family-sample", "norms"};
    if (!commands.contains(p.command)) fail(errc::parse_error, "unknown command " + p.command);

    if (j.contains("class")) p.cls = class_from_string(j.at("class").get<std::string>());
    if (j.contains("r")) p.r = j.at("r").get<int>();
    if (j.contains("orders")) p.orders = j.at("orders").get<std::vector<int>>();
    if (j.contains("values")) {
        for (const json& v : j.at("values")) finite_number(v, "values");
        p.values = j.at("values").get<std::vector<double>>();
    }
    p.recursive = j.value("recursive", false);
    if (j.contains("t_star")) p.t_star = finite_number(j.at("t_star"), "t_star");
    if (j.contains("p")) p.p = j.at("p").get<int>();
    if (j.contains("A")) p.a = finite_number(j.at("A"), "A");
    if (j.contains("count")) p.count = j.at("count").get<int>();
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("spline")) p.spline = j.at("spline");
    if (j.contains("config")) p.config = config_from_json(j.at("config"));
    return p;
}

std::vector<Problem> parse_problems(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
    std::vector<Problem> out;
    if (j.is_array()) {
        for (const json& item : j) out.push_back(problem_from_json(item));
    } else {
        out.push_back(problem_from_json(j));
    }
    return out;
}

namespace {

json input_echo(const Problem& p) {
    json in{{"command", p.command},
            {"class", class_name(p.cls)},
            {"r", p.r},
            {"orders", p.orders},
            {"values", p.values}};
    if (p.recursive) in["recursive"] = true;
    if (p.t_star) in["t_star"] = *p.t_star;
    if (p.p) in["p"] = *p.p;
    if (p.a) in["A"] = *p.a;
    if (p.count) in["count"] = *p.count;
    if (p.seed) in["seed"] = *p.seed;
    return in;
}

MomentVector moments_of_problem(const Problem& p) {
    return validate_moments(p.values, validate_exponents(p.orders, p.r));
}

// Residual of a witness spline against the prescribed values, in the class
// of the query.
double witness_residual(const PerfectSpline& s, const MomentVector& m) {
    MomentVector got = norms(s, m.exponents);
    double scale = std::max(m.max_abs(), 1e-300);
    double res = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        res = std::max(res, std::abs(got.values[i] - m.values[i]) / scale);
    return res;
}

}  // namespace

json run_problem(const Problem& p, const SolverConfig& defaults) {
    const SolverConfig cfg = p.config ? *p.config : defaults;
    json report{{"input", input_echo(p)}};
    json diagnostics{{"grid_points", cfg.grid.points},
                     {"feasibility_tol", cfg.feasibility_tol},
                     {"newton_tol", cfg.newton_tol},
                     {"boundary_band", cfg.boundary_band}};

    auto handle_valid_answer = [&](const Error& e) -> bool {
        // "no such object exists" is an answer, not a failure
        if (e.code() == errc::not_admissible) {
            report["status"] = "not_admissible";
        } else if (e.code() == errc::not_interior) {
            report["status"] = "not_interior";
        } else {
            return false;
        }
        report["message"] = e.what();
        return true;
    };

    try {
        if (p.command == "check") {
            MomentVector m = moments_of_problem(p);
            AdmissibilityReport r =
                p.recursive ? check_recursive(p.cls, m, cfg) : check_admissible(p.cls, m, cfg);
            report["status"] = admissibility_name(r.status);
            diagnostics["newton_iterations"] = r.iterations;
            if (r.witness) {
                report["witness"] = to_json(*r.witness);
                report["knot_count"] = r.knot_count->value();
                report["residual"] = witness_residual(*r.witness, m);
            }
            if (!r.recursion_trace.empty()) report["recursion_trace"] = r.recursion_trace;
        } else if (p.command == "witness") {
            MomentVector m = moments_of_problem(p);
            PerfectSpline s = witness_spline(p.cls, m, cfg);
            report["status"] = "ok";
            report["witness"] = to_json(s);
            report["knot_count"] = s.knot_count().value();
            report["residual"] = witness_residual(s, m);
        } else if (p.command == "represent" || p.command == "canonical") {
            MomentVector m = moments_of_problem(p);
            MomentVector plain = (p.cls == FunctionClass::MM)
                                     ? class_transfer(m, TransferDirection::MMtoCM)
                                     : m;
            AtomicMeasure measure;
            if (p.command == "represent") {
                measure = principal_representation(plain, cfg);
            } else {
                if (!p.t_star) fail(errc::parse_error, "canonical needs t_star");
                measure = canonical_representation(plain, *p.t_star, cfg);
            }
            report["status"] = "ok";
            report["measure"] = to_json(measure);
            report["index"] = index_of(measure).value();
            report["residual"] = moment_residual(measure, plain);
        } else if (p.command == "interpolate") {
            MomentVector m = moments_of_problem(p);
            InterpolantResult r = smoothest_interpolant(p.cls, m, cfg);
            report["status"] = "ok";
            report["witness"] = to_json(r.spline);
            report["minimal_r_norm"] = r.minimal_r_norm;
            report["residual"] = witness_residual(r.spline, m);
        } else if (p.command == "moment-bound") {
            MomentVector m = moments_of_problem(p);
            if (!p.p) fail(errc::parse_error, "moment-bound needs p");
            MomentBoundResult r = intermediate_moment_bound(p.cls, m, *p.p, cfg);
            report["status"] = "ok";
            report["bound"] = r.bound;
            report["direction"] = direction_name(r.direction);
            report["witness"] = to_json(r.spline);
        } else if (p.command == "extremal-dist") {
            MomentVector m = moments_of_problem(p);
            if (!p.a) fail(errc::parse_error, "extremal-dist needs A");
            ExtremalDistributionResult r = extremal_distribution(m, *p.a, cfg);
            report["status"] = "ok";
            report["witness"] = to_json(r.spline);
            report["max_prob"] = r.max_prob;
        } else if (p.command == "family-sample") {
            ExponentVector k = validate_exponents(p.orders, p.r);
            if (!p.count) fail(errc::parse_error, "family-sample needs count");
            std::vector<PerfectSpline> family =
                extremal_family_sample(p.cls, k, *p.count, p.seed.value_or(0));
            report["status"] = "ok";
            json arr = json::array();
            for (const PerfectSpline& s : family) arr.push_back(to_json(s));
            report["splines"] = std::move(arr);
        } else if (p.command == "norms") {
            if (!p.spline) fail(errc::parse_error, "norms needs a spline record");
            PerfectSpline s = spline_from_json(*p.spline);
            ExponentVector k = validate_exponents(p.orders, s.r);
            MomentVector v = norms(s, k);
            report["status"] = "ok";
            report["values"] = v.values;
        }
    } catch (const Error& e) {
        if (!handle_valid_answer(e)) throw;
    }
    report["diagnostics"] = std::move(diagnostics);
    return report;
}

int exit_code_for(errc code) {
    switch (code) {
        case errc::newton_diverged:
        case errc::degenerate_root:
        case errc::reduction_failed:
        case errc::non_unique_within_tolerance:
            return 2;
        default:
            return 1;
    }
}

}  // namespace kolmo::io
