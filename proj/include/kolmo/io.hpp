#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kolmo/applications.hpp"
#include "kolmo/kolmogorov.hpp"

namespace kolmo::io {

using json = nlohmann::ordered_json;

// ---- stable record schemas (documented in the README) ---------------------

json to_json(const PerfectSpline& s);
PerfectSpline spline_from_json(const json& j);

json to_json(const AtomicMeasure& m);
json to_json(const Classification& c);
json to_json(const AdmissibilityReport& r);

json to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const json& j);  // unknown fields rejected

/// One problem of a problem file: a command plus its inputs. A file holds a
/// single problem object or an array of them.
struct Problem {
    std::string command;  // check | witness | represent | canonical | interpolate |
                          // moment-bound | extremal-dist | family-sample | norms
    FunctionClass cls = FunctionClass::CM;
    int r = 1;
    std::vector<int> orders;
    std::vector<double> values;
    bool recursive = false;           // check
    std::optional<double> t_star;     // canonical
    std::optional<int> p;             // moment-bound
    std::optional<double> a;          // extremal-dist
    std::optional<int> count;         // family-sample
    std::optional<std::uint64_t> seed;
    std::optional<json> spline;       // norms
    std::optional<SolverConfig> config;
};

Problem problem_from_json(const json& j);  // unknown fields rejected
std::vector<Problem> parse_problems(const std::string& text);

/// Executes one problem and returns its report (no wall-time field; the CLI
/// adds it). Throws kolmo::Error for invalid input or solver failure;
/// inadmissible/outside answers are valid reports, not errors.
json run_problem(const Problem& problem, const SolverConfig& defaults);

/// 0 = valid answer, 1 = input error, 2 = solver failure.
int exit_code_for(errc code);

}  // namespace kolmo::io
