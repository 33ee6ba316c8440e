// Command-line front end: runs single problems from flags or batches from a
// problem file, printing one JSON report per problem. Exit codes: 0 for any
// valid answer (including not_admissible / outside), 1 for input errors,
// 2 for solver failures.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kolmo/batch.hpp"
#include "kolmo/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using kolmo::io::json;

struct CommonFlags {
    std::string cls = "cm";
    int r = 1;
    std::vector<int> orders;
    std::vector<double> values;
    std::string config_path;
    std::string file_path;
};

kolmo::SolverConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) kolmo::fail(kolmo::errc::parse_error, "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return kolmo::io::config_from_json(json::parse(ss.str(), nullptr, true, true));
}

kolmo::io::Problem problem_from_flags(const std::string& command, const CommonFlags& flags) {
    json j{{"command", command},
           {"class", flags.cls},
           {"r", flags.r},
           {"orders", flags.orders},
           {"values", flags.values}};
    return kolmo::io::problem_from_json(j);
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

int run_one(kolmo::io::Problem problem, const kolmo::SolverConfig& cfg) {
    double t0 = now_ms();
    json report;
    int code = 0;
    try {
        report = kolmo::io::run_problem(problem, cfg);
    } catch (const kolmo::Error& e) {
        std::cerr << e.what() << "\n";
        return kolmo::io::exit_code_for(e.code());
    }
    report["wall_time_ms"] = now_ms() - t0;
    std::cout << report.dump(2) << "\n";
    return code;
}

int run_file(const std::string& path, const kolmo::SolverConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open problem file " << path << "\n";
        return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<kolmo::io::Problem> problems = kolmo::io::parse_problems(ss.str());

    // Batch items run concurrently; reports are assembled in input order.
    double t0 = now_ms();
    std::vector<json> reports(problems.size());
    std::vector<int> codes(problems.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(problems.size()); ++i) {
        auto idx = static_cast<std::size_t>(i);
        try {
            reports[idx] = kolmo::io::run_problem(problems[idx], cfg);
        } catch (const kolmo::Error& e) {
            reports[idx] = json{{"input", json{{"command", problems[idx].command}}},
                                {"status", "error"},
                                {"error", json{{"code", kolmo::errc_name(e.code())},
                                               {"message", e.what()}}}};
            codes[idx] = kolmo::io::exit_code_for(e.code());
        }
    }
    json out = json::array();
    for (json& r : reports) out.push_back(std::move(r));
    json wrapper{{"problems", std::move(out)}, {"wall_time_ms", now_ms() - t0}};
    std::cout << wrapper.dump(2) << "\n";

    int worst = 0;
    for (int c : codes) worst = std::max(worst, c);
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kolmogorov-problem solver for completely and multiply monotone classes"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string file_path;
    bool recursive = false;
    double t_star = 0.0, threshold_a = 0.0;
    int p = 0, count = 0;
    std::uint64_t seed = 0;
    std::string spline_json;

    auto add_common = [&](CLI::App* cmd, bool needs_values = true) {
        cmd->add_option("--class", flags.cls, "function class: cm or mm");
        cmd->add_option("--r", flags.r, "smoothness order r");
        cmd->add_option("--orders", flags.orders, "derivative orders k_1 < ... < k_d")
            ->delimiter(',');
        if (needs_values)
            cmd->add_option("--values", flags.values, "prescribed norms / moments")->delimiter(',');
        cmd->add_option("--config", flags.config_path, "solver config JSON file");
    };

    CLI::App* c_check = app.add_subcommand("check", "classify admissibility of a norm vector");
    add_common(c_check);
    c_check->add_flag("--recursive", recursive, "use the recursive characterization");

    CLI::App* c_witness = app.add_subcommand("witness", "compute the witness perfect spline");
    add_common(c_witness);

    CLI::App* c_repr = app.add_subcommand("represent", "principal atomic representation");
    add_common(c_repr);

    CLI::App* c_canon = app.add_subcommand("canonical", "canonical representation with a root");
    add_common(c_canon);
    c_canon->add_option("--t-star", t_star, "prescribed root t* > 0")->required();

    CLI::App* c_interp = app.add_subcommand("interpolate", "smoothest Hermite-Birkhoff interpolant");
    add_common(c_interp);

    CLI::App* c_bound = app.add_subcommand("moment-bound", "sharp intermediate-moment bound");
    add_common(c_bound);
    c_bound->add_option("--p", p, "intermediate order p")->required();

    CLI::App* c_dist = app.add_subcommand("extremal-dist", "extremal distribution function");
    add_common(c_dist);
    c_dist->add_option("--A", threshold_a, "threshold A < 0")->required();

    CLI::App* c_family = app.add_subcommand("family-sample", "sample the generating spline family");
    add_common(c_family, false);
    c_family->add_option("--count", count, "number of splines")->required();
    c_family->add_option("--seed", seed, "sampler seed");

    CLI::App* c_norms = app.add_subcommand("norms", "derivative norms of a spline record");
    c_norms->add_option("--spline", spline_json, "spline record as JSON text")->required();
    c_norms->add_option("--orders", flags.orders, "derivative orders")->delimiter(',');
    c_norms->add_option("--config", flags.config_path, "solver config JSON file");

    CLI::App* c_run = app.add_subcommand("run", "run a problem file (single object or array)");
    c_run->add_option("file", file_path, "problem file path")->required();
    c_run->add_option("--config", flags.config_path, "solver config JSON file");

    CLI11_PARSE(app, argc, argv);

    try {
        kolmo::SolverConfig cfg = load_config(flags.config_path);
        if (c_run->parsed()) return run_file(file_path, cfg);

        kolmo::io::Problem problem;
        if (c_check->parsed()) {
            problem = problem_from_flags("check", flags);
            problem.recursive = recursive;
        } else if (c_witness->parsed()) {
            problem = problem_from_flags("witness", flags);
        } else if (c_repr->parsed()) {
            problem = problem_from_flags("represent", flags);
        } else if (c_canon->parsed()) {
            problem = problem_from_flags("canonical", flags);
            problem.t_star = t_star;
        } else if (c_interp->parsed()) {
            problem = problem_from_flags("interpolate", flags);
        } else if (c_bound->parsed()) {
            problem = problem_from_flags("moment-bound", flags);
            problem.p = p;
        } else if (c_dist->parsed()) {
            problem = problem_from_flags("extremal-dist", flags);
            problem.a = threshold_a;
        } else if (c_family->parsed()) {
            problem = problem_from_flags("family-sample", flags);
            problem.count = count;
            problem.seed = seed;
        } else if (c_norms->parsed()) {
            problem.command = "norms";
            problem.orders = flags.orders;
            problem.spline = json::parse(spline_json);
        }
        return run_one(std::move(problem), cfg);
    } catch (const kolmo::Error& e) {
        std::cerr << e.what() << "\n";
        return kolmo::io::exit_code_for(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 1;
    }
}
