// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: single runs with an energy trace, and refinement sweeps
// with observed convergence orders. Output is CSV with 17 significant digits.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dgflow/experiment.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct CommonFlags {
    std::string problem = "ode";
    int degree = 1;
    int n_time = 8;
    double final_time = 0.0;
    double u0 = 1e-5;
    int cells = 32;
    int element_degree = 0;
    double modulus = std::sqrt(0.9);
    double kappa = 1.0;
    double alpha = 0.0;
    std::string dgrad;
    double newton_tol = 1e-12;
    int quad_points = 0;
    std::string jacobian = "auto";
    std::string out;
};

void add_common_flags(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--problem", flags.problem, "Test problem: ode or kdv")
        ->check(CLI::IsMember({"ode", "kdv"}));
    cmd.add_option("--k", flags.degree, "Temporal polynomial degree")->check(CLI::Range(0, 8));
    cmd.add_option("--nt", flags.n_time, "Number of uniform time intervals")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--T", flags.final_time,
                   "Final time (default: 20 for ode, one wave period for kdv)");
    cmd.add_option("--u0", flags.u0, "Initial value of the scalar ODE");
    cmd.add_option("--nx", flags.cells, "Number of spatial cells (kdv)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--l", flags.element_degree, "Spatial element degree (default 2k)")
        ->check(CLI::Range(0, 6));
    cmd.add_option("--m", flags.modulus, "Cnoidal wave modulus");
    cmd.add_option("--kappa", flags.kappa, "Cnoidal wave number");
    cmd.add_option("--alpha", flags.alpha, "Cnoidal wave offset");
    cmd.add_option("--dgrad", flags.dgrad,
                   "Discrete gradient: closed-form, weak-form, gonzalez, avf, itoh-abe "
                   "(default: closed-form for ode, weak-form for kdv)");
    cmd.add_option("--newton-tol", flags.newton_tol, "Newton residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--quad", flags.quad_points, "Quadrature points per interval (default 2k+1)");
    cmd.add_option("--jacobian", flags.jacobian, "Jacobian handling: auto, fd, reuse")
        ->check(CLI::IsMember({"auto", "fd", "reuse"}));
    cmd.add_option("--out", flags.out, "Output CSV path (default: stdout)");
}

// Maps the flag set onto a RunConfig; throws CLI::ValidationError on
// inconsistent combinations.
dgflow::RunConfig to_config(const CommonFlags& flags) {
    dgflow::RunConfig config;
    const bool kdv = flags.problem == "kdv";
    config.problem =
        kdv ? dgflow::RunConfig::ProblemKind::kdv : dgflow::RunConfig::ProblemKind::ode;
    config.degree = flags.degree;
    config.n_time = flags.n_time;
    config.final_time = flags.final_time;
    config.ode_u0 = flags.u0;
    config.cells = flags.cells;
    config.element_degree = flags.element_degree;
    config.modulus = flags.modulus;
    config.kappa = flags.kappa;
    config.alpha = flags.alpha;
    config.newton_tol = flags.newton_tol;
    config.quad_points = flags.quad_points;

    std::string dgrad = flags.dgrad;
    if (dgrad.empty()) {
        dgrad = kdv ? "weak-form" : "closed-form";
    }
    using Kind = dgflow::DGradChoice::Kind;
    const std::map<std::string, Kind> kinds = {{"closed-form", Kind::problem_default},
                                               {"weak-form", Kind::problem_default},
                                               {"gonzalez", Kind::gonzalez},
                                               {"avf", Kind::avf},
                                               {"itoh-abe", Kind::itoh_abe}};
    const auto it = kinds.find(dgrad);
    if (it == kinds.end()) {
        throw CLI::ValidationError("--dgrad", "unknown discrete gradient '" + dgrad + "'");
    }
    if (kdv && dgrad != "weak-form") {
        throw CLI::ValidationError("--dgrad", "the kdv problem requires --dgrad weak-form");
    }
    if (!kdv && dgrad == "weak-form") {
        throw CLI::ValidationError("--dgrad", "the ode problem uses --dgrad closed-form");
    }
    config.dgrad.kind = it->second;

    if (flags.jacobian == "fd") {
        config.jacobian = dgflow::RunConfig::JacobianPolicy::finite_difference;
    } else if (flags.jacobian == "reuse") {
        config.jacobian = dgflow::RunConfig::JacobianPolicy::reuse_per_interval;
    }
    return config;
}

// Parses "a..b" into an inclusive level range.
std::pair<int, int> parse_levels(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        throw CLI::ValidationError("--converge-levels", "expected i_min..i_max");
    }
    try {
        const int lo = std::stoi(text.substr(0, pos));
        const int hi = std::stoi(text.substr(pos + 2));
        if (lo < 0 || hi < lo) {
            throw CLI::ValidationError("--converge-levels", "invalid range");
        }
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--converge-levels", "expected i_min..i_max");
    }
}

template <typename WriteFn>
int with_output(const std::string& path, const WriteFn& write) {
    if (path.empty()) {
        write(std::cout);
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitConfigError;
    }
    write(file);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving time integration experiments"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "Single run with an energy trace");
    add_common_flags(*run_cmd, run_flags);

    CommonFlags conv_flags;
    std::string levels = "2..6";
    CLI::App* conv_cmd = app.add_subcommand("converge", "Refinement sweep with observed orders");
    add_common_flags(*conv_cmd, conv_flags);
    conv_cmd->add_option("--converge-levels", levels, "Refinement levels i_min..i_max");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (run_cmd->parsed()) {
            const dgflow::RunConfig config = to_config(run_flags);
            const dgflow::RunOutput output = dgflow::run_experiment(config);
            return with_output(run_flags.out, [&](std::ostream& out) {
                dgflow::write_trace_csv(out, config, output.rows);
            });
        }
        const dgflow::RunConfig config = to_config(conv_flags);
        const auto [lo, hi] = parse_levels(levels);
        if (hi - lo + 1 < 3) {
            std::cerr << "error: need at least 3 refinement levels\n";
            return kExitConfigError;
        }
        const auto rows = dgflow::convergence_study(config, lo, hi);
        return with_output(conv_flags.out, [&](std::ostream& out) {
            dgflow::write_convergence_csv(out, rows);
        });
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const dgflow::IntervalSolveError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
