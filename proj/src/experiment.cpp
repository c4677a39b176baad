// SPDX-License-Identifier: Apache-2.0
#include "dgflow/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dgflow/scalar_ode.hpp"

namespace dgflow {
namespace {

constexpr int kInteriorSamplesPerInterval = 33;

std::string fmt17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

NewtonOptions::JacobianMode resolve_jacobian(const RunConfig& config) {
    switch (config.jacobian) {
        case RunConfig::JacobianPolicy::finite_difference:
            return NewtonOptions::JacobianMode::finite_difference;
        case RunConfig::JacobianPolicy::reuse_per_interval:
            return NewtonOptions::JacobianMode::reuse_per_interval;
        case RunConfig::JacobianPolicy::automatic:
            return config.problem == RunConfig::ProblemKind::kdv
                       ? NewtonOptions::JacobianMode::reuse_per_interval
                       : NewtonOptions::JacobianMode::finite_difference;
    }
    throw std::logic_error("resolve_jacobian: unknown policy");
}

}  // namespace

PreparedRun prepare_run(const RunConfig& config) {
    if (config.degree < 0 || config.n_time < 1 || !(config.newton_tol > 0.0)) {
        throw std::invalid_argument("prepare_run: invalid discretization parameters");
    }

    StepperOptions opts;
    opts.degree = config.degree;
    opts.quad_points = config.quad_points;
    opts.dgrad = config.dgrad;
    opts.newton.abs_tol = config.newton_tol;
    opts.newton.max_iters = config.newton_max_iters;
    opts.newton.jacobian_mode = resolve_jacobian(config);

    if (config.problem == RunConfig::ProblemKind::ode) {
        const double T = config.final_time > 0.0 ? config.final_time : 20.0;
        StateVector u0(1);
        u0[0] = config.ode_u0;
        return PreparedRun{std::make_shared<ScalarODEProblem>(), std::move(u0),
                           TimeMesh::uniform(T, config.n_time), opts};
    }

    const int l = config.effective_element_degree();
    const double length = cnoidal_period(config.modulus, config.kappa);
    const double speed = cnoidal_speed(config.modulus, config.kappa, config.alpha);
    double T = config.final_time;
    if (!(T > 0.0)) {
        if (speed == 0.0) {
            throw std::invalid_argument("prepare_run: stationary wave has no temporal period");
        }
        T = length / std::abs(speed);
    }
    auto problem = std::make_shared<KdVProblem>(
        build_kdv_problem(config.cells, l, length));
    StateVector u0 = interpolate_initial(*problem, [&](double x) {
        return cnoidal_exact(x, 0.0, config.modulus, config.kappa, config.alpha);
    });
    return PreparedRun{std::move(problem), std::move(u0),
                       TimeMesh::uniform(T, config.n_time), opts};
}

RunOutput run_experiment(const RunConfig& config) {
    PreparedRun prep = prepare_run(config);
    Trajectory traj = integrate(*prep.problem, prep.initial_state, prep.mesh, prep.options);

    std::vector<TraceRow> rows;
    rows.reserve(prep.mesh.intervals() + 1);
    TraceRow first;
    first.n = 0;
    first.t = 0.0;
    first.value = prep.initial_state[0];
    first.energy = prep.problem->energy(prep.initial_state);
    rows.push_back(first);
    for (int n = 1; n <= prep.mesh.intervals(); ++n) {
        TraceRow row;
        row.n = n;
        row.t = prep.mesh.time(n);
        row.value = traj.nodal_state(n)[0];
        row.energy = prep.problem->energy(traj.nodal_state(n));
        row.energy_residual = energy_identity_residual(*prep.problem, traj, n);
        row.newton_iters = traj.interval(n).newton_iters;
        rows.push_back(row);
    }
    return RunOutput{std::move(prep.problem), std::move(traj), std::move(rows)};
}

ErrorPair ode_errors(const Trajectory& traj, double u0) {
    const TimeMesh& mesh = traj.mesh();
    ErrorPair errors;

    for (int n = 1; n <= mesh.intervals(); ++n) {
        const double exact = scalar_ode_exact(u0, mesh.time(n));
        const double diff = std::abs(traj.nodal_state(n)[0] - exact) / std::abs(exact);
        errors.nodal = std::max(errors.nodal, diff);
    }

    // Interior (right-continuous) samples of the trajectory polynomial.
    const NodalBasis& basis = traj.assembly().basis;
    double max_diff = 0.0;
    double max_exact = 0.0;
    for (int n = 1; n <= mesh.intervals(); ++n) {
        const IntervalSolution& sol = traj.interval(n);
        for (int j = 0; j < kInteriorSamplesPerInterval; ++j) {
            const double s = static_cast<double>(j) / (kInteriorSamplesPerInterval - 1);
            const Eigen::VectorXd values = basis.eval(s);
            double u_h = 0.0;
            for (int a = 0; a <= traj.degree(); ++a) {
                u_h += values[a] * sol.u_coeffs[a][0];
            }
            const double t = mesh.time(n - 1) + s * mesh.tau(n);
            const double exact = scalar_ode_exact(u0, t);
            max_diff = std::max(max_diff, std::abs(u_h - exact));
            max_exact = std::max(max_exact, std::abs(exact));
        }
    }
    errors.interior = max_diff / max_exact;
    return errors;
}

ErrorPair kdv_errors(const KdVProblem& problem, const Trajectory& traj, double modulus,
                     double kappa, double alpha) {
    const KdVAssembly& asmb = problem.assembly();
    const TimeMesh& mesh = traj.mesh();
    const int samples_per_cell = 10 * asmb.element_degree;

    // Reference shape values at the sample offsets, shared by every cell.
    std::vector<Eigen::VectorXd> shapes(samples_per_cell);
    for (int j = 0; j < samples_per_cell; ++j) {
        shapes[j] = problem.shape_values(static_cast<double>(j) / samples_per_cell);
    }

    const auto spatial_error = [&](const StateVector& u_h, double t) {
        double max_diff = 0.0;
        double max_exact = 0.0;
        for (int c = 0; c < asmb.cells; ++c) {
            for (int j = 0; j < samples_per_cell; ++j) {
                const double x = (c + static_cast<double>(j) / samples_per_cell) * asmb.h;
                const double exact = cnoidal_exact(x, t, modulus, kappa, alpha);
                const double diff = std::abs(problem.eval_in_cell(u_h, c, shapes[j]) - exact);
                max_diff = std::max(max_diff, diff);
                max_exact = std::max(max_exact, std::abs(exact));
            }
        }
        return std::make_pair(max_diff, max_exact);
    };

    ErrorPair errors;
    for (int n = 0; n <= mesh.intervals(); ++n) {
        const auto [diff, exact] = spatial_error(traj.nodal_state(n), mesh.time(n));
        errors.nodal = std::max(errors.nodal, diff / exact);
    }

    const NodalBasis& basis = traj.assembly().basis;
    double max_diff = 0.0;
    double max_exact = 0.0;
    for (int n = 1; n <= mesh.intervals(); ++n) {
        const IntervalSolution& sol = traj.interval(n);
        for (int j = 0; j < kInteriorSamplesPerInterval; ++j) {
            const double s = static_cast<double>(j) / (kInteriorSamplesPerInterval - 1);
            const Eigen::VectorXd values = basis.eval(s);
            StateVector u_h = values[0] * sol.u_coeffs[0];
            for (int a = 1; a <= traj.degree(); ++a) {
                u_h += values[a] * sol.u_coeffs[a];
            }
            const double t = mesh.time(n - 1) + s * mesh.tau(n);
            const auto [diff, exact] = spatial_error(u_h, t);
            max_diff = std::max(max_diff, diff);
            max_exact = std::max(max_exact, exact);
        }
    }
    errors.interior = max_diff / max_exact;
    return errors;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int level_min,
                                              int level_max) {
    if (level_min < 0 || level_max < level_min) {
        throw std::invalid_argument("convergence_study: invalid level range");
    }

    std::vector<ConvergenceRow> rows;
    for (int level = level_min; level <= level_max; ++level) {
        RunConfig config = base;
        config.n_time = 1 << level;
        if (config.problem == RunConfig::ProblemKind::kdv) {
            config.cells = 1 << level;
        }
        RunOutput output = run_experiment(config);

        ConvergenceRow row;
        row.level = level;
        row.tau = output.trajectory.mesh().tau(1);
        if (config.problem == RunConfig::ProblemKind::ode) {
            const ErrorPair errors = ode_errors(output.trajectory, config.ode_u0);
            row.nodal_error = errors.nodal;
            row.interior_error = errors.interior;
        } else {
            const auto& problem = dynamic_cast<const KdVProblem&>(*output.problem);
            const ErrorPair errors = kdv_errors(problem, output.trajectory, config.modulus,
                                                config.kappa, config.alpha);
            row.nodal_error = errors.nodal;
            row.interior_error = errors.interior;
        }
        const double floor = 100.0 * config.newton_tol;
        row.nodal_below_floor = row.nodal_error < floor;
        row.interior_below_floor = row.interior_error < floor;
        row.nodal_order = std::numeric_limits<double>::quiet_NaN();
        row.interior_order = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty()) {
            row.nodal_order = std::log2(rows.back().nodal_error / row.nodal_error);
            row.interior_order = std::log2(rows.back().interior_error / row.interior_error);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> observed_order(const std::vector<double>& errors) {
    if (errors.size() < 2) {
        throw std::invalid_argument("observed_order: need at least two errors");
    }
    for (double e : errors) {
        if (!(e > 0.0)) {
            throw std::invalid_argument("observed_order: errors must be positive");
        }
    }
    std::vector<double> orders(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        orders[i] = std::log2(errors[i] / errors[i + 1]);
    }
    return orders;
}

double least_squares_order(const std::vector<double>& taus,
                           const std::vector<double>& errors) {
    if (taus.size() != errors.size() || taus.size() < 2) {
        throw std::invalid_argument("least_squares_order: need matching arrays, size >= 2");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double x = std::log2(taus[i]);
        const double y = std::log2(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_trace_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<TraceRow>& rows) {
    const bool kdv = config.problem == RunConfig::ProblemKind::kdv;
    out << "n,t," << (kdv ? "u_x0" : "u") << ",energy,energy_identity_residual,newton_iters\n";
    for (const TraceRow& row : rows) {
        out << row.n << ',' << fmt17(row.t) << ',' << fmt17(row.value) << ','
            << fmt17(row.energy) << ',' << fmt17(row.energy_residual) << ','
            << row.newton_iters << '\n';
    }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "level,tau,nodal_error,interior_error,nodal_order,interior_order,"
           "nodal_below_floor,interior_below_floor\n";
    for (const ConvergenceRow& row : rows) {
        out << row.level << ',' << fmt17(row.tau) << ',' << fmt17(row.nodal_error) << ','
            << fmt17(row.interior_error) << ',' << fmt17(row.nodal_order) << ','
            << fmt17(row.interior_order) << ',' << (row.nodal_below_floor ? 1 : 0) << ','
            << (row.interior_below_floor ? 1 : 0) << '\n';
    }
}

}  // namespace dgflow
