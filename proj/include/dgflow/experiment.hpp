// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <iosfwd>
#include <memory>
#include <vector>

#include "dgflow/kdv.hpp"
#include "dgflow/stepper.hpp"

namespace dgflow {

/// One experiment: problem selection plus discretization parameters.
struct RunConfig {
    enum class ProblemKind { ode, kdv };
    enum class JacobianPolicy { automatic, finite_difference, reuse_per_interval };

    ProblemKind problem = ProblemKind::ode;
    int degree = 1;    // temporal polynomial degree k
    int n_time = 8;    // number of uniform time intervals
    double final_time = 0.0;  // <= 0 selects the default: 20 for the ODE,
                              // one temporal period of the cnoidal wave for KdV

    // ODE parameters.
    double ode_u0 = 1e-5;

    // KdV parameters. element_degree = 0 selects the default l = 2k; the
    // spatial domain is one period of the cnoidal wave.
    int cells = 32;
    int element_degree = 0;
    double modulus = std::sqrt(0.9);
    double kappa = 1.0;
    double alpha = 0.0;

    DGradChoice dgrad;
    double newton_tol = 1e-12;
    int newton_max_iters = 50;
    JacobianPolicy jacobian = JacobianPolicy::automatic;  // automatic: rebuild
                                                          // per iteration for the
                                                          // ODE, reuse per
                                                          // interval for KdV
    int quad_points = 0;  // 0 selects 2k+1

    int effective_element_degree() const {
        return element_degree > 0 ? element_degree : 2 * degree;
    }
};

/// Assembled stepper inputs for a config.
struct PreparedRun {
    std::shared_ptr<const GradientSystemProblem> problem;
    StateVector initial_state;
    TimeMesh mesh;
    StepperOptions options;
};

PreparedRun prepare_run(const RunConfig& config);

struct TraceRow {
    int n = 0;
    double t = 0.0;
    double value = 0.0;  // ODE: u^n; KdV: u^n at x = 0
    double energy = 0.0;
    double energy_residual = 0.0;
    int newton_iters = 0;
};

struct RunOutput {
    std::shared_ptr<const GradientSystemProblem> problem;
    Trajectory trajectory;
    std::vector<TraceRow> rows;
};

/// Integrate the configured problem and collect the per-node trace.
RunOutput run_experiment(const RunConfig& config);

/// Relative errors of a computed trajectory against the exact solution.
struct ErrorPair {
    double nodal = 0.0;     // max over mesh nodes of the relative error
    double interior = 0.0;  // max-norm ratio over sampled interior times
};

ErrorPair ode_errors(const Trajectory& traj, double u0);
ErrorPair kdv_errors(const KdVProblem& problem, const Trajectory& traj, double modulus,
                     double kappa, double alpha);

struct ConvergenceRow {
    int level = 0;
    double tau = 0.0;
    double nodal_error = 0.0;
    double interior_error = 0.0;
    double nodal_order = 0.0;     // NaN in the first row
    double interior_order = 0.0;  // NaN in the first row
    bool nodal_below_floor = false;
    bool interior_below_floor = false;
};

/// Uniform refinement sweep over levels i = level_min..level_max: the ODE
/// refines time only (N_t = 2^i), KdV refines space and time together
/// (N_t = N_x = 2^i). Rows with errors under 100 x newton_tol are flagged:
/// order estimates there sit on the solver-tolerance floor.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int level_min,
                                              int level_max);

/// log2(e_i / e_{i+1}) for consecutive pairs; entries must be positive.
std::vector<double> observed_order(const std::vector<double>& errors);

/// Least-squares slope of log2(error) against log2(tau).
double least_squares_order(const std::vector<double>& taus,
                           const std::vector<double>& errors);

void write_trace_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<TraceRow>& rows);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace dgflow
