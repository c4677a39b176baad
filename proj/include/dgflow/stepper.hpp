// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "dgflow/discrete_gradient.hpp"
#include "dgflow/lagrange.hpp"
#include "dgflow/newton.hpp"
#include "dgflow/problem.hpp"
#include "dgflow/quadrature.hpp"

namespace dgflow {

/// Strictly increasing time nodes 0 = t_0 < t_1 < ... < t_N = T.
class TimeMesh {
public:
    explicit TimeMesh(std::vector<double> times);
    static TimeMesh uniform(double final_time, int intervals);

    /// Number of intervals N.
    int intervals() const { return static_cast<int>(times_.size()) - 1; }
    double final_time() const { return times_.back(); }
    /// t_n for n = 0..N.
    double time(int n) const { return times_[n]; }
    /// Interval length t_n - t_{n-1} for n = 1..N.
    double tau(int n) const { return times_[n] - times_[n - 1]; }

private:
    std::vector<double> times_;
};

/// Solution polynomials of one interval in the nodal (Lobatto) basis. For
/// degree k >= 1, u_coeffs[0] is the right limit at the interval's left end
/// and u_coeffs[k] the value at the right end.
struct IntervalSolution {
    std::vector<StateVector> u_coeffs;
    std::vector<StateVector> p_coeffs;
    int newton_iters = 0;
    double residual_norm = 0.0;
};

struct StepperOptions {
    int degree = 1;       // polynomial degree k in time
    int quad_points = 0;  // 0 selects the default 2k+1
    DGradChoice dgrad;
    NewtonOptions newton;

    int effective_quad_points() const {
        return quad_points > 0 ? quad_points : 2 * degree + 1;
    }
};

/// Per-interval basis and quadrature tables shared by assembly, diagnostics
/// and evaluation. The trial space uses the Lobatto nodal basis of degree k;
/// the auxiliary equation is tested against the degree k-1 Lagrange basis at
/// the k-point Gauss nodes (empty for k = 0).
struct IntervalAssembly {
    IntervalAssembly(int degree, int quad_points);

    NodalBasis basis;
    QuadratureRule quad;
    Eigen::MatrixXd trial_at_quad;   // (k+1) x q values of the trial basis
    Eigen::MatrixXd dtrial_at_quad;  // (k+1) x q derivatives (w.r.t. s in [0,1])
    Eigen::MatrixXd test_at_quad;    // k x q values of the auxiliary test basis
    Eigen::VectorXd trial_at_left;   // trial basis values at s = 0

    int degree() const { return basis.degree(); }
};

/// Residual of the coupled interval system for trial coefficients
/// (u_coeffs, p_coeffs), stacked as
///   [ evolution equation tested with each trial function x basis vector;
///     auxiliary equation p = grad E(u) tested with the degree k-1 basis;
///     left-limit closure p(0+) = grad_d E(u(0+), u_prev) ],
/// all time integrals evaluated with the same quadrature rule.
Eigen::VectorXd assemble_residual(const GradientSystemProblem& problem,
                                  const DGradChoice& dgrad, const StateVector& u_prev,
                                  const std::vector<StateVector>& u_coeffs,
                                  const std::vector<StateVector>& p_coeffs, double tau,
                                  const IntervalAssembly& assembly);

/// Solve one interval of length tau starting from u_prev.
IntervalSolution step_interval(const GradientSystemProblem& problem,
                               const StateVector& u_prev, double tau,
                               const StepperOptions& opts);

/// Piecewise-polynomial solution pair (u, p) over a whole mesh.
class Trajectory {
public:
    Trajectory(TimeMesh mesh, const StepperOptions& opts, StateVector initial_state);

    const TimeMesh& mesh() const { return mesh_; }
    int degree() const { return assembly_.degree(); }
    const IntervalAssembly& assembly() const { return assembly_; }
    const StateVector& initial_state() const { return initial_state_; }

    const std::vector<IntervalSolution>& intervals() const { return intervals_; }
    const IntervalSolution& interval(int n) const { return intervals_[n - 1]; }

    /// Nodal value u at t_n (the initial state for n = 0).
    const StateVector& nodal_state(int n) const;

    /// Evaluate (u, p) at time t in [0, T]. Intervals are left-open, so at a
    /// mesh node the value from the left interval is returned; t = 0 yields
    /// the initial state paired with the right limit of p.
    std::pair<StateVector, StateVector> evaluate(double t) const;

    void append(IntervalSolution interval);

private:
    TimeMesh mesh_;
    IntervalAssembly assembly_;
    StateVector initial_state_;
    std::vector<IntervalSolution> intervals_;
};

class IntervalSolveError : public std::runtime_error {
public:
    IntervalSolveError(const std::string& what, int interval, double residual_norm)
        : std::runtime_error(what), interval(interval), residual_norm(residual_norm) {}

    int interval;
    double residual_norm;
};

/// March the scheme over the whole mesh. The first failing interval aborts
/// the run with its index attached.
Trajectory integrate(const GradientSystemProblem& problem, const StateVector& u0,
                     const TimeMesh& mesh, const StepperOptions& opts);

/// | E[u^n] - E[u^{n-1}] - Q_n(<L(u) p, p>) | with Q_n the assembly
/// quadrature. Zero (to solver tolerance) by the discrete energy identity;
/// for skew-symmetric L the quadrature term vanishes and the residual is the
/// per-step energy drift itself.
double energy_identity_residual(const GradientSystemProblem& problem,
                                const Trajectory& traj, int n);

}  // namespace dgflow
