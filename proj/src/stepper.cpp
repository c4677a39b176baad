// SPDX-License-Identifier: Apache-2.0
#include "dgflow/stepper.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgflow {

TimeMesh::TimeMesh(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) {
        throw std::invalid_argument("TimeMesh: need at least one interval");
    }
    if (times_.front() != 0.0) {
        throw std::invalid_argument("TimeMesh: mesh must start at t = 0");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("TimeMesh: nodes must be strictly increasing");
        }
    }
}

TimeMesh TimeMesh::uniform(double final_time, int intervals) {
    if (!(final_time > 0.0) || intervals < 1) {
        throw std::invalid_argument("TimeMesh::uniform: invalid arguments");
    }
    std::vector<double> times(intervals + 1);
    for (int n = 0; n <= intervals; ++n) {
        times[n] = final_time * n / intervals;
    }
    times.back() = final_time;
    return TimeMesh(std::move(times));
}

IntervalAssembly::IntervalAssembly(int degree, int quad_points)
    : basis(lobatto_nodes(degree)), quad(gauss_legendre(quad_points)) {
    const int k = basis.degree();
    const int q = quad.size();
    trial_at_quad.resize(k + 1, q);
    dtrial_at_quad.resize(k + 1, q);
    test_at_quad.resize(k, q);
    for (int i = 0; i < q; ++i) {
        trial_at_quad.col(i) = basis.eval(quad.nodes[i]);
        dtrial_at_quad.col(i) = basis.deriv(quad.nodes[i]);
    }
    if (k >= 1) {
        const NodalBasis test_basis(gauss_legendre(k).nodes);
        for (int i = 0; i < q; ++i) {
            test_at_quad.col(i) = test_basis.eval(quad.nodes[i]);
        }
    }
    trial_at_left = basis.eval(0.0);
}

namespace {

StateVector combine(const std::vector<StateVector>& coeffs, const Eigen::MatrixXd& table,
                    int quad_index) {
    StateVector out = table(0, quad_index) * coeffs[0];
    for (std::size_t a = 1; a < coeffs.size(); ++a) {
        out += table(static_cast<int>(a), quad_index) * coeffs[a];
    }
    return out;
}

}  // namespace

Eigen::VectorXd assemble_residual(const GradientSystemProblem& problem,
                                  const DGradChoice& dgrad, const StateVector& u_prev,
                                  const std::vector<StateVector>& u_coeffs,
                                  const std::vector<StateVector>& p_coeffs, double tau,
                                  const IntervalAssembly& assembly) {
    const int k = assembly.degree();
    const int d = problem.dim();
    if (static_cast<int>(u_coeffs.size()) != k + 1 ||
        static_cast<int>(p_coeffs.size()) != k + 1 || u_prev.size() != d) {
        throw std::invalid_argument("assemble_residual: dimension mismatch");
    }

    Eigen::MatrixXd evolution = Eigen::MatrixXd::Zero(k + 1, d);
    Eigen::MatrixXd auxiliary = Eigen::MatrixXd::Zero(k, d);

    // Jump term <u(0+) - u_prev, e_i> weighted by the trial values at s = 0.
    const StateVector gram_jump = problem.gram_apply(u_coeffs[0] - u_prev);
    for (int j = 0; j <= k; ++j) {
        evolution.row(j) += assembly.trial_at_left[j] * gram_jump.transpose();
    }

    for (int qi = 0; qi < assembly.quad.size(); ++qi) {
        const double w = assembly.quad.weights[qi];
        const StateVector u_q = combine(u_coeffs, assembly.trial_at_quad, qi);
        const StateVector p_q = combine(p_coeffs, assembly.trial_at_quad, qi);
        const StateVector du_q = combine(u_coeffs, assembly.dtrial_at_quad, qi);

        // d/dt and dt cancel to a pure d/ds integral on [0,1].
        const StateVector gram_du = problem.gram_apply(du_q);
        const StateVector op_p = problem.op_weak(u_q, p_q);
        for (int j = 0; j <= k; ++j) {
            evolution.row(j) +=
                w * assembly.trial_at_quad(j, qi) * (gram_du - tau * op_p).transpose();
        }
        if (k >= 1) {
            const StateVector defect = problem.gram_apply(p_q) - problem.grad_weak(u_q);
            for (int j = 0; j < k; ++j) {
                auxiliary.row(j) += tau * w * assembly.test_at_quad(j, qi) * defect.transpose();
            }
        }
    }

    const StateVector closure =
        problem.gram_apply(p_coeffs[0]) - weak_discrete_gradient(problem, dgrad, u_coeffs[0], u_prev);

    Eigen::VectorXd residual(2 * (k + 1) * d);
    for (int j = 0; j <= k; ++j) {
        residual.segment(j * d, d) = evolution.row(j).transpose();
    }
    for (int j = 0; j < k; ++j) {
        residual.segment((k + 1 + j) * d, d) = auxiliary.row(j).transpose();
    }
    residual.segment((2 * k + 1) * d, d) = closure;
    return residual;
}

namespace {

Eigen::VectorXd pack(const std::vector<StateVector>& u_coeffs,
                     const std::vector<StateVector>& p_coeffs, int d) {
    const int k1 = static_cast<int>(u_coeffs.size());
    Eigen::VectorXd x(2 * k1 * d);
    for (int a = 0; a < k1; ++a) {
        x.segment(a * d, d) = u_coeffs[a];
        x.segment((k1 + a) * d, d) = p_coeffs[a];
    }
    return x;
}

void unpack(const Eigen::VectorXd& x, std::vector<StateVector>& u_coeffs,
            std::vector<StateVector>& p_coeffs, int d) {
    const int k1 = static_cast<int>(u_coeffs.size());
    for (int a = 0; a < k1; ++a) {
        u_coeffs[a] = x.segment(a * d, d);
        p_coeffs[a] = x.segment((k1 + a) * d, d);
    }
}

}  // namespace

IntervalSolution step_interval(const GradientSystemProblem& problem,
                               const StateVector& u_prev, double tau,
                               const StepperOptions& opts) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("step_interval: interval length must be positive");
    }
    if (!u_prev.allFinite()) {
        throw std::invalid_argument("step_interval: non-finite initial state");
    }
    const IntervalAssembly assembly(opts.degree, opts.effective_quad_points());
    const int k = assembly.degree();
    const int d = problem.dim();

    // Predictor: u constant at u_prev, p the matching strong gradient. This is
    // consistent with both the auxiliary and the closure equation at the
    // constant state.
    std::vector<StateVector> u_coeffs(k + 1, u_prev);
    std::vector<StateVector> p_coeffs(k + 1, problem.gram_solve(problem.grad_weak(u_prev)));

    std::vector<StateVector> u_work = u_coeffs;
    std::vector<StateVector> p_work = p_coeffs;
    const auto residual = [&](const Eigen::VectorXd& x) {
        unpack(x, u_work, p_work, d);
        return assemble_residual(problem, opts.dgrad, u_prev, u_work, p_work, tau, assembly);
    };

    NewtonResult result = newton_solve(residual, pack(u_coeffs, p_coeffs, d), opts.newton);

    IntervalSolution solution;
    solution.u_coeffs.resize(k + 1);
    solution.p_coeffs.resize(k + 1);
    unpack(result.x, solution.u_coeffs, solution.p_coeffs, d);
    solution.newton_iters = result.iterations;
    solution.residual_norm = result.residual_norm;
    return solution;
}

Trajectory::Trajectory(TimeMesh mesh, const StepperOptions& opts, StateVector initial_state)
    : mesh_(std::move(mesh)),
      assembly_(opts.degree, opts.effective_quad_points()),
      initial_state_(std::move(initial_state)) {
    intervals_.reserve(mesh_.intervals());
}

const StateVector& Trajectory::nodal_state(int n) const {
    if (n < 0 || n > static_cast<int>(intervals_.size())) {
        throw std::out_of_range("Trajectory::nodal_state: index out of range");
    }
    return n == 0 ? initial_state_ : intervals_[n - 1].u_coeffs.back();
}

std::pair<StateVector, StateVector> Trajectory::evaluate(double t) const {
    if (intervals_.empty()) {
        throw std::out_of_range("Trajectory::evaluate: empty trajectory");
    }
    const double T = mesh_.time(static_cast<int>(intervals_.size()));
    if (t < 0.0 || t > T) {
        throw std::out_of_range("Trajectory::evaluate: time outside [0, T]");
    }
    if (t == 0.0) {
        return {initial_state_, intervals_.front().p_coeffs.front()};
    }
    int n = 1;
    while (t > mesh_.time(n)) {
        ++n;
    }
    const double s = (t - mesh_.time(n - 1)) / mesh_.tau(n);
    const Eigen::VectorXd values = assembly_.basis.eval(s);
    const IntervalSolution& sol = intervals_[n - 1];
    StateVector u = values[0] * sol.u_coeffs[0];
    StateVector p = values[0] * sol.p_coeffs[0];
    for (int a = 1; a <= assembly_.degree(); ++a) {
        u += values[a] * sol.u_coeffs[a];
        p += values[a] * sol.p_coeffs[a];
    }
    return {std::move(u), std::move(p)};
}

void Trajectory::append(IntervalSolution interval) {
    intervals_.push_back(std::move(interval));
}

Trajectory integrate(const GradientSystemProblem& problem, const StateVector& u0,
                     const TimeMesh& mesh, const StepperOptions& opts) {
    Trajectory traj(mesh, opts, u0);
    StateVector u_prev = u0;
    for (int n = 1; n <= mesh.intervals(); ++n) {
        try {
            IntervalSolution sol = step_interval(problem, u_prev, mesh.tau(n), opts);
            u_prev = sol.u_coeffs.back();
            traj.append(std::move(sol));
        } catch (const NonconvergenceError& err) {
            throw IntervalSolveError(
                "integrate: interval " + std::to_string(n) + " failed: " + err.what(), n,
                err.residual_norm);
        } catch (const SingularJacobianError& err) {
            throw IntervalSolveError(
                "integrate: interval " + std::to_string(n) + " failed: " + err.what(), n,
                std::numeric_limits<double>::quiet_NaN());
        }
    }
    return traj;
}

double energy_identity_residual(const GradientSystemProblem& problem,
                                const Trajectory& traj, int n) {
    if (n < 1 || n > static_cast<int>(traj.intervals().size())) {
        throw std::out_of_range("energy_identity_residual: interval index out of range");
    }
    const IntervalAssembly& assembly = traj.assembly();
    const IntervalSolution& sol = traj.interval(n);
    const double tau = traj.mesh().tau(n);

    double quad_term = 0.0;
    for (int qi = 0; qi < assembly.quad.size(); ++qi) {
        const StateVector u_q = combine(sol.u_coeffs, assembly.trial_at_quad, qi);
        const StateVector p_q = combine(sol.p_coeffs, assembly.trial_at_quad, qi);
        quad_term += assembly.quad.weights[qi] * problem.op_weak(u_q, p_q).dot(p_q);
    }
    quad_term *= tau;

    const double e_new = problem.energy(sol.u_coeffs.back());
    const double e_old = problem.energy(traj.nodal_state(n - 1));
    return std::abs(e_new - e_old - quad_term);
}

}  // namespace dgflow
