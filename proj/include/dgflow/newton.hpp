// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dgflow {

struct NewtonOptions {
    enum class JacobianMode {
        finite_difference,   // rebuild the Jacobian every iteration
        reuse_per_interval,  // build once at the initial guess, reuse the factorization
    };

    double abs_tol = 1e-12;  // convergence test on the residual max-norm
    int max_iters = 50;
    JacobianMode jacobian_mode = JacobianMode::finite_difference;
    double fd_step = 1e-7;  // column i is perturbed by fd_step * (1 + |x_i|)
};

struct NewtonResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual_norm = 0.0;
};

class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(const std::string& what, double residual_norm, int iterations)
        : std::runtime_error(what), residual_norm(residual_norm), iterations(iterations) {}

    double residual_norm;
    int iterations;
};

class SingularJacobianError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Damped-free Newton iteration with a columnwise finite-difference Jacobian,
/// solved by dense LU with partial pivoting. Returns the first iterate whose
/// residual max-norm is <= opts.abs_tol. Throws NonconvergenceError after
/// opts.max_iters, SingularJacobianError when an LU pivot falls below
/// 1e-14 times the largest pivot.
NewtonResult newton_solve(const ResidualFn& residual, Eigen::VectorXd x0,
                          const NewtonOptions& opts = {});

}  // namespace dgflow
