// SPDX-License-Identifier: Apache-2.0
#include "dgflow/newton.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace dgflow {
namespace {

Eigen::MatrixXd fd_jacobian(const ResidualFn& residual, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& f0, double fd_step) {
    const auto n = x.size();
    Eigen::MatrixXd jac(f0.size(), n);
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        // Round the perturbation to an exactly representable step.
        const double x_plus = x[i] + fd_step * (1.0 + std::abs(x[i]));
        const double h = x_plus - x[i];
        probe[i] = x_plus;
        jac.col(i) = (residual(probe) - f0) / h;
        probe[i] = x[i];
    }
    return jac;
}

void check_pivots(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double largest = pivots.maxCoeff();
    if (largest == 0.0 || pivots.minCoeff() < 1e-14 * largest) {
        throw SingularJacobianError("newton_solve: singular Jacobian");
    }
}

}  // namespace

NewtonResult newton_solve(const ResidualFn& residual, Eigen::VectorXd x0,
                          const NewtonOptions& opts) {
    if (!(opts.abs_tol > 0.0) || opts.max_iters < 1) {
        throw std::invalid_argument("newton_solve: invalid options");
    }

    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd f = residual(x);
    if (!f.allFinite()) {
        throw NonconvergenceError("newton_solve: non-finite residual at initial guess",
                                  std::numeric_limits<double>::quiet_NaN(), 0);
    }
    double norm = f.lpNorm<Eigen::Infinity>();
    if (norm <= opts.abs_tol) {
        return {std::move(x), 0, norm};
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    bool have_factorization = false;
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        if (!have_factorization ||
            opts.jacobian_mode == NewtonOptions::JacobianMode::finite_difference) {
            lu.compute(fd_jacobian(residual, x, f, opts.fd_step));
            check_pivots(lu);
            have_factorization = true;
        }
        x -= lu.solve(f);
        f = residual(x);
        if (!f.allFinite()) {
            throw NonconvergenceError("newton_solve: non-finite residual", norm, iter);
        }
        norm = f.lpNorm<Eigen::Infinity>();
        if (norm <= opts.abs_tol) {
            return {std::move(x), iter, norm};
        }
    }
    throw NonconvergenceError("newton_solve: no convergence within max_iters", norm,
                              opts.max_iters);
}

}  // namespace dgflow
