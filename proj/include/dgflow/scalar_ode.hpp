// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgflow/problem.hpp"

namespace dgflow {

/// Double-well scalar testbed du/dt = u - u^3, i.e. the gradient system with
/// energy f(u) = (1 - u^2)^2 / 4 and L = -1. Equilibria at u in {-1, 0, 1}.
class ScalarODEProblem final : public GradientSystemProblem {
public:
    int dim() const override { return 1; }
    StateVector gram_apply(const StateVector& x) const override { return x; }
    StateVector gram_solve(const StateVector& rhs) const override { return rhs; }
    double energy(const StateVector& u) const override;
    StateVector grad_weak(const StateVector& u) const override;
    StateVector op_weak(const StateVector& u_ctx, const StateVector& p) const override;
    StateVector dgrad_weak(const StateVector& a, const StateVector& b) const override;
    OperatorStructure op_structure() const override {
        return OperatorStructure::negative_semidefinite;
    }
};

/// Closed-form discrete gradient of the double-well energy,
/// (u^3 + u^2 v + u v^2 + v^3)/4 - (u + v)/2; all three generic
/// constructions coincide with it in one dimension.
double scalar_dgrad_closed(double u, double v);

/// Exact solution u(t) = u0 / sqrt((1 - e^{-2t}) u0^2 + e^{-2t}) for
/// u(0) = u0 > 0.
double scalar_ode_exact(double u0, double t);

}  // namespace dgflow
