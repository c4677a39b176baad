// SPDX-License-Identifier: Apache-2.0
#include "dgflow/scalar_ode.hpp"

#include <cmath>
#include <stdexcept>

namespace dgflow {

double ScalarODEProblem::energy(const StateVector& u) const {
    const double w = 1.0 - u[0] * u[0];
    return 0.25 * w * w;
}

StateVector ScalarODEProblem::grad_weak(const StateVector& u) const {
    StateVector g(1);
    g[0] = u[0] * u[0] * u[0] - u[0];
    return g;
}

StateVector ScalarODEProblem::op_weak(const StateVector&, const StateVector& p) const {
    return -p;
}

StateVector ScalarODEProblem::dgrad_weak(const StateVector& a, const StateVector& b) const {
    StateVector g(1);
    g[0] = scalar_dgrad_closed(a[0], b[0]);
    return g;
}

double scalar_dgrad_closed(double u, double v) {
    // Grouped so the evaluation is exactly symmetric in (u, v).
    return (u + v) * (0.25 * (u * u + v * v) - 0.5);
}

double scalar_ode_exact(double u0, double t) {
    if (!(u0 > 0.0)) {
        throw std::invalid_argument("scalar_ode_exact: initial value must be positive");
    }
    const double decay = std::exp(-2.0 * t);
    return u0 / std::sqrt((1.0 - decay) * u0 * u0 + decay);
}

}  // namespace dgflow
