// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "dgflow/problem.hpp"

namespace dgflow {

using EnergyFn = std::function<double(const StateVector&)>;
using GradientFn = std::function<StateVector(const StateVector&)>;
using InnerProductFn = std::function<double(const StateVector&, const StateVector&)>;

/// Midpoint discrete gradient of Gonzalez:
///
///   grad_d E(u,v) = grad E(m) + (E[v] - E[u] - <grad E(m), v-u>) / |v-u|^2 * (v-u),
///
/// with m = (u+v)/2. When |v-u| <= 1e-8 * (1 + |u| + |v|) the formula
/// degenerates (its numerator is energy-cancellation noise) and grad E(m) is
/// returned instead. `grad` returns the strong gradient (an element of H in
/// coordinates); `inner` is the inner product.
StateVector gonzalez_dgrad(const EnergyFn& energy, const GradientFn& grad,
                           const InnerProductFn& inner, const StateVector& u,
                           const StateVector& v);

/// Averaged vector field: the q_s-point Gauss approximation of
/// int_0^1 grad E((1-s) u + s v) ds. Exact whenever every component of
/// grad E is a polynomial of degree <= 2 q_s - 1 along the segment.
StateVector avf_dgrad(const GradientFn& grad, const StateVector& u,
                      const StateVector& v, int q_s = 3);

/// Coordinate-incremental discrete gradient of Itoh-Abe on H = R^d with the
/// Euclidean pairing. Entry j is the difference quotient of the energy in
/// coordinate j with the first j-1 coordinates already advanced to v. When
/// |u_j - v_j| <= coord_tol the quotient is replaced by a centered finite
/// difference with step max(1e-7, 1e-7 |z_j|), its limiting value.
StateVector itoh_abe_dgrad(const EnergyFn& energy, const StateVector& u,
                           const StateVector& v, double coord_tol = 1e-8);

/// Residual |E[a] - E[b] - <grad_d E(a,b), a-b>| of the defining identity,
/// evaluated through the problem's native dgrad_weak pairings.
double dgrad_identity_residual(const GradientSystemProblem& problem,
                               const StateVector& a, const StateVector& b);

/// Which discrete gradient a stepper should close its system with.
/// `problem_default` delegates to GradientSystemProblem::dgrad_weak; the
/// other kinds are built generically from the problem's energy, weak gradient
/// and Gram pairings.
struct DGradChoice {
    enum class Kind { problem_default, gonzalez, avf, itoh_abe };
    Kind kind = Kind::problem_default;
    int avf_points = 3;
    double itoh_abe_coord_tol = 1e-8;
};

/// Pairings <grad_d E(a,b), e_i> for the chosen construction.
StateVector weak_discrete_gradient(const GradientSystemProblem& problem,
                                   const DGradChoice& choice, const StateVector& a,
                                   const StateVector& b);

}  // namespace dgflow
