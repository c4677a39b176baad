// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace dgflow {

/// Coordinate vector of a state in the underlying (finite-dimensional, real)
/// Hilbert space.
using StateVector = Eigen::VectorXd;

/// Structure of the linear operator driving the evolution. Skew-symmetric
/// operators conserve the energy along solutions, negative semi-definite ones
/// dissipate it.
enum class OperatorStructure { skew_symmetric, negative_semidefinite, general };

/// A gradient system du/dt = L(u) grad E(u) posed on a real Hilbert space H,
/// realized in coordinates with respect to a fixed basis {e_i}.
///
/// The inner product of H is <a,b> = a^T G b for the Gram matrix G (identity
/// for plain ODE systems, the mass matrix for Galerkin discretizations). All
/// "weak" members return pairings against the basis: the i-th entry of
/// grad_weak(u) is <grad E(u), e_i>, and likewise for op_weak and dgrad_weak.
/// Working with pairings keeps one stepper implementation valid for both the
/// ODE and the finite-element case.
class GradientSystemProblem {
public:
    virtual ~GradientSystemProblem() = default;

    /// Dimension d of the coordinate space.
    virtual int dim() const = 0;

    /// G x, i.e. the vector of pairings <x, e_i>.
    virtual StateVector gram_apply(const StateVector& x) const = 0;

    /// Solve G c = rhs for c.
    virtual StateVector gram_solve(const StateVector& rhs) const = 0;

    /// Inner product <a, b> of H.
    virtual double gram(const StateVector& a, const StateVector& b) const;

    /// Energy functional E[u].
    virtual double energy(const StateVector& u) const = 0;

    /// Pairings <grad E(u), e_i>. Coincides with the partial derivatives of
    /// energy() with respect to the coordinates of u.
    virtual StateVector grad_weak(const StateVector& u) const = 0;

    /// Pairings <L(u_ctx) p, e_i>.
    virtual StateVector op_weak(const StateVector& u_ctx, const StateVector& p) const = 0;

    /// Pairings <grad_d E(a, b), e_i> for the problem's native discrete
    /// gradient. Must satisfy the two defining properties:
    ///   (i)  E[a] - E[b] = <grad_d E(a,b), a - b>,
    ///   (ii) grad_d E(u,u) = grad E(u).
    virtual StateVector dgrad_weak(const StateVector& a, const StateVector& b) const = 0;

    virtual OperatorStructure op_structure() const = 0;
};

}  // namespace dgflow
