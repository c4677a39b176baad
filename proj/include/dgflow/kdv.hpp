// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "dgflow/lagrange.hpp"
#include "dgflow/problem.hpp"
#include "dgflow/quadrature.hpp"

namespace dgflow {

/// Periodic uniform P^l Lagrange finite-element discretization of an interval
/// of length `domain_length`, with the matrices needed by the semidiscrete
/// KdV gradient system:
///   mass       M_ij = (phi_j, phi_i)
///   skew       D_ij = (phi_j', phi_i)   (antisymmetrized, so D + D^T = 0)
///   stiffness  S_ij = (phi_j', phi_i')  (S 1 = 0)
/// Element nodes are equispaced within each cell; global degrees of freedom
/// number l * cells after periodic identification.
struct KdVAssembly {
    double domain_length = 0.0;
    int cells = 0;
    int element_degree = 0;
    double h = 0.0;
    int dofs = 0;

    Eigen::MatrixXd mass;
    Eigen::MatrixXd skew;
    Eigen::MatrixXd stiffness;

    QuadratureRule cell_quad;       // reference-cell rule, exact for the cubic term
    Eigen::MatrixXd shape_at_quad;  // (l+1) x n_q reference shape values
    std::vector<double> node_x;     // coordinate of each global degree of freedom

    /// Global dof of local node `a` in cell `c`.
    int global_dof(int c, int a) const { return (c * element_degree + a) % dofs; }
};

/// Semidiscrete KdV equation u_t + 6 u u_x + u_xxx = 0 as a gradient system on
/// the finite-element space: energy E[u] = int (u_x^2 / 2 - u^3) dx, operator
/// L = d/dx (skew-symmetric under periodicity), Gram matrix M. The native
/// discrete gradient is the weak-form construction
///   <grad_d E(a,b), q> = ((a_x + b_x)/2, q_x) - (a^2 + a b + b^2, q),
/// which is symmetric in (a, b).
class KdVProblem final : public GradientSystemProblem {
public:
    explicit KdVProblem(KdVAssembly assembly);

    const KdVAssembly& assembly() const { return assembly_; }

    int dim() const override { return assembly_.dofs; }
    StateVector gram_apply(const StateVector& x) const override;
    StateVector gram_solve(const StateVector& rhs) const override;
    double energy(const StateVector& u) const override;
    StateVector grad_weak(const StateVector& u) const override;
    StateVector op_weak(const StateVector& u_ctx, const StateVector& p) const override;
    StateVector dgrad_weak(const StateVector& a, const StateVector& b) const override;
    OperatorStructure op_structure() const override {
        return OperatorStructure::skew_symmetric;
    }

    /// Evaluate the finite-element function with coefficients u at local
    /// coordinate s in [0,1] of cell c.
    double eval_in_cell(const StateVector& u, int c, const Eigen::VectorXd& shape) const;

    /// Reference shape values at local coordinate s.
    Eigen::VectorXd shape_values(double s) const { return element_basis_.eval(s); }

private:
    KdVAssembly assembly_;
    NodalBasis element_basis_;
    Eigen::LLT<Eigen::MatrixXd> mass_llt_;
};

/// Assemble the periodic mesh with `cells` elements of degree `degree` on an
/// interval of length `domain_length`.
KdVProblem build_kdv_problem(int cells, int degree, double domain_length);

/// Traveling cnoidal wave alpha + 2 kappa^2 modulus^2 cn^2(kappa (x - c t) | m)
/// with m = modulus^2 and speed c = 6 alpha + 4 (2 modulus^2 - 1) kappa^2.
/// Space-periodic with period 2 K(m) / kappa.
double cnoidal_exact(double x, double t, double modulus, double kappa, double alpha);

/// Wave speed c for the cnoidal parameters.
double cnoidal_speed(double modulus, double kappa, double alpha);

/// Spatial period 2 K(modulus^2) / kappa of the cnoidal wave.
double cnoidal_period(double modulus, double kappa);

/// Nodal interpolant of f onto the finite-element space.
StateVector interpolate_initial(const KdVProblem& problem,
                                const std::function<double(double)>& f);

}  // namespace dgflow
