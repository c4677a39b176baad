// SPDX-License-Identifier: Apache-2.0
#include "dgflow/kdv.hpp"

#include <cmath>
#include <stdexcept>

#include "dgflow/elliptic.hpp"

namespace dgflow {
namespace {

Eigen::VectorXd equispaced_nodes(int degree) {
    Eigen::VectorXd nodes(degree + 1);
    for (int a = 0; a <= degree; ++a) {
        nodes[a] = static_cast<double>(a) / degree;
    }
    return nodes;
}

}  // namespace

KdVProblem::KdVProblem(KdVAssembly assembly)
    : assembly_(std::move(assembly)),
      element_basis_(equispaced_nodes(assembly_.element_degree)),
      mass_llt_(assembly_.mass) {
    if (mass_llt_.info() != Eigen::Success) {
        throw std::runtime_error("KdVProblem: mass matrix is not positive definite");
    }
}

StateVector KdVProblem::gram_apply(const StateVector& x) const {
    return assembly_.mass * x;
}

StateVector KdVProblem::gram_solve(const StateVector& rhs) const {
    return mass_llt_.solve(rhs);
}

double KdVProblem::eval_in_cell(const StateVector& u, int c,
                                const Eigen::VectorXd& shape) const {
    double value = 0.0;
    for (int a = 0; a <= assembly_.element_degree; ++a) {
        value += shape[a] * u[assembly_.global_dof(c, a)];
    }
    return value;
}

double KdVProblem::energy(const StateVector& u) const {
    double cubic = 0.0;
    for (int c = 0; c < assembly_.cells; ++c) {
        for (int qi = 0; qi < assembly_.cell_quad.size(); ++qi) {
            const double v = eval_in_cell(u, c, assembly_.shape_at_quad.col(qi));
            cubic += assembly_.cell_quad.weights[qi] * v * v * v;
        }
    }
    cubic *= assembly_.h;
    return 0.5 * u.dot(assembly_.stiffness * u) - cubic;
}

StateVector KdVProblem::grad_weak(const StateVector& u) const {
    StateVector g = assembly_.stiffness * u;
    for (int c = 0; c < assembly_.cells; ++c) {
        for (int qi = 0; qi < assembly_.cell_quad.size(); ++qi) {
            const double v = eval_in_cell(u, c, assembly_.shape_at_quad.col(qi));
            const double wv = assembly_.h * assembly_.cell_quad.weights[qi] * 3.0 * v * v;
            for (int a = 0; a <= assembly_.element_degree; ++a) {
                g[assembly_.global_dof(c, a)] -= wv * assembly_.shape_at_quad(a, qi);
            }
        }
    }
    return g;
}

StateVector KdVProblem::op_weak(const StateVector&, const StateVector& p) const {
    return assembly_.skew * p;
}

StateVector KdVProblem::dgrad_weak(const StateVector& a, const StateVector& b) const {
    StateVector g = 0.5 * (assembly_.stiffness * (a + b));
    for (int c = 0; c < assembly_.cells; ++c) {
        for (int qi = 0; qi < assembly_.cell_quad.size(); ++qi) {
            const Eigen::VectorXd& shape = assembly_.shape_at_quad.col(qi);
            const double va = eval_in_cell(a, c, shape);
            const double vb = eval_in_cell(b, c, shape);
            const double wv =
                assembly_.h * assembly_.cell_quad.weights[qi] * (va * va + va * vb + vb * vb);
            for (int node = 0; node <= assembly_.element_degree; ++node) {
                g[assembly_.global_dof(c, node)] -= wv * assembly_.shape_at_quad(node, qi);
            }
        }
    }
    return g;
}

KdVProblem build_kdv_problem(int cells, int degree, double domain_length) {
    if (cells < 3 || degree < 1 || !(domain_length > 0.0)) {
        throw std::invalid_argument("build_kdv_problem: invalid mesh parameters");
    }

    KdVAssembly asmb;
    asmb.domain_length = domain_length;
    asmb.cells = cells;
    asmb.element_degree = degree;
    asmb.h = domain_length / cells;
    asmb.dofs = degree * cells;

    // Exact for the degree-3l cubic integrand (and every bilinear term), with
    // one extra point of margin.
    const int n_q = (3 * degree + 1 + 1) / 2 + 1;
    asmb.cell_quad = gauss_legendre(n_q);

    const NodalBasis element(equispaced_nodes(degree));
    asmb.shape_at_quad.resize(degree + 1, n_q);
    Eigen::MatrixXd dshape(degree + 1, n_q);
    for (int qi = 0; qi < n_q; ++qi) {
        asmb.shape_at_quad.col(qi) = element.eval(asmb.cell_quad.nodes[qi]);
        dshape.col(qi) = element.deriv(asmb.cell_quad.nodes[qi]);
    }

    // Reference-cell matrices; the mesh Jacobian h enters as h, 1, 1/h.
    const int n_loc = degree + 1;
    Eigen::MatrixXd mass_loc = Eigen::MatrixXd::Zero(n_loc, n_loc);
    Eigen::MatrixXd skew_loc = Eigen::MatrixXd::Zero(n_loc, n_loc);
    Eigen::MatrixXd stiff_loc = Eigen::MatrixXd::Zero(n_loc, n_loc);
    for (int qi = 0; qi < n_q; ++qi) {
        const double w = asmb.cell_quad.weights[qi];
        for (int i = 0; i < n_loc; ++i) {
            for (int j = 0; j < n_loc; ++j) {
                mass_loc(i, j) += w * asmb.shape_at_quad(i, qi) * asmb.shape_at_quad(j, qi);
                skew_loc(i, j) += w * asmb.shape_at_quad(i, qi) * dshape(j, qi);
                stiff_loc(i, j) += w * dshape(i, qi) * dshape(j, qi);
            }
        }
    }

    asmb.mass = Eigen::MatrixXd::Zero(asmb.dofs, asmb.dofs);
    asmb.skew = Eigen::MatrixXd::Zero(asmb.dofs, asmb.dofs);
    asmb.stiffness = Eigen::MatrixXd::Zero(asmb.dofs, asmb.dofs);
    for (int c = 0; c < cells; ++c) {
        for (int i = 0; i < n_loc; ++i) {
            const int gi = asmb.global_dof(c, i);
            for (int j = 0; j < n_loc; ++j) {
                const int gj = asmb.global_dof(c, j);
                asmb.mass(gi, gj) += asmb.h * mass_loc(i, j);
                asmb.skew(gi, gj) += skew_loc(i, j);
                asmb.stiffness(gi, gj) += stiff_loc(i, j) / asmb.h;
            }
        }
    }
    // Enforce exact skewness; under periodicity the symmetric part is pure
    // roundoff from the element boundary terms.
    asmb.skew = 0.5 * (asmb.skew - asmb.skew.transpose()).eval();

    asmb.node_x.resize(asmb.dofs);
    for (int c = 0; c < cells; ++c) {
        for (int a = 0; a < degree; ++a) {
            asmb.node_x[c * degree + a] = (c + static_cast<double>(a) / degree) * asmb.h;
        }
    }

    return KdVProblem(std::move(asmb));
}

double cnoidal_speed(double modulus, double kappa, double alpha) {
    const double m = modulus * modulus;
    return 6.0 * alpha + 4.0 * (2.0 * m - 1.0) * kappa * kappa;
}

double cnoidal_period(double modulus, double kappa) {
    return 2.0 * elliptic_K(modulus * modulus) / kappa;
}

double cnoidal_exact(double x, double t, double modulus, double kappa, double alpha) {
    const double m = modulus * modulus;
    const double c = cnoidal_speed(modulus, kappa, alpha);
    double xi = kappa * (x - c * t);
    // cn^2 has period 2K; reduce the phase so accuracy is uniform in t.
    const double period = 2.0 * elliptic_K(m);
    xi = std::fmod(xi, period);
    if (xi < 0.0) {
        xi += period;
    }
    const double cn = jacobi_cn(xi, m);
    return alpha + 2.0 * kappa * kappa * m * cn * cn;
}

StateVector interpolate_initial(const KdVProblem& problem,
                                const std::function<double(double)>& f) {
    const KdVAssembly& asmb = problem.assembly();
    StateVector u(asmb.dofs);
    for (int g = 0; g < asmb.dofs; ++g) {
        u[g] = f(asmb.node_x[g]);
    }
    return u;
}

}  // namespace dgflow
