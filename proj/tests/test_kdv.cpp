// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "dgflow/elliptic.hpp"
#include "dgflow/kdv.hpp"
#include "dgflow/stepper.hpp"
#include "oracles.hpp"

using dgflow::build_kdv_problem;
using dgflow::cnoidal_exact;
using dgflow::cnoidal_period;
using dgflow::cnoidal_speed;
using dgflow::KdVProblem;
using dgflow::StateVector;

namespace {

const double kModulus = std::sqrt(0.9);

// Pairings (w, phi_i) with w = f(a_h, b_h), recomputed with adaptive Simpson
// on every cell as an independent check of the assembled cell quadrature.
StateVector pairing_by_adaptive_quadrature(
    const KdVProblem& problem, const std::function<double(double, double)>& f,
    const StateVector& a, const StateVector& b) {
    const auto& asmb = problem.assembly();
    StateVector out = StateVector::Zero(asmb.dofs);
    for (int c = 0; c < asmb.cells; ++c) {
        for (int node = 0; node <= asmb.element_degree; ++node) {
            const double integral = oracles::adaptive_simpson(
                [&](double s) {
                    const Eigen::VectorXd shape = problem.shape_values(s);
                    return f(problem.eval_in_cell(a, c, shape),
                             problem.eval_in_cell(b, c, shape)) *
                           shape[node];
                },
                0.0, 1.0, 1e-14);
            out[asmb.global_dof(c, node)] += asmb.h * integral;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("assembly validation") {
    CHECK_THROWS_AS(build_kdv_problem(2, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kdv_problem(8, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kdv_problem(8, 1, -1.0), std::invalid_argument);
}

TEST_CASE("linear elements give the periodic tridiagonal mass matrix") {
    const auto problem = build_kdv_problem(8, 1, 4.0);
    const auto& M = problem.assembly().mass;
    const double h = 0.5;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const int gap = std::min((i - j + 8) % 8, (j - i + 8) % 8);
            const double expected = gap == 0 ? 2.0 * h / 3.0 : (gap == 1 ? h / 6.0 : 0.0);
            CHECK(std::abs(M(i, j) - expected) <= 1e-14);
        }
    }
}

TEST_CASE("matrix structure") {
    const auto problem = build_kdv_problem(12, 2, 5.0);
    const auto& asmb = problem.assembly();
    const int d = asmb.dofs;
    const StateVector ones = StateVector::Ones(d);

    SUBCASE("skew matrix annihilates constants and is exactly antisymmetric") {
        CHECK((asmb.skew + asmb.skew.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((asmb.skew * ones).lpNorm<Eigen::Infinity>() <= 1e-12);
        CHECK((asmb.skew.transpose() * ones).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
    SUBCASE("stiffness matrix is symmetric positive semidefinite with constant kernel") {
        CHECK((asmb.stiffness - asmb.stiffness.transpose()).lpNorm<Eigen::Infinity>() <= 1e-12);
        CHECK((asmb.stiffness * ones).lpNorm<Eigen::Infinity>() <= 1e-11);
        oracles::UniformSampler rng(3u);
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector x = rng.vector(d, -1.0, 1.0);
            CHECK(x.dot(asmb.stiffness * x) >= -1e-10);
        }
    }
    SUBCASE("mass matrix row sums integrate the basis") {
        // For quadratic cardinals the reference integrals are 1/6, 2/3, 1/6.
        const StateVector row_sums = asmb.mass * ones;
        for (int c = 0; c < asmb.cells; ++c) {
            CHECK(row_sums[asmb.global_dof(c, 0)] ==
                  doctest::Approx(asmb.h / 3.0).epsilon(1e-12));
            CHECK(row_sums[asmb.global_dof(c, 1)] ==
                  doctest::Approx(2.0 * asmb.h / 3.0).epsilon(1e-12));
        }
        CHECK(row_sums.sum() == doctest::Approx(asmb.domain_length).epsilon(1e-13));
    }
    SUBCASE("skew pairing vanishes on the diagonal") {
        oracles::UniformSampler rng(5u);
        const double scale = asmb.skew.cwiseAbs().maxCoeff();
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector p = rng.vector(d, -2.0, 2.0);
            CHECK(std::abs(p.dot(asmb.skew * p)) <= 1e-13 * p.squaredNorm() * scale);
        }
    }
}

TEST_CASE("weak gradient matches finite differences of the energy") {
    const auto problem = build_kdv_problem(6, 2, 5.0);
    oracles::UniformSampler rng(7u);
    const double h = 1e-6;
    for (int trial = 0; trial < 5; ++trial) {
        StateVector u = rng.vector(problem.dim(), -1.5, 1.5);
        const StateVector g = problem.grad_weak(u);
        const double scale = 1.0 + g.lpNorm<Eigen::Infinity>();
        for (int i = 0; i < problem.dim(); ++i) {
            const double saved = u[i];
            u[i] = saved + h;
            const double e_plus = problem.energy(u);
            u[i] = saved - h;
            const double e_minus = problem.energy(u);
            u[i] = saved;
            CHECK(std::abs(g[i] - (e_plus - e_minus) / (2.0 * h)) <= 1e-5 * scale);
        }
    }
}

TEST_CASE("weak discrete gradient") {
    const auto problem = build_kdv_problem(8, 2, 5.0);
    oracles::UniformSampler rng(11u);
    const int d = problem.dim();

    SUBCASE("consistency at equal arguments") {
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector u = rng.vector(d, -2.0, 2.0);
            const StateVector g = problem.grad_weak(u);
            CHECK((problem.dgrad_weak(u, u) - g).lpNorm<Eigen::Infinity>() <=
                  1e-12 * (1.0 + g.lpNorm<Eigen::Infinity>()));
        }
    }
    SUBCASE("symmetric in its two arguments") {
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector a = rng.vector(d, -2.0, 2.0);
            const StateVector b = rng.vector(d, -2.0, 2.0);
            CHECK((problem.dgrad_weak(a, b) - problem.dgrad_weak(b, a))
                      .lpNorm<Eigen::Infinity>() <= 1e-13);
        }
    }
    SUBCASE("chain rule against the coordinate difference") {
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector a = rng.vector(d, -2.0, 2.0);
            const StateVector b = rng.vector(d, -2.0, 2.0);
            const double gap = problem.energy(a) - problem.energy(b);
            const double paired = problem.dgrad_weak(a, b).dot(a - b);
            CHECK(std::abs(gap - paired) <=
                  1e-10 * (1.0 + std::abs(problem.energy(a)) + std::abs(problem.energy(b))));
        }
    }
    SUBCASE("cell quadrature agrees with adaptive quadrature") {
        const StateVector a = rng.vector(d, -2.0, 2.0);
        const StateVector b = rng.vector(d, -2.0, 2.0);
        const auto& S = problem.assembly().stiffness;

        const StateVector expected =
            0.5 * (S * (a + b)) -
            pairing_by_adaptive_quadrature(
                problem, [](double va, double vb) { return va * va + va * vb + vb * vb; }, a,
                b);
        CHECK((problem.dgrad_weak(a, b) - expected).lpNorm<Eigen::Infinity>() <= 1e-11);

        // Opposite arguments collapse the cubic pairing to (a^2, phi).
        const StateVector expected_opp =
            -pairing_by_adaptive_quadrature(
                problem, [](double va, double) { return va * va; }, a, -a);
        CHECK((problem.dgrad_weak(a, -a) - expected_opp).lpNorm<Eigen::Infinity>() <= 1e-11);
    }
}

TEST_CASE("cnoidal wave") {
    SUBCASE("speed and amplitude at the reference parameters") {
        CHECK(cnoidal_speed(kModulus, 1.0, 0.0) == doctest::Approx(3.2).epsilon(1e-14));
        CHECK(cnoidal_exact(0.0, 0.0, kModulus, 1.0, 0.0) ==
              doctest::Approx(1.8).epsilon(1e-14));
        CHECK(cnoidal_period(kModulus, 1.0) ==
              doctest::Approx(2.0 * dgflow::elliptic_K(0.9)).epsilon(1e-15));
    }
    SUBCASE("space periodicity") {
        const double L = cnoidal_period(kModulus, 1.0);
        for (int i = 0; i < 25; ++i) {
            const double x = L * i / 25.0;
            CHECK(std::abs(cnoidal_exact(x + L, 0.3, kModulus, 1.0, 0.0) -
                           cnoidal_exact(x, 0.3, kModulus, 1.0, 0.0)) <= 1e-11);
        }
    }
    SUBCASE("time periodicity") {
        const double L = cnoidal_period(kModulus, 1.0);
        const double T = L / cnoidal_speed(kModulus, 1.0, 0.0);
        for (int i = 0; i < 25; ++i) {
            const double x = L * i / 25.0;
            CHECK(std::abs(cnoidal_exact(x, T, kModulus, 1.0, 0.0) -
                           cnoidal_exact(x, 0.0, kModulus, 1.0, 0.0)) <= 1e-11);
        }
    }
}

TEST_CASE("cnoidal wave satisfies the equation on a spectral grid") {
    const double L = cnoidal_period(kModulus, 1.0);
    const double c = cnoidal_speed(kModulus, 1.0, 0.0);
    const int n = 2048;
    const double t = 0.3;

    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) {
        u[j] = cnoidal_exact(L * j / n, t, kModulus, 1.0, 0.0);
    }
    const auto deriv = oracles::spectral_derivatives(u, L);

    // Traveling wave: u_t = -c u_x, so the defect is (6u - c) u_x + u_xxx.
    double max_residual = 0.0;
    double max_term = 1.0;
    for (int j = 0; j < n; ++j) {
        max_residual =
            std::max(max_residual, std::abs((6.0 * u[j] - c) * deriv.d1[j] + deriv.d3[j]));
        max_term = std::max(max_term, std::abs(deriv.d3[j]));
    }
    CHECK(max_residual <= 1e-6 * max_term);
}

TEST_CASE("nodal interpolation") {
    const auto problem = build_kdv_problem(16, 2, 5.0);

    SUBCASE("constants are reproduced") {
        const StateVector u = dgflow::interpolate_initial(problem, [](double) { return 0.7; });
        CHECK((u.array() - 0.7).abs().maxCoeff() == 0.0);
    }
    SUBCASE("node values are exact") {
        const auto f = [](double x) { return std::sin(x) + 0.25 * x; };
        const StateVector u = dgflow::interpolate_initial(problem, f);
        const auto& asmb = problem.assembly();
        for (int g = 0; g < asmb.dofs; ++g) {
            CHECK(u[g] == f(asmb.node_x[g]));
        }
    }
    SUBCASE("L2 error decays at the expected rate") {
        const double length = 5.0;
        const auto f = [&](double x) {
            return std::sin(2.0 * M_PI * x / length) + 0.3 * std::cos(4.0 * M_PI * x / length);
        };
        for (int degree : {1, 2}) {
            std::vector<double> errors;
            for (int cells : {8, 16, 32, 64}) {
                const auto p = build_kdv_problem(cells, degree, length);
                const StateVector u = dgflow::interpolate_initial(p, f);
                double err_sq = 0.0;
                for (int c = 0; c < cells; ++c) {
                    err_sq += p.assembly().h *
                              oracles::adaptive_simpson(
                                  [&](double s) {
                                      const double diff =
                                          p.eval_in_cell(u, c, p.shape_values(s)) -
                                          f((c + s) * p.assembly().h);
                                      return diff * diff;
                                  },
                                  0.0, 1.0, 1e-15);
                }
                errors.push_back(std::sqrt(err_sq));
            }
            for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
                const double order = std::log2(errors[i] / errors[i + 1]);
                CHECK(order >= degree + 0.6);
                CHECK(order <= degree + 1.5);
            }
        }
    }
}

TEST_CASE("conservation over a short run") {
    const double L = cnoidal_period(kModulus, 1.0);
    const auto problem = build_kdv_problem(16, 2, L);
    const StateVector u0 = dgflow::interpolate_initial(
        problem, [&](double x) { return cnoidal_exact(x, 0.0, kModulus, 1.0, 0.0); });

    dgflow::StepperOptions opts;
    opts.degree = 1;
    const double T = L / cnoidal_speed(kModulus, 1.0, 0.0) / 4.0;
    const dgflow::TimeMesh mesh = dgflow::TimeMesh::uniform(T, 8);
    const dgflow::Trajectory traj = dgflow::integrate(problem, u0, mesh, opts);

    const double e0 = problem.energy(u0);
    const double mass0 = (problem.assembly().mass * u0).sum();
    const double energy_bound = 50.0 * 8 * opts.newton.abs_tol * (1.0 + std::abs(e0));
    for (int n = 1; n <= 8; ++n) {
        const StateVector u_n = traj.nodal_state(n);
        CHECK(std::abs(problem.energy(u_n) - e0) <= energy_bound);
        CHECK(std::abs((problem.assembly().mass * u_n).sum() - mass0) <=
              1e-11 * std::abs(mass0));
        CHECK(dgflow::energy_identity_residual(problem, traj, n) <=
              50.0 * opts.newton.abs_tol * (1.0 + std::abs(e0)));
    }
}
