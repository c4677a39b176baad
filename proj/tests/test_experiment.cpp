// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "dgflow/experiment.hpp"

using dgflow::least_squares_order;
using dgflow::observed_order;
using dgflow::RunConfig;

TEST_CASE("observed order") {
    CHECK(observed_order({1.0, 0.125}) == std::vector<double>{3.0});
    const auto orders = observed_order({1.0, 1.0 / 32.0, 1.0 / 1024.0});
    REQUIRE(orders.size() == 2);
    CHECK(orders[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(orders[1] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(observed_order({0.25, 0.25})[0] == 0.0);

    CHECK_THROWS_AS(observed_order({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(observed_order({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(observed_order({1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("least-squares slope recovers an exact power law") {
    std::vector<double> taus, errors;
    for (int i = 0; i < 5; ++i) {
        const double tau = 1.0 / (1 << i);
        taus.push_back(tau);
        errors.push_back(0.37 * std::pow(tau, 2.5));
    }
    CHECK(least_squares_order(taus, errors) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_THROWS_AS(least_squares_order({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("prepared runs fill in the defaults") {
    RunConfig config;
    config.problem = RunConfig::ProblemKind::ode;
    const auto prep = dgflow::prepare_run(config);
    CHECK(prep.mesh.final_time() == 20.0);
    CHECK(prep.problem->dim() == 1);

    RunConfig kdv;
    kdv.problem = RunConfig::ProblemKind::kdv;
    kdv.degree = 1;
    kdv.cells = 16;
    const auto kprep = dgflow::prepare_run(kdv);
    CHECK(kprep.problem->dim() == 16 * 2);  // default element degree 2k
    CHECK(kprep.mesh.final_time() ==
          doctest::Approx(dgflow::cnoidal_period(kdv.modulus, 1.0) / 3.2).epsilon(1e-13));
}

TEST_CASE("trace rows and csv output are deterministic") {
    RunConfig config;
    config.problem = RunConfig::ProblemKind::ode;
    config.degree = 1;
    config.n_time = 8;

    const auto run_to_string = [&] {
        const auto output = dgflow::run_experiment(config);
        std::ostringstream stream;
        dgflow::write_trace_csv(stream, config, output.rows);
        return stream.str();
    };
    const std::string first = run_to_string();
    const std::string second = run_to_string();
    CHECK(first == second);
    CHECK(first.substr(0, first.find('\n')) ==
          "n,t,u,energy,energy_identity_residual,newton_iters");
    // 8 intervals plus the initial row plus the header.
    CHECK(std::count(first.begin(), first.end(), '\n') == 10);
}

TEST_CASE("equilibrium initial data gives a constant trace") {
    RunConfig config;
    config.problem = RunConfig::ProblemKind::ode;
    config.ode_u0 = 1.0;
    config.n_time = 6;
    const auto output = dgflow::run_experiment(config);
    for (const auto& row : output.rows) {
        CHECK(row.value == 1.0);
        CHECK(row.energy == 0.0);
    }
}

TEST_CASE("ode energies in the trace are nonincreasing") {
    RunConfig config;
    config.problem = RunConfig::ProblemKind::ode;
    config.degree = 2;
    config.n_time = 8;
    const auto output = dgflow::run_experiment(config);
    for (std::size_t i = 1; i < output.rows.size(); ++i) {
        CHECK(output.rows[i].energy <= output.rows[i - 1].energy + 50.0 * config.newton_tol);
    }
}

TEST_CASE("convergence study on the ode shrinks the error") {
    RunConfig config;
    config.problem = RunConfig::ProblemKind::ode;
    config.degree = 1;
    const auto rows = dgflow::convergence_study(config, 2, 4);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].nodal_error > rows[1].nodal_error);
    CHECK(rows[1].nodal_error > rows[2].nodal_error);
    CHECK(rows[2].nodal_order > 1.5);  // approaching third order
    CHECK(std::isnan(rows[0].nodal_order));

    std::ostringstream stream;
    dgflow::write_convergence_csv(stream, rows);
    CHECK(stream.str().substr(0, stream.str().find('\n')) ==
          "level,tau,nodal_error,interior_error,nodal_order,interior_order,"
          "nodal_below_floor,interior_below_floor");
}
