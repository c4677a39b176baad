// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "dgflow/quadrature.hpp"

using dgflow::gauss_legendre;

TEST_CASE("one-point rule is the midpoint rule") {
    const auto rule = gauss_legendre(1);
    REQUIRE(rule.size() == 1);
    CHECK(rule.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-point rule matches the moment-equation solution") {
    // Solving sum w s^j = 1/(j+1) for j = 0..3 by hand gives nodes
    // 1/2 -+ 1/(2 sqrt(3)) with equal weights.
    const double lo = 0.5 - 0.5 / std::sqrt(3.0);
    const double hi = 0.5 + 0.5 / std::sqrt(3.0);
    const auto rule = gauss_legendre(2);
    REQUIRE(rule.size() == 2);
    CHECK(rule.nodes[0] == doctest::Approx(lo).epsilon(1e-14));
    CHECK(rule.nodes[1] == doctest::Approx(hi).epsilon(1e-14));
    CHECK(rule.nodes[0] == doctest::Approx(0.2113248654051871).epsilon(1e-12));
    CHECK(rule.nodes[1] == doctest::Approx(0.7886751345948129).epsilon(1e-12));
    CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("three-point rule integrates s^5 exactly") {
    const auto rule = gauss_legendre(3);
    double integral = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        integral += rule.weights[i] * std::pow(rule.nodes[i], 5);
    }
    CHECK(std::abs(integral - 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("monomial exactness up to degree 2q-1") {
    for (int q = 1; q <= 8; ++q) {
        const auto rule = gauss_legendre(q);
        CHECK(std::abs(rule.weights.sum() - 1.0) <= 1e-14);
        for (int i = 0; i < rule.size(); ++i) {
            CHECK(rule.nodes[i] > 0.0);
            CHECK(rule.nodes[i] < 1.0);
        }
        for (int j = 0; j <= 2 * q - 1; ++j) {
            double integral = 0.0;
            for (int i = 0; i < rule.size(); ++i) {
                integral += rule.weights[i] * std::pow(rule.nodes[i], j);
            }
            CHECK(std::abs(integral - 1.0 / (j + 1)) <= 1e-13);
        }
    }
}

TEST_CASE("invalid point count is rejected") {
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(-2), std::invalid_argument);
}
