// SPDX-License-Identifier: Apache-2.0
#include "dgflow/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgflow {
namespace {

// P_n(x) and P_n'(x) on [-1,1] via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    double p_prev = 1.0;
    double p_cur = x;
    for (int j = 2; j <= n; ++j) {
        const double p_next = ((2 * j - 1) * x * p_cur - (j - 1) * p_prev) / j;
        p_prev = p_cur;
        p_cur = p_next;
    }
    p = p_cur;
    dp = n * (x * p_cur - p_prev) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int q) {
    if (q < 1) {
        throw std::invalid_argument("gauss_legendre: point count must be >= 1");
    }

    QuadratureRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);

    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    for (int i = 0; i < (q + 1) / 2; ++i) {
        // Roots in decreasing order starting near +1; Chebyshev initial guess.
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre_eval(q, x, p, dp);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) <= tol * std::max(1.0, std::abs(x))) {
                break;
            }
        }
        legendre_eval(q, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map to [0,1] keeping the rule exactly symmetric.
        rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[i] = 0.5 * w;
        rule.weights[q - 1 - i] = 0.5 * w;
    }
    if (q % 2 == 1) {
        double p = 0.0, dp = 1.0;
        legendre_eval(q, 0.0, p, dp);
        rule.nodes[q / 2] = 0.5;
        rule.weights[q / 2] = 1.0 / (dp * dp);
    }
    return rule;
}

}  // namespace dgflow
