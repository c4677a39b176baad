// SPDX-License-Identifier: Apache-2.0
#include "dgflow/lagrange.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgflow {

NodalBasis::NodalBasis(Eigen::VectorXd nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 1) {
        throw std::invalid_argument("NodalBasis: at least one node required");
    }
    for (int i = 0; i < nodes_.size(); ++i) {
        for (int j = i + 1; j < nodes_.size(); ++j) {
            if (nodes_[i] == nodes_[j]) {
                throw std::invalid_argument("NodalBasis: nodes must be distinct");
            }
        }
    }
}

Eigen::VectorXd NodalBasis::eval(double t) const {
    const int n = static_cast<int>(nodes_.size());
    Eigen::VectorXd values(n);
    for (int j = 0; j < n; ++j) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            if (i != j) {
                prod *= (t - nodes_[i]) / (nodes_[j] - nodes_[i]);
            }
        }
        values[j] = prod;
    }
    return values;
}

Eigen::VectorXd NodalBasis::deriv(double t) const {
    const int n = static_cast<int>(nodes_.size());
    Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        double denom = 1.0;
        for (int i = 0; i < n; ++i) {
            if (i != j) {
                denom *= nodes_[j] - nodes_[i];
            }
        }
        double sum = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) {
                continue;
            }
            double prod = 1.0;
            for (int i = 0; i < n; ++i) {
                if (i != j && i != m) {
                    prod *= t - nodes_[i];
                }
            }
            sum += prod;
        }
        values[j] = sum / denom;
    }
    return values;
}

namespace {

// P_k, P_k' and P_k'' on [-1,1]; the second derivative follows from the
// Legendre differential equation.
void legendre_with_derivs(int k, double x, double& p, double& dp, double& ddp) {
    if (k == 0) {
        p = 1.0;
        dp = 0.0;
        ddp = 0.0;
        return;
    }
    double p_prev = 1.0;
    double p_cur = x;
    for (int j = 2; j <= k; ++j) {
        const double p_next = ((2 * j - 1) * x * p_cur - (j - 1) * p_prev) / j;
        p_prev = p_cur;
        p_cur = p_next;
    }
    p = p_cur;
    dp = k * (x * p_cur - p_prev) / (x * x - 1.0);
    ddp = (2.0 * x * dp - k * (k + 1) * p) / (1.0 - x * x);
}

}  // namespace

NodalBasis lobatto_nodes(int k) {
    if (k < 0) {
        throw std::invalid_argument("lobatto_nodes: degree must be >= 0");
    }
    if (k == 0) {
        Eigen::VectorXd single(1);
        single[0] = 1.0;
        return NodalBasis(single);
    }

    Eigen::VectorXd nodes(k + 1);
    nodes[0] = 0.0;
    nodes[k] = 1.0;

    // Interior nodes are the roots of P_k' on (-1,1); Chebyshev-Lobatto
    // initial guesses, refined by Newton.
    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    for (int i = 1; i < k; ++i) {
        double x = -std::cos(M_PI * i / k);
        double p, dp, ddp;
        for (int it = 0; it < 100; ++it) {
            legendre_with_derivs(k, x, p, dp, ddp);
            const double dx = -dp / ddp;
            x += dx;
            if (std::abs(dx) <= tol) {
                break;
            }
        }
        nodes[i] = 0.5 * (1.0 + x);
    }
    // Symmetrize about 1/2.
    for (int i = 1; i < k - i; ++i) {
        const double half_gap = 0.5 * (nodes[k - i] - nodes[i]);
        nodes[i] = 0.5 - half_gap;
        nodes[k - i] = 0.5 + half_gap;
    }
    if (k % 2 == 0) {
        nodes[k / 2] = 0.5;
    }
    return NodalBasis(nodes);
}

}  // namespace dgflow
