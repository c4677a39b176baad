// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace dgflow {

/// Quadrature rule on the reference interval [0,1]; weights sum to 1.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// q-point Gauss-Legendre rule mapped to [0,1], exact for polynomials of
/// degree <= 2q-1. Nodes are computed by Newton iteration on the Legendre
/// polynomial, so any q >= 1 is available.
QuadratureRule gauss_legendre(int q);

}  // namespace dgflow
