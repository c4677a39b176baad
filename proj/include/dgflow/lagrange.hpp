// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace dgflow {

/// Nodal Lagrange basis on [0,1]: cardinal function j is 1 at node j and 0 at
/// the other nodes, so nodal values double as polynomial coefficients.
class NodalBasis {
public:
    /// Nodes must be pairwise distinct.
    explicit NodalBasis(Eigen::VectorXd nodes);

    int degree() const { return static_cast<int>(nodes_.size()) - 1; }
    const Eigen::VectorXd& nodes() const { return nodes_; }

    /// Values of all cardinal functions at t. Entries sum to 1.
    Eigen::VectorXd eval(double t) const;

    /// Derivatives of all cardinal functions at t. Entries sum to 0.
    Eigen::VectorXd deriv(double t) const;

private:
    Eigen::VectorXd nodes_;
};

/// Nodal basis at the Gauss-Lobatto points of degree k on [0,1]. For k = 0
/// the single node is {1}; for k >= 1 the nodes include both endpoints, so
/// the value at 0 (right limit across a mesh node) and the value at 1 are raw
/// coefficients.
NodalBasis lobatto_nodes(int k);

}  // namespace dgflow
