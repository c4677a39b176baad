// SPDX-License-Identifier: Apache-2.0
#include "dgflow/problem.hpp"

namespace dgflow {

double GradientSystemProblem::gram(const StateVector& a, const StateVector& b) const {
    return a.dot(gram_apply(b));
}

}  // namespace dgflow
