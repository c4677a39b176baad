// SPDX-License-Identifier: Apache-2.0
#include "dgflow/discrete_gradient.hpp"

#include <cmath>
#include <stdexcept>

#include "dgflow/quadrature.hpp"

namespace dgflow {
namespace {

void require_same_dim(const StateVector& u, const StateVector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("discrete gradient: dimension mismatch");
    }
}

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw std::runtime_error(std::string("discrete gradient: non-finite ") + what);
    }
}

}  // namespace

StateVector gonzalez_dgrad(const EnergyFn& energy, const GradientFn& grad,
                           const InnerProductFn& inner, const StateVector& u,
                           const StateVector& v) {
    require_same_dim(u, v);

    const StateVector diff = v - u;
    const double dist_sq = inner(diff, diff);
    const double scale =
        1.0 + std::sqrt(inner(u, u)) + std::sqrt(inner(v, v));
    // Below the sqrt(eps) crossover the energy-difference numerator is pure
    // cancellation noise while the omitted correction is O(|v-u|^2), so the
    // midpoint gradient is the more accurate value (and exact at u = v).
    if (std::sqrt(dist_sq) <= 1e-8 * scale) {
        StateVector g = grad(0.5 * (u + v));
        if (!g.allFinite()) {
            throw std::runtime_error("gonzalez_dgrad: non-finite gradient");
        }
        return g;
    }

    const StateVector mid = 0.5 * (u + v);
    const StateVector grad_mid = grad(mid);
    if (!grad_mid.allFinite()) {
        throw std::runtime_error("gonzalez_dgrad: non-finite gradient");
    }
    const double e_u = energy(u);
    const double e_v = energy(v);
    require_finite(e_u, "energy");
    require_finite(e_v, "energy");

    const double correction = (e_v - e_u - inner(grad_mid, diff)) / dist_sq;
    return grad_mid + correction * diff;
}

StateVector avf_dgrad(const GradientFn& grad, const StateVector& u,
                      const StateVector& v, int q_s) {
    require_same_dim(u, v);
    if (q_s < 1) {
        throw std::invalid_argument("avf_dgrad: need at least one Gauss point");
    }

    const QuadratureRule rule = gauss_legendre(q_s);
    StateVector result = StateVector::Zero(u.size());
    for (int a = 0; a < rule.size(); ++a) {
        const double s = rule.nodes[a];
        result += rule.weights[a] * grad((1.0 - s) * u + s * v);
    }
    if (!result.allFinite()) {
        throw std::runtime_error("avf_dgrad: non-finite gradient");
    }
    return result;
}

StateVector itoh_abe_dgrad(const EnergyFn& energy, const StateVector& u,
                           const StateVector& v, double coord_tol) {
    require_same_dim(u, v);
    if (!(coord_tol > 0.0)) {
        throw std::invalid_argument("itoh_abe_dgrad: coord_tol must be positive");
    }

    const int d = static_cast<int>(u.size());
    StateVector result(d);
    StateVector mixed = u;  // coordinates 0..j-1 hold v, the rest hold u
    double e_prev = energy(mixed);
    require_finite(e_prev, "energy");

    for (int j = 0; j < d; ++j) {
        const double delta = u[j] - v[j];
        mixed[j] = v[j];
        const double e_next = energy(mixed);
        require_finite(e_next, "energy");

        if (std::abs(delta) <= coord_tol) {
            // Degenerate coordinate: centered difference at the midpoint.
            const double z = 0.5 * (u[j] + v[j]);
            const double h = std::max(1e-7, 1e-7 * std::abs(z));
            StateVector probe = mixed;
            probe[j] = z + h;
            const double e_plus = energy(probe);
            probe[j] = z - h;
            const double e_minus = energy(probe);
            require_finite(e_plus, "energy");
            require_finite(e_minus, "energy");
            result[j] = (e_plus - e_minus) / (2.0 * h);
        } else {
            result[j] = (e_prev - e_next) / delta;
        }
        e_prev = e_next;
    }
    return result;
}

double dgrad_identity_residual(const GradientSystemProblem& problem,
                               const StateVector& a, const StateVector& b) {
    const StateVector weak = problem.dgrad_weak(a, b);
    const double paired = weak.dot(a - b);
    return std::abs(problem.energy(a) - problem.energy(b) - paired);
}

StateVector weak_discrete_gradient(const GradientSystemProblem& problem,
                                   const DGradChoice& choice, const StateVector& a,
                                   const StateVector& b) {
    using Kind = DGradChoice::Kind;
    switch (choice.kind) {
        case Kind::problem_default:
            return problem.dgrad_weak(a, b);

        case Kind::gonzalez: {
            // Same construction as gonzalez_dgrad, but carried out directly in
            // pairings: <grad_d, e_i> = <grad E(m), e_i> + c <a-b, e_i>.
            const StateVector diff = b - a;
            const StateVector gram_diff = problem.gram_apply(diff);
            const double dist_sq = gram_diff.dot(diff);
            const double scale = 1.0 + std::sqrt(problem.gram(a, a)) +
                                 std::sqrt(problem.gram(b, b));
            if (std::sqrt(dist_sq) <= 1e-8 * scale) {
                return problem.grad_weak(0.5 * (a + b));
            }
            const StateVector grad_mid = problem.grad_weak(0.5 * (a + b));
            const double correction =
                (problem.energy(b) - problem.energy(a) - grad_mid.dot(diff)) / dist_sq;
            return grad_mid + correction * gram_diff;
        }

        case Kind::avf: {
            // The Gram factors cancel: averaging weak pairings equals pairing
            // the averaged strong gradient.
            if (choice.avf_points < 1) {
                throw std::invalid_argument("weak_discrete_gradient: avf_points must be >= 1");
            }
            const QuadratureRule rule = gauss_legendre(choice.avf_points);
            StateVector result = StateVector::Zero(a.size());
            for (int i = 0; i < rule.size(); ++i) {
                const double s = rule.nodes[i];
                result += rule.weights[i] * problem.grad_weak((1.0 - s) * a + s * b);
            }
            return result;
        }

        case Kind::itoh_abe:
            // The Euclidean quotient vector already carries the pairings
            // <grad_d, e_i>: its dot with the coordinate difference telescopes
            // to E[a] - E[b].
            return itoh_abe_dgrad([&problem](const StateVector& w) { return problem.energy(w); },
                                  a, b, choice.itoh_abe_coord_tol);
    }
    throw std::logic_error("weak_discrete_gradient: unknown kind");
}

}  // namespace dgflow
