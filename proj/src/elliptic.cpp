// SPDX-License-Identifier: Apache-2.0
#include "dgflow/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgflow {
namespace {

constexpr int kMaxAgmIterations = 40;

void check_parameter(double m) {
    if (!(m >= 0.0) || m >= 1.0) {
        throw std::domain_error("elliptic parameter must satisfy 0 <= m < 1");
    }
}

}  // namespace

double elliptic_K(double m) {
    check_parameter(m);
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int it = 0; it < kMaxAgmIterations; ++it) {
        if (std::abs(a - b) <= 1e-15 * a) {
            break;
        }
        const double a_next = 0.5 * (a + b);
        const double b_next = std::sqrt(a * b);
        a = a_next;
        b = b_next;
    }
    return M_PI / (2.0 * a);
}

namespace detail {

JacobiTriple jacobi_elliptic(double x, double m) {
    check_parameter(m);
    if (!std::isfinite(x)) {
        throw std::domain_error("jacobi_elliptic: argument must be finite");
    }
    if (m == 0.0) {
        return {std::sin(x), std::cos(x), 1.0};
    }

    // Descending AGM scale: a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n),
    // c_{n+1} = (a_n-b_n)/2, then recover the amplitude by back-recursion
    // phi_{n-1} = (phi_n + asin((c_n/a_n) sin phi_n)) / 2.
    double a[kMaxAgmIterations + 1];
    double c[kMaxAgmIterations + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int levels = kMaxAgmIterations;
    for (int n = 0; n < kMaxAgmIterations; ++n) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        if (std::abs(c[n + 1]) <= 1e-17 * a[n + 1]) {
            levels = n + 1;
            break;
        }
    }

    double phi = std::ldexp(a[levels] * x, levels);
    for (int n = levels; n >= 1; --n) {
        phi = 0.5 * (phi + std::asin(std::clamp(c[n] / a[n] * std::sin(phi), -1.0, 1.0)));
    }

    JacobiTriple out;
    out.sn = std::sin(phi);
    out.cn = std::cos(phi);
    out.dn = std::sqrt(1.0 - m * out.sn * out.sn);
    return out;
}

}  // namespace detail

double jacobi_cn(double x, double m) {
    return detail::jacobi_elliptic(x, m).cn;
}

}  // namespace dgflow
