// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace dgflow {

/// Complete elliptic integral of the first kind in the parameter convention:
/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, computed as
/// pi / (2 AGM(1, sqrt(1-m))). Requires 0 <= m < 1.
double elliptic_K(double m);

/// Jacobi elliptic cn(x | m), parameter convention (m is the squared
/// modulus), via the descending Landen amplitude recursion. |result| <= 1.
double jacobi_cn(double x, double m);

namespace detail {

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// All three Jacobi elliptic functions at once; cn is the public entry point,
/// sn and dn are exposed here for internal use and testing.
JacobiTriple jacobi_elliptic(double x, double m);

}  // namespace detail

}  // namespace dgflow
