/// @file bessel.hpp
/// @brief Cylinder functions J0,J1,J2 and Y0,Y1,Y2 for nonnegative real arguments.
///
/// Self-contained evaluation: ascending power series below the branch point,
/// Hankel asymptotic expansion above it, both accumulated in extended
/// precision. The two branches agree to better than 1e-12 in the overlap,
/// and values are good to ~1e-12 relative accuracy through x = 1000.

#pragma once

namespace swirl {

/// J_n(x) for n in {0,1,2}, x >= 0.
double cyl_j(int n, double x);

/// Y_n(x) for n in {0,1,2}, x > 0.
double cyl_y(int n, double x);

/// d/dx J1(x) = J0(x) - J1(x)/x  (limit 1/2 at x = 0).
double cyl_j1_prime(double x);

/// k-th positive zero of J_n for n in {0,1}, k >= 1. McMahon asymptotic
/// initial guess polished by Newton, falling back to bisection whenever an
/// iterate leaves the bracketing interval.
double bessel_zero(int n, int k);

/// Argument where evaluation switches from series to asymptotics.
double bessel_branch_point();

}  // namespace swirl
