/// @file bessel_oracle.hpp
/// @brief Independent high-precision cylinder-function oracle (MPFR).
///
/// Straight ascending series evaluated in multi-hundred-bit arithmetic,
/// plus bracketing/bisection root finding on the oracle itself. Used only
/// by tests; the library under test never sees this code path.

#pragma once

namespace oracle {

/// J_n(x) via the ascending power series at `bits` working precision.
double bessel_j(int n, double x, long bits = 384);

/// Y_n(x) (n = 0,1,2) via the log-series at `bits` working precision.
double bessel_y(int n, double x, long bits = 512);

/// k-th positive zero of J1 (k >= 1), found by sign-change bracketing and
/// bisection on the series oracle; accurate to ~1e-13.
double j1_zero(int k);

/// k-th positive zero of J0 (k >= 1), same method.
double j0_zero(int k);

/// k-th positive zero of the annulus cross product
/// J1(s)Y1(s rho) - Y1(s)J1(s rho), by scan plus bisection on the oracle.
double annulus_cross_zero(int k, double rho);

}  // namespace oracle
