/// @file quadrature.hpp
/// @brief Quadrature rules and Chebyshev grid machinery.
///
/// Gauss-Legendre rules (cached), Clenshaw-Curtis weights for the
/// boundary-clustered Chebyshev-Lobatto grids used by radial profiles,
/// Chebyshev coefficient transforms (interpolation, antiderivative), and a
/// geometrically refined integrator for integrands with a weak singularity
/// at the right endpoint.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace swirl {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1,1]; results are cached per n.
const QuadRule& gauss_legendre(std::size_t n);

/// n-point Gauss-Legendre rule mapped to [a,b].
QuadRule gauss_legendre_on(double a, double b, std::size_t n);

/// Chebyshev-Lobatto nodes on [a,b], ascending, endpoints included.
/// n is the number of nodes (n >= 2).
std::vector<double> chebyshev_lobatto(double a, double b, std::size_t n);

/// Clenshaw-Curtis weights matching chebyshev_lobatto(a, b, n).
/// Exact for polynomials of degree n-1, spectrally accurate for smooth f.
std::vector<double> clenshaw_curtis_weights(double a, double b, std::size_t n);

/// Composite Gauss-Legendre integration of f over [a,b] with uniform panels.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, std::size_t panels, std::size_t pts = 16);

/// Chebyshev interpolation coefficients from values at the ascending Lobatto
/// nodes of [a,b]: values.size() = n, interpolant sum_k c_k T_k(mapped x).
std::vector<double> chebyshev_coefficients(const std::vector<double>& values);

/// Coefficients of the antiderivative (vanishing at x = a) of the Chebyshev
/// interpolant with coefficients c on [a,b].
std::vector<double> chebyshev_antiderivative(const std::vector<double>& c,
                                             double a, double b);

/// Clenshaw evaluation of sum_k c_k T_k at x in [a,b].
double chebyshev_eval(const std::vector<double>& c, double a, double b,
                      double x);

/// Barycentric interpolation through values at the ascending Lobatto nodes of
/// [a,b] (closed-form weights 1,2,2,...,2,1 with alternating signs).
double lobatto_interpolate(const std::vector<double>& values, double a,
                           double b, double x);

/// Integrates a vector-valued f over [0,t] where components may blow up like
/// (t-s)^(delta-1), delta > 0, as s -> t. Panels are halved geometrically
/// toward the endpoint; the remaining tail at the resolution floor is summed
/// geometrically. Throws ConvergenceError when the singularity is not
/// integrable (panel contributions fail to decay).
std::vector<double> integrate_endpoint_singular(
    const std::function<void(double, std::vector<double>&)>& f,
    std::size_t dim, double t);

/// Scalar convenience wrapper for integrate_endpoint_singular.
double integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double t);

}  // namespace swirl
