#pragma once

/// Pressure reconstruction for circular swirl flows. The convective term
/// of u = s(r) x-perp is a pure radial gradient, so the pressure is the
/// cumulative integral
///
///   p(r) = -int_r^1 s(rho)^2 rho d(rho),  s = v / r,
///
/// pinned down either by p(1) = 0 (raw) or by zero disk average
/// (normalized). The integral is taken spectrally: the integrand is
/// re-expanded in Chebyshev polynomials on the domain interval and
/// integrated coefficient-wise, so smooth profiles lose nothing to the
/// quadrature. The radial gradient identity r p'(r) = v(r)^2 then serves
/// as an independent consistency check on the emitted values.

#include <string>
#include <vector>

#include "swirl/field.hpp"

namespace swirl {

struct PressureProfile {
  Geometry geometry;
  std::vector<double> grid;
  std::vector<double> values;  ///< velocity-squared units
  bool mean_zero = false;
};

/// Pressure of the swirl profile on the profile's own grid. With
/// normalize the disk average is removed per the zero-mean convention;
/// otherwise p(1) = 0.
PressureProfile pressure_from_velocity(const RadialProfile& u,
                                       bool normalize = true);

/// 2 pi * int p r dr, the quantity the normalization zeroes out.
double pressure_integral(const PressureProfile& p);

/// Max over interior grid nodes of |r p'(r) - v(r)^2|, relative to the
/// peak of v^2 (absolute when u vanishes). p' comes from a five-node
/// stencil on the stored values, independent of how p was built.
double gradient_identity_residual(const RadialProfile& u,
                                  const PressureProfile& p);

/// CSV: r,p
void write_pressure_csv(const std::string& path, const PressureProfile& p);

}  // namespace swirl
