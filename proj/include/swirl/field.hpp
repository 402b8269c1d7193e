/// @file field.hpp
/// @brief Radial field representations, transforms, and norms.
///
/// A RadialProfile stores point values on an ascending radial grid; the
/// default grid is Chebyshev-clustered so sqrt(nu) boundary layers stay
/// resolved down to nu ~ 1e-6. A SpectralField stores coefficients in one
/// of the orthonormal eigenbases. Norms come in three families:
///
///   sobolev_norm      (sum_k lambda_k^sigma c_k^2)^(1/2), sigma in [-2,5/2)
///   lebesgue_norm     planar L^q of the radial profile, q in [1,inf]
///   gagliardo_seminorm  finite-difference fractional seminorm proxy for
///                     H^{sigma,q}, sigma in (0,1), q in [1,inf)

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "swirl/basis.hpp"
#include "swirl/core.hpp"

namespace swirl {

struct RadialProfile {
  Geometry geometry;
  std::vector<double> grid;
  std::vector<double> values;
};

using BasisPtr = std::shared_ptr<const EigenBasis>;

/// Wraps a constructed basis for shared, immutable use.
BasisPtr share(EigenBasis basis);

/// Chebyshev-Lobatto radial grid spanning the geometry, n nodes (default
/// grid size used across the library is 1024).
std::vector<double> make_grid(const Geometry& geom, std::size_t n = 1024);

/// Zero-valued profile on the default clustered grid.
RadialProfile make_profile(const Geometry& geom, std::size_t n = 1024);

/// Grid/value consistency checks; throws std::invalid_argument.
void validate(const RadialProfile& profile);

/// Interpolated profile value at radius r: barycentric when the grid is the
/// canonical clustered one, local cubic Lagrange otherwise.
double profile_value(const RadialProfile& profile, double r);

struct SpectralField {
  BasisPtr basis;
  std::vector<double> coeffs;
};

/// Projects a profile onto the basis: coeff_k = int profile phi_k 2 pi r dr,
/// by dense Gauss-Legendre quadrature sized to the highest mode.
SpectralField to_spectral(const RadialProfile& profile, const BasisPtr& basis);

/// Evaluates the expansion on a grid.
RadialProfile synthesize(const SpectralField& field,
                         const std::vector<double>& grid);

/// Pointwise expansion value at radius r.
double synthesize_at(const SpectralField& field, double r);

/// (sum_k lambda_k^sigma c_k^2)^(1/2). sigma in [-2, 5/2). A nonzero
/// coefficient on a zero eigenvalue (Neumann constant mode) is rejected for
/// sigma < 0 and dropped (weight 0) for sigma > 0.
double sobolev_norm(const SpectralField& field, double sigma);

/// Planar L^q norm (int |v|^q 2 pi r dr)^(1/q); q may be infinity.
double lebesgue_norm(const RadialProfile& profile, double q);

/// Gagliardo seminorm proxy of the radial function seen as a planar one:
/// ( int int |f(x)-f(y)|^q / |x-y|^(2+sigma q) dx dy )^(1/q), with the
/// angular integral reduced to a fixed 64-node rule and the radial double
/// sum taken over a resampled clustered grid, exact diagonal skipped.
double gagliardo_seminorm(const RadialProfile& profile, double sigma, double q,
                          std::size_t resample_nodes = 256);

/// CSV serialization: profiles as `r,value`, fields as `k,sqrt_lambda,coeff`
/// (Neumann bases start at k = 0 for the constant mode, others at k = 1).
void write_profile_csv(const std::string& path, const RadialProfile& profile);
void write_spectral_csv(const std::string& path, const SpectralField& field);

}  // namespace swirl
