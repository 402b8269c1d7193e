/// @file semigroup.hpp
/// @brief Heat semigroup and fractional-power maps on spectral fields.
///
/// In the eigenbasis the flow is exact: coefficient k is damped by
/// exp(-nu t lambda_k). The whole-plane variant embeds the unit disk in a
/// large disk of radius R and evolves there; the boundary influence on
/// r <= 1 is bounded by exp(-(R-1)^2 / (4 nu t)).

#pragma once

#include <cstddef>

#include "swirl/field.hpp"

namespace swirl {

struct EvolutionParams {
  double nu = 0.0;
  double t = 0.0;
};

/// Throws std::invalid_argument unless nu, t are finite and nonnegative.
void validate(const EvolutionParams& params);

/// Coefficient-wise exp(-nu t lambda_k); the Neumann constant mode rides
/// along unchanged (lambda = 0).
SpectralField evolve(const SpectralField& field, EvolutionParams params);

/// Coefficient-wise (nu t lambda_k)^gamma exp(-nu t lambda_k) for
/// gamma in [0, 2]; gamma > 0 needs nu t > 0.
SpectralField fractional_apply(const SpectralField& field, double gamma,
                               EvolutionParams params);

/// Whole-plane heat flow of a swirl profile, by embedding in a disk of
/// radius R >= 4 (u0 is extended with constant angular velocity beyond
/// r = 1) and restricting back to the unit disk. Throws ConvergenceError
/// when exp(-(R-1)^2/(4 nu t)) > 1e-8, i.e. the embedding is too small for
/// the requested diffusion time.
RadialProfile whole_plane_evolve(const RadialProfile& u0,
                                 EvolutionParams params, double R = 4.0,
                                 std::size_t k_modes = 512);

}  // namespace swirl
