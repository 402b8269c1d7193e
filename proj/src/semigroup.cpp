#include "swirl/semigroup.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace swirl {

namespace {

// The embedded evolution always runs in the unit-disk basis with rescaled
// time, so one basis per mode count serves every R.
BasisPtr embedding_basis(std::size_t k_modes) {
  static std::mutex mu;
  static std::map<std::size_t, BasisPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  BasisPtr& slot = cache[k_modes];
  if (!slot) slot = share(EigenBasis::dirichlet_swirl(k_modes));
  return slot;
}

}  // namespace

void validate(const EvolutionParams& params) {
  require(std::isfinite(params.nu) && params.nu >= 0.0,
          "evolution: viscosity must be finite and nonnegative");
  require(std::isfinite(params.t) && params.t >= 0.0,
          "evolution: time must be finite and nonnegative");
}

SpectralField evolve(const SpectralField& field, EvolutionParams params) {
  validate(params);
  require(field.basis != nullptr, "evolve: null basis");
  SpectralField out = field;
  const double nut = params.nu * params.t;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    out.coeffs[k] *= std::exp(-nut * field.basis->lambda(k));
  }
  return out;
}

SpectralField fractional_apply(const SpectralField& field, double gamma,
                               EvolutionParams params) {
  validate(params);
  require(field.basis != nullptr, "fractional_apply: null basis");
  require(gamma >= 0.0 && gamma <= 2.0, "fractional_apply: gamma in [0,2]");
  const double nut = params.nu * params.t;
  require(gamma == 0.0 || nut > 0.0,
          "fractional_apply: gamma > 0 needs nu t > 0");
  SpectralField out = field;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    const double x = nut * field.basis->lambda(k);
    const double weight =
        (gamma == 0.0) ? std::exp(-x) : std::pow(x, gamma) * std::exp(-x);
    out.coeffs[k] *= weight;
  }
  return out;
}

RadialProfile whole_plane_evolve(const RadialProfile& u0,
                                 EvolutionParams params, double R,
                                 std::size_t k_modes) {
  validate(params);
  validate(u0);
  require(u0.geometry.is_disk(), "whole_plane_evolve: disk profiles only");
  require(R >= 4.0, "whole_plane_evolve: embedding radius must be >= 4");
  const double nut = params.nu * params.t;
  if (nut == 0.0) return u0;
  if (std::exp(-(R - 1.0) * (R - 1.0) / (4.0 * nut)) > 1e-8) {
    throw ConvergenceError("whole_plane_evolve: embedding too small for nu t");
  }

  // Map the radius-R disk onto the unit disk; the swirl operator is
  // homogeneous of degree -2, so time rescales by R^2.
  const BasisPtr basis = embedding_basis(k_modes);
  const double v_edge = profile_value(u0, 1.0);  // v(r>1) = r * s(1)

  // Grid resolution per unit radius is held fixed, or features of u0 would
  // blur as R grows.
  const auto n_embed = std::max(
      u0.grid.size(), static_cast<std::size_t>(256.0 * R));
  RadialProfile embedded = make_profile(Geometry::disk(), n_embed);
  for (std::size_t i = 0; i < embedded.grid.size(); ++i) {
    const double r = R * embedded.grid[i];
    embedded.values[i] = (r <= 1.0) ? profile_value(u0, r) : r * v_edge;
  }

  SpectralField hat = to_spectral(embedded, basis);
  EvolutionParams scaled;
  scaled.nu = params.nu / (R * R);
  scaled.t = params.t;
  hat = evolve(hat, scaled);

  RadialProfile out = u0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    out.values[i] = synthesize_at(hat, out.grid[i] / R);
  }
  return out;
}

}  // namespace swirl
