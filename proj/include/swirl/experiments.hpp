/// @file experiments.hpp
/// @brief Claim-level experiment drivers: rate fits, interior and
/// uniform-region convergence scans, and the layer-vs-spectral comparison
/// table.
///
/// The convergence scans measure u^nu(t) - u0 without expanding u0 itself
/// in the eigenbasis (whose partial sums converge too slowly near the rim
/// to see small layers). Instead u0 is split into the harmonic swirl with
/// the same boundary trace plus a trace-free remainder: the harmonic part
/// evolves through the boundary-exact driven solver, and only the smooth
/// remainder runs through coefficient space.

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "swirl/driving.hpp"
#include "swirl/duhamel.hpp"
#include "swirl/field.hpp"
#include "swirl/layerpot.hpp"

namespace swirl {

/// Least-squares fit of log(value) against log(nu).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;   ///< at log nu = 0
  double r_squared = 1.0;   ///< 1 for a perfect (or constant) fit
};

/// points: (nu, value), all strictly positive, at least three.
RateFit rate_fit(const std::vector<std::pair<double, double>>& points);

/// The default geometric viscosity grid, 1e-2 down to 1e-6.
std::vector<double> default_nu_grid();

/// Sup over a strictly interior band of the m-th radial derivative of
/// u^nu(t) - u0, m = 0, 1, 2; derivatives by five-node stencils on the
/// clustered grid.
struct InteriorRow {
  double nu = 0.0;
  std::array<double, 3> sup{};  ///< one entry per derivative order
};

std::vector<InteriorRow> interior_convergence(const RadialProfile& u0,
                                              const DrivingMotion& alpha,
                                              double t, double r0, double r1,
                                              const std::vector<double>& nus);

/// Sup of |u^nu(t) - u0| (alpha = 0, so the boundary condition pulls the
/// solution to rest) over r <= 1 - delta, with delta = nu^exponent per row.
/// The exponent must stay below 1/2 so the cut outruns the sqrt(nu t)
/// layer; uniform_region_cut freezes the cut instead, the contrast case
/// where the sup saturates once the layer reaches the cut.
struct RegionRow {
  double nu = 0.0;
  double delta = 0.0;  ///< distance from the cut to the outer boundary
  double sup_error = 0.0;
};

std::vector<RegionRow> uniform_region(const RadialProfile& u0, double t,
                                      const std::vector<double>& nus,
                                      double exponent = 0.4);

std::vector<RegionRow> uniform_region_cut(const RadialProfile& u0, double t,
                                          const std::vector<double>& nus,
                                          double cut);

/// Unit-step driving solved both ways on the disk: boundary integral
/// equation against the spectral solution, tabulated over (t, r).
struct LayerRow {
  double t = 0.0;
  double r = 0.0;
  double value_layer = 0.0;
  double value_spectral = 0.0;
  double abs_err = 0.0;
};

std::vector<LayerRow> layer_comparison(const std::vector<double>& ts,
                                       const std::vector<double>& rs,
                                       BieMode mode = BieMode::time_stepping);

void write_interior_csv(const std::string& path,
                        const std::vector<InteriorRow>& rows);
void write_region_csv(const std::string& path,
                      const std::vector<RegionRow>& rows);
void write_layer_csv(const std::string& path,
                     const std::vector<LayerRow>& rows);

}  // namespace swirl
