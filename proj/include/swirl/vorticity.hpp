/// @file vorticity.hpp
/// @brief Scalar vorticity of swirl fields and its concentration analysis.
///
/// For u = s(r) x^perp the vorticity is radial: w = v' + v/r with v = r s.
/// The curl of a swirl eigenmode is an explicit order-0 function with the
/// same frequency, so spectral curls are mode-exact; grid curls use
/// five-point finite differences on the stored nodes.
///
/// Mass bookkeeping: each eigenmode carries zero total curl, so the total
/// mass of a driven solution is the harmonic part's alone: alpha(t) on the
/// disk, alpha1(t) - rho^2 alpha2(t) on the annulus. As nu drops the curl
/// mass near each boundary circle collapses onto an atom; shell masses
/// split by a cut radius track that collapse and extrapolate to the limit
/// measure.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "swirl/duhamel.hpp"
#include "swirl/field.hpp"

namespace swirl {

/// Finite-difference curl on the profile's own grid. At r = 0 the disk
/// value is 2 v'(0).
RadialProfile curl(const RadialProfile& u);

/// Mode-exact curl of a disk swirl field into the supplied Neumann scalar
/// basis (constant mode at index 0 stays zero: eigenmodes carry no mass).
SpectralField curl(const SpectralField& u, const BasisPtr& target);

/// Mode-exact curl values on an arbitrary grid (disk and annulus).
RadialProfile curl_profile(const SpectralField& u,
                           const std::vector<double>& grid);

/// Curl of a driven solution on its canonical grid: the harmonic part
/// contributes the constant beta1 / pi, the expansion part is summed
/// mode-exactly. No finite differences, so masses integrate cleanly.
RadialProfile curl_of(const DrivenSolution& sol, std::size_t n = 2049);

/// 2 pi * integral of profile * r over [r0, r1], via Clenshaw-Curtis on a
/// resampled subgrid.
double ring_mass(const RadialProfile& profile, double r0, double r1);

/// Signed curl mass 2 pi * int w r dr over the whole domain.
double total_mass(const RadialProfile& omega);

/// 2 pi * int |w| r dr.
double l1_mass(const RadialProfile& omega);

/// Signed masses split at cut radii. Disk: interior [0, outer_cut] and
/// outer shell [outer_cut, 1]. Annulus: pass inner_cut in (rho, outer_cut)
/// for the three regions; inner_shell is zero on the disk.
struct ShellMasses {
  double inner_shell = 0.0;
  double interior = 0.0;
  double outer_shell = 0.0;
};

ShellMasses shell_mass(const RadialProfile& omega, double outer_cut,
                       double inner_cut = -1.0);

/// Normal vorticity flux at each boundary circle against the prediction
/// alpha_j'(t) / (2 pi nu) (outer) and -rho alpha_2'(t) / (2 pi nu)
/// (inner, outward normal). residual is |measured - predicted| over the
/// largest |predicted|, or absolute when every prediction vanishes.
struct FluxCheck {
  std::vector<double> measured;
  std::vector<double> predicted;
  std::vector<double> residual;
};

/// With fit_depth == 0 the slope comes from a one-sided stencil on the
/// clustered boundary nodes, which is right for fully resolved profiles.
/// A truncated expansion flattens inside a collar of width ~1/sqrt_lambda_K
/// at each wall; pass fit_depth just past the collar and the slope is
/// instead read from a least-squares cubic over depths
/// [fit_depth, 4 fit_depth], extrapolated back to the wall.
FluxCheck boundary_flux(const RadialProfile& omega, double nu,
                        const std::vector<double>& alpha_prime,
                        double fit_depth = 0.0);

/// Same, reading alpha_j'(t) off the motions; paths with jumps or without
/// a density are rejected.
FluxCheck boundary_flux(const RadialProfile& omega, double nu, double t,
                        const std::vector<DrivingMotion>& alphas,
                        double fit_depth = 0.0);

/// Split a disk velocity into a zero-trace remainder and the rigid-swirl
/// multiple b f1 with b = 2 pi v(1), the total curl mass of u0.
struct BoundarySplit {
  RadialProfile remainder;
  double b = 0.0;
};

BoundarySplit boundary_decompose(const RadialProfile& u0);

/// Limit measure of the vorticity family as nu drops: an interior density
/// (zeroed beyond the cuts) plus one signed atom per boundary circle,
/// with the closed-form atom predictions alongside.
struct DiskMeasure {
  RadialProfile interior;
  double interior_mass = 0.0;
  std::vector<double> cuts;       ///< outer cut [, inner cut]
  std::vector<double> atoms;      ///< extrapolated shell masses
  std::vector<double> predicted;  ///< alpha(t-) - 2 pi v0(1) [, inner]
  bool converged = true;          ///< shell masses moved monotonically

  double total() const;  ///< interior_mass + sum of atoms
};

struct ConcentrationRow {
  double nu = 0.0;
  double interior_mass = 0.0;
  std::vector<double> shells;  ///< outer [, inner]
};

struct ConcentrationReport {
  std::vector<ConcentrationRow> rows;
  DiskMeasure limit;
};

/// Solve the driven flow at each nu (decreasing list, at least two), cut a
/// collar of width delta(nu) off each boundary circle, and extrapolate the
/// shell masses to nu = 0 (Richardson in nu^0.4 on the two smallest).
/// Default collar delta(nu) = nu^0.4.
ConcentrationReport concentration_sweep(
    const RadialProfile& u0, const SwirlBoundaryData& bc,
    const std::vector<double>& nus, double t, const BasisPtr& basis,
    const std::function<double(double)>& collar = {});

DiskMeasure concentration_limit(
    const RadialProfile& u0, const SwirlBoundaryData& bc,
    const std::vector<double>& nus, double t, const BasisPtr& basis,
    const std::function<double(double)>& collar = {});

/// CSV: nu,interior_mass,shell_mass_outer[,shell_mass_inner],
/// predicted_atom_outer[,predicted_atom_inner]
void write_concentration_csv(const std::string& path,
                             const ConcentrationReport& report);

}  // namespace swirl
