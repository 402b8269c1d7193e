/// @file duhamel.hpp
/// @brief Boundary-driven swirl solutions u(t) = e^{nu t A} u0 + S alpha(t).
///
/// The solution splits into an instantaneous harmonic part, carried
/// analytically so boundary traces are exact, and a homogeneous-boundary
/// remainder living in the eigenbasis:
///
///   u(t) = Phi_{a(t)} + sum_k w_k(t) phi_k,
///   w_k(t) = c_k e^{-nu t lambda_k} + sum_j b_{j,k} (D_{j,k}(t) - a_j(t)),
///   D_{j,k}(t) = int_[0,t] (1 - e^{-nu lambda_k (t-s)}) d alpha_j(s),
///
/// where b_{j,k} are the forcing-field coefficients and a_j(t) is the
/// boundary weight with any jump at exactly s = t dropped (its harmonic and
/// spectral contributions cancel, so dropping both sides avoids a Gibbs
/// artifact while leaving every eigen-coefficient unchanged).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "swirl/driving.hpp"
#include "swirl/field.hpp"

namespace swirl {

/// Angular boundary velocities: one motion for the disk, an (outer, inner)
/// pair for the annulus.
struct SwirlBoundaryData {
  Geometry geometry;
  std::vector<DrivingMotion> motions;

  static SwirlBoundaryData disk(DrivingMotion alpha);
  static SwirlBoundaryData annulus(double rho, DrivingMotion outer,
                                   DrivingMotion inner);
};

/// Weights of the harmonic swirl beta1 f1 + beta2 f2 matching prescribed
/// boundary angular velocities alpha1 (outer) and alpha2 (inner).
struct HarmonicPair {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double rho = 0.0;
};

HarmonicPair harmonic_interpolant(double alpha1, double alpha2, double rho);

/// Rigid-rotation speed profile v(r) = r / 2 pi.
RadialProfile f1_profile(const Geometry& geom, std::size_t n = 1024);

/// Tangential speed at radius r of the harmonic swirl with the given
/// boundary weights ({alpha} disk, {alpha1, alpha2} annulus).
double harmonic_speed(const Geometry& geom, const std::vector<double>& alpha,
                      double r);

/// Squared 2D L2 norm of that harmonic swirl (closed form).
double harmonic_l2sq(const Geometry& geom, const std::vector<double>& alpha);

/// Eigen-coefficients <F_j, phi_k> of the forcing field responding to
/// boundary j. Disk: F_0 = f1. Annulus: F_0 = (f1 - rho^2 f2)/(1 - rho^2)
/// and F_1 = -rho^2 (f1 - f2)/(1 - rho^2), the pair with unit trace on its
/// own circle and zero trace on the other.
std::vector<double> forcing_coefficients(const EigenBasis& basis,
                                         std::size_t which);

/// How the Duhamel integrals are evaluated: against d(alpha) (smooth or bv
/// paths), or integrated by parts against alpha values (smooth, lp or
/// brownian paths). `automatic` picks by variant.
enum class DuhamelForm { automatic, stieltjes, by_parts };

struct DrivenSolution {
  BasisPtr basis;
  std::vector<double> boundary;     ///< effective boundary weights a_j(t)
  std::vector<double> homogeneous;  ///< eigen coefficients w_k(t)
};

DrivenSolution solve(const SpectralField& u0, const SwirlBoundaryData& bc,
                     double nu, double t,
                     DuhamelForm form = DuhamelForm::automatic);

DrivenSolution solve(const RadialProfile& u0, const SwirlBoundaryData& bc,
                     double nu, double t, const BasisPtr& basis,
                     DuhamelForm form = DuhamelForm::automatic);

/// Tangential speed of the solution at radius r (boundary traces exact).
double solution_value(const DrivenSolution& sol, double r);

/// Grid realization on the canonical clustered grid.
RadialProfile realize(const DrivenSolution& sol, std::size_t n = 1024);

/// Full eigen-coefficients u_k = w_k + <Phi_a, phi_k>.
SpectralField project(const DrivenSolution& sol);

/// Squared L2 mass of the harmonic part beyond the basis truncation,
/// ||Phi_a||^2 - sum_k <Phi_a, phi_k>^2. Completes Parseval sums at
/// sigma = 0; negative-order norms need no completion (summable tails).
double harmonic_tail_l2sq(const DrivenSolution& sol);

/// Norm request for sweeps. family: "sobolev" (uses sigma), "lebesgue"
/// (uses q), "gagliardo"(uses sigma and q).
struct NormSpec {
  std::string family;
  double sigma = 0.0;
  double q = 2.0;
};

struct SweepRow {
  double nu = 0.0;
  double t = 0.0;
  NormSpec norm;
  double value_err = 0.0;     ///< norm of u(t) - u0
  double value_forced = 0.0;  ///< norm of S alpha(t)
};

/// Norms of u(t) - u0 and of the forced part over the (nu, t) grid, rows
/// ordered nu-major, then t, then norm.
std::vector<SweepRow> sweep(const SpectralField& u0,
                            const SwirlBoundaryData& bc,
                            const std::vector<double>& nus,
                            const std::vector<double>& ts,
                            const std::vector<NormSpec>& norms);

/// CSV: nu,t,norm_family,sigma,q,value_err,value_forced
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

}  // namespace swirl
