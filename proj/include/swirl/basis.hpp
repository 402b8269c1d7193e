/// @file basis.hpp
/// @brief Orthonormal radial eigenbases for the swirl Laplacian.
///
/// Three families, all normalized to unit L2 norm under the planar measure
/// 2 pi r dr on their geometry:
///
///   dirichlet_swirl      disk modes  c_k J1(s_k r), s_k the k-th J1 zero;
///                        these are the tangential-speed profiles v(r) of
///                        swirl fields vanishing on the outer circle.
///   neumann_scalar       disk scalar modes c_k J0(s_k r) with the same s_k
///                        (J0' = -J1 makes them Neumann) plus the constant
///                        mode 1/sqrt(pi) at eigenvalue zero.
///   annulus_dirichlet_swirl
///                        cross-product modes c_k [J1(s_k r) Y1(s_k rho)
///                        - Y1(s_k r) J1(s_k rho)] vanishing at r = rho and
///                        r = 1.
///
/// The curl of a swirl mode is s_k times an L2-normalized scalar profile
/// (exactly the matching Neumann mode on the disk); eval_curl_partner
/// exposes that ladder.

#pragma once

#include <cstddef>
#include <vector>

#include "swirl/core.hpp"

namespace swirl {

enum class BasisKind { dirichlet_swirl, neumann_scalar, annulus_dirichlet_swirl };

class EigenBasis {
 public:
  /// Disk swirl basis with Dirichlet data at r = 1; k_count >= 1 modes.
  static EigenBasis dirichlet_swirl(std::size_t k_count);

  /// Disk scalar basis with Neumann data at r = 1. Mode 0 is the constant
  /// 1/sqrt(pi) with eigenvalue 0; modes 1..k_count oscillate. Total size
  /// is k_count + 1.
  static EigenBasis neumann_scalar(std::size_t k_count);

  /// Annulus swirl basis with Dirichlet data at r = rho and r = 1.
  static EigenBasis annulus_dirichlet_swirl(double rho, std::size_t k_count);

  const Geometry& geometry() const { return geom_; }
  BasisKind kind() const { return kind_; }
  std::size_t size() const { return sqrt_lambda_.size(); }

  double sqrt_lambda(std::size_t k) const;
  double lambda(std::size_t k) const;
  double norm_const(std::size_t k) const;

  /// Normalized mode value at radius r (inside the geometry's interval).
  double eval(std::size_t k, double r) const;

  /// Radial derivative of the normalized mode at r.
  double eval_deriv(std::size_t k, double r) const;

  /// Scalar partner psi_k with curl(v_k e_theta) = s_k psi_k; Dirichlet
  /// swirl bases only. psi_k is itself L2-normalized under 2 pi r dr.
  double eval_curl_partner(std::size_t k, double r) const;

  /// Derivative of the curl partner at r (Dirichlet swirl bases only).
  double eval_curl_partner_deriv(std::size_t k, double r) const;

  /// Annulus cross product of a given order evaluated at argument x with
  /// mode k's inner-circle weights:
  ///   p_n(x) = J_n(x) Y1(s_k rho) - Y_n(x) J1(s_k rho).
  /// Closed-form inner products against the driving profiles reduce to
  /// p_0 and p_2 at the endpoints, so expose the whole family.
  double cross(int order, std::size_t k, double x) const;

 private:
  EigenBasis(Geometry g, BasisKind kind) : geom_(g), kind_(kind) {}

  void check_index(std::size_t k) const;
  void check_radius(double r) const;

  Geometry geom_;
  BasisKind kind_;
  std::vector<double> sqrt_lambda_;
  std::vector<double> norm_const_;
  // annulus only: J1(s_k rho) and Y1(s_k rho), fixed per mode
  std::vector<double> j1_inner_;
  std::vector<double> y1_inner_;
};

}  // namespace swirl
