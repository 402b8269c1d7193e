#pragma once

/// Heat layer potentials on the unit circle, reduced to scalar form by
/// circular symmetry. A tangential boundary density h(s, y) = eta(s) y-perp
/// generates the caloric double layer
///
///   D eta(t, r) = int_0^t eta(s) k(t - s, r) ds,
///
/// where k collects the heat kernel's normal derivative over the circle
/// with the cos(theta) factor that projects source onto target swirl
/// directions. The kernel sign convention is fixed so that the interior
/// trace obeys D eta -> (1/2 I + N) eta at the boundary, the second-kind
/// setup in which the Dirichlet problem becomes (1/2 I + N) h = g; the
/// outward-normal derivative of the plane heat kernel is the negative of
/// the kernel used here.
///
/// The boundary operator N is weakly singular, |kernel| ~ tau^(-1/2), and
/// is discretized by product integration against piecewise linear
/// densities on a power-graded time grid, the standard convergent scheme
/// for second-kind Volterra equations with this singularity. The Neumann
/// series h = 2(I - 2N + 4N^2 - ...)g converges once the horizon keeps
/// the operator norm of 2N below one half, and is capped at a small order
/// beyond which time stepping is authoritative.

#include <cstddef>
#include <functional>
#include <vector>

#include "swirl/driving.hpp"

namespace swirl {

/// Scalar tangential amplitude sampled on a time grid graded toward 0,
/// interpreted piecewise linearly and as zero for t < 0.
struct BoundaryDensity {
  std::vector<double> times;
  std::vector<double> values;
};

/// Samples f on the grid t_i = horizon (i / (nodes-1))^3. Values are read
/// as right limits, so a jump exactly at 0 is represented by f(0+).
BoundaryDensity graded_density(double horizon, std::size_t nodes,
                               const std::function<double(double)>& f);

/// Piecewise linear value; zero for t < times.front().
double density_value(const BoundaryDensity& d, double t);

/// Circle average of the double-layer kernel magnitude in the
/// Phi(lambda) = lambda^2 exp(-lambda^2) normalization,
///   K(tau) = (1 / 8 pi tau) int_0^2pi Phi(2 sin(theta/2) / sqrt(4 tau)),
/// the diagnostic form of the tau^(-1/2) weak singularity. The operator
/// kernels below carry twice this density plus the tangential projection.
double reduced_kernel(double tau);

/// Boundary-to-boundary kernel of N on swirl amplitudes:
/// (1 / 4 pi tau) int cos(theta) Phi(sin(theta/2) / sqrt(tau)) d(theta).
/// Equals interior_kernel(tau, 1).
double boundary_kernel(double tau);

/// Boundary-to-interior kernel at radius r in [0, 1):
/// (1 / 8 pi tau^2) int cos(theta) (1 - r cos(theta))
///   exp(-(1 + r^2 - 2 r cos(theta)) / 4 tau) d(theta).
/// Vanishes exponentially as tau -> 0 for r < 1.
double interior_kernel(double tau, double r);

enum class BieMode { time_stepping, neumann_series };

/// Solves (1/2 I + N) h = g on g's grid. Series mode iterates
/// h = 2 sum_j (-2N)^j g up to series_order and throws ConvergenceError
/// when a term fails to shrink (horizon too long for the expansion).
BoundaryDensity solve_bie(const BoundaryDensity& g,
                          BieMode mode = BieMode::time_stepping,
                          std::size_t series_order = 6);

/// N f by the same product-integration weights the solver uses.
BoundaryDensity apply_boundary_operator(const BoundaryDensity& f);

/// Independent residual check: sup over a twice-refined grid of
/// |(1/2 I + N) h - g| with both densities read piecewise linearly.
double bie_residual(const BoundaryDensity& g, const BoundaryDensity& h);

/// D h at strictly interior radius r, time t within h's horizon. The
/// trace itself is supplied by the jump relation, so r >= 1 is rejected.
double double_layer_eval(const BoundaryDensity& h, double t, double r);

/// 2 D g_k with g_k = sum_{j<=k} (-2N)^j g, the order-k boundary-layer
/// approximation whose remainder improves by half a power of t per order.
double leading_term(const BoundaryDensity& g, double t, double r,
                    std::size_t order = 0);

struct LeadingApprox {
  double value = 0.0;     ///< 2 int D g(nu (t-s), r) d alpha(s), g the unit rim step
  double envelope = 0.0;  ///< sqrt(t nu) * TV(alpha, [0, t]), remainder scale
};

/// Leading boundary-layer approximation of the driven swirl at radius r:
/// the Stieltjes integral of the step response against d alpha. alpha must
/// be a smooth or bv path.
LeadingApprox duhamel_leading(const DrivingMotion& alpha, double nu, double t,
                              double r);

/// Free-plane heat evolution of the circular swirl v0 (amplitude as a
/// function of radius, polynomially bounded): value at radius r and time
/// t > 0. Used to form boundary traces for data that does not vanish on
/// the rim.
double whole_plane_value(const std::function<double(double)>& v0, double t,
                         double r);

}  // namespace swirl
