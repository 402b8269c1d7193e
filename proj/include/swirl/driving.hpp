/// @file driving.hpp
/// @brief Boundary angular-velocity paths and integration against them.
///
/// A DrivingMotion is one of four regularity classes: smooth (value plus
/// density samplers), bounded variation (finite jump list plus a density),
/// an L^p density given by samples on a uniform grid, or a Brownian path.
/// All paths vanish for t < 0.
///
/// Two integrators: stieltjes_integrate sums F against d(alpha) (jumps plus
/// density part, smooth/bv only); lp_integrate integrates F(s) alpha(s) ds
/// with endpoint grading so F may blow up like (t-s)^(delta-1), delta > 0.

#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace swirl {

enum class DrivingKind { smooth, bv, lp, brownian };

class DrivingMotion {
 public:
  /// Single jump of the given size at time `at` (default: unit step at 0).
  static DrivingMotion step(double size = 1.0, double at = 0.0);

  /// alpha(t) = slope * t for t >= 0.
  static DrivingMotion ramp(double slope);

  /// Smooth path from its value and density (= derivative) samplers; both
  /// are clamped to zero for t < 0.
  static DrivingMotion smooth(std::function<double(double)> value,
                              std::function<double(double)> density);

  /// Pure jump path; times strictly increasing, all >= 0.
  static DrivingMotion jump_list(std::vector<std::pair<double, double>> jumps);

  /// Jumps plus an absolutely continuous part.
  static DrivingMotion bv(std::vector<std::pair<double, double>> jumps,
                          std::function<double(double)> density);

  /// L^p density sampled on the uniform grid {0, dt, 2dt, ...}; values are
  /// interpolated linearly between samples and held constant beyond the
  /// last one.
  static DrivingMotion lp_samples(std::vector<double> values, double dt,
                                  double p_prime);

  DrivingKind kind() const { return kind_; }

  /// Path value alpha(t); zero for t < 0. Jumps at t_i <= t are counted.
  double value(double t) const;

  /// Density of the absolutely continuous part (smooth/bv only).
  double density(double s) const;

  /// True when an absolutely continuous part is present.
  bool has_density() const { return static_cast<bool>(density_); }

  const std::vector<std::pair<double, double>>& jumps() const {
    return jumps_;
  }

  double p_prime() const;
  double grid_dt() const;
  double horizon() const;

 private:
  friend DrivingMotion sample_brownian(std::uint64_t seed, double T,
                                       double dt);

  explicit DrivingMotion(DrivingKind kind) : kind_(kind) {}

  DrivingKind kind_;
  std::function<double(double)> value_;
  std::function<double(double)> density_;
  std::vector<std::pair<double, double>> jumps_;
  std::vector<double> samples_;
  double dt_ = 0.0;
  double p_prime_ = 0.0;
};

/// Wiener path on [0, T] with step dt: independent Gaussian(0, dt)
/// increments, deterministic per seed (own Box-Muller over mt19937_64, so
/// results do not depend on the standard library's distributions).
DrivingMotion sample_brownian(std::uint64_t seed, double T, double dt);

/// Integral of F against d(alpha) over [0, t]: sum of F(t_i) * jump_i for
/// t_i <= t plus the quadrature of F * density. Throws for lp/brownian.
/// F fills a weight vector per time; dim is its length.
std::vector<double> stieltjes_integrate(
    const std::function<void(double, std::vector<double>&)>& F,
    std::size_t dim, const DrivingMotion& alpha, double t);

double stieltjes_integrate(const std::function<double(double)>& F,
                           const DrivingMotion& alpha, double t);

/// Integral of F(s) alpha(s) ds over [0, t] with geometric endpoint
/// grading; F may have an integrable blow-up at s = t. Smooth and lp paths
/// only. Throws ConvergenceError for nonintegrable singularities.
std::vector<double> lp_integrate(
    const std::function<void(double, std::vector<double>&)>& F,
    std::size_t dim, const DrivingMotion& alpha, double t);

double lp_integrate(const std::function<double(double)>& F,
                    const DrivingMotion& alpha, double t);

/// Total variation of alpha on [0, t]: sum of |jumps| plus integral of
/// |density|. Smooth and bv paths only.
double total_variation(const DrivingMotion& alpha, double t);

}  // namespace swirl
