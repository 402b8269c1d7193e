/// @file core.hpp
/// @brief Shared geometry type, constants and error conventions.

#pragma once

#include <stdexcept>
#include <string>

namespace swirl {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Domain { disk, annulus };

/// Unit-outer-radius domain: the disk {|x| <= 1} or the annulus {rho <= |x| <= 1}.
struct Geometry {
  Domain domain = Domain::disk;
  double rho = 0.0;  // inner radius, annulus only

  static Geometry disk() { return Geometry{Domain::disk, 0.0}; }
  static Geometry annulus(double rho);

  bool is_disk() const { return domain == Domain::disk; }
  double inner() const { return is_disk() ? 0.0 : rho; }
  static constexpr double outer() { return 1.0; }
  double area() const { return kPi * (1.0 - rho * rho); }
};

/// Thrown when an iterative scheme fails to reach its tolerance
/// (distinct from argument validation, which throws std::invalid_argument).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument validation helper; throws std::invalid_argument on failure.
void require(bool cond, const std::string& msg);

}  // namespace swirl
