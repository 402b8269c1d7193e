#include "swirl/core.hpp"

namespace swirl {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Geometry Geometry::annulus(double rho) {
  require(rho > 0.0 && rho < 1.0, "annulus inner radius must lie in (0,1)");
  return Geometry{Domain::annulus, rho};
}

}  // namespace swirl
