#include "swirl/basis.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "swirl/bessel.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

// One normalization code path for every family: composite Gauss-Legendre
// with 128 nodes per oscillation wavelength of the raw profile.
double quadrature_norm(const std::function<double(double)>& raw, double a,
                       double b, double s) {
  const double wavelengths = std::max(1.0, s * (b - a) / (2.0 * kPi));
  const std::size_t nodes =
      static_cast<std::size_t>(std::ceil(128.0 * wavelengths));
  const std::size_t panels = (nodes + 15) / 16;
  const double mass = integrate_panels(
      [&raw](double r) {
        const double v = raw(r);
        return v * v * r;
      },
      a, b, panels, 16);
  return std::sqrt(2.0 * kPi * mass);
}

double y1_prime(double x) { return cyl_y(0, x) - cyl_y(1, x) / x; }

}  // namespace

EigenBasis EigenBasis::dirichlet_swirl(std::size_t k_count) {
  require(k_count >= 1, "dirichlet_swirl: need at least one mode");
  EigenBasis basis(Geometry::disk(), BasisKind::dirichlet_swirl);
  basis.sqrt_lambda_.reserve(k_count);
  basis.norm_const_.reserve(k_count);
  for (std::size_t k = 1; k <= k_count; ++k) {
    const double s = bessel_zero(1, static_cast<int>(k));
    const double nrm =
        quadrature_norm([s](double r) { return cyl_j(1, s * r); }, 0.0, 1.0, s);
    basis.sqrt_lambda_.push_back(s);
    basis.norm_const_.push_back(1.0 / nrm);
  }
  return basis;
}

EigenBasis EigenBasis::neumann_scalar(std::size_t k_count) {
  require(k_count >= 1, "neumann_scalar: need at least one mode");
  EigenBasis basis(Geometry::disk(), BasisKind::neumann_scalar);
  basis.sqrt_lambda_.reserve(k_count + 1);
  basis.norm_const_.reserve(k_count + 1);
  basis.sqrt_lambda_.push_back(0.0);
  basis.norm_const_.push_back(1.0 / std::sqrt(kPi));
  for (std::size_t k = 1; k <= k_count; ++k) {
    // J0'(x) = -J1(x), so the J1 zeros make J0(s r) a Neumann mode.
    const double s = bessel_zero(1, static_cast<int>(k));
    const double nrm =
        quadrature_norm([s](double r) { return cyl_j(0, s * r); }, 0.0, 1.0, s);
    basis.sqrt_lambda_.push_back(s);
    basis.norm_const_.push_back(1.0 / nrm);
  }
  return basis;
}

EigenBasis EigenBasis::annulus_dirichlet_swirl(double rho,
                                               std::size_t k_count) {
  require(k_count >= 1, "annulus_dirichlet_swirl: need at least one mode");
  EigenBasis basis(Geometry::annulus(rho), BasisKind::annulus_dirichlet_swirl);
  basis.sqrt_lambda_.reserve(k_count);
  basis.norm_const_.reserve(k_count);
  basis.j1_inner_.reserve(k_count);
  basis.y1_inner_.reserve(k_count);

  auto det = [rho](double s) {
    return cyl_j(1, s) * cyl_y(1, s * rho) - cyl_y(1, s) * cyl_j(1, s * rho);
  };

  // Roots are ~pi/(1-rho) apart; an eighth-wavelength scan cannot skip one.
  const double step = kPi * (1.0 - rho) / 8.0;
  double s_lo = step;
  double f_lo = det(s_lo);
  std::size_t found = 0;
  const std::size_t scan_cap = 64 * (k_count + 2) + 4096;
  for (std::size_t i = 0; i < scan_cap && found < k_count; ++i) {
    const double s_hi = s_lo + step;
    const double f_hi = det(s_hi);
    if (f_lo * f_hi <= 0.0) {
      double lo = s_lo, hi = s_hi, fl = f_lo;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = det(mid);
        if (fl * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          fl = fm;
        }
      }
      const double s = 0.5 * (lo + hi);
      const double j1r = cyl_j(1, s * rho);
      const double y1r = cyl_y(1, s * rho);
      const double nrm = quadrature_norm(
          [s, j1r, y1r](double r) {
            return cyl_j(1, s * r) * y1r - cyl_y(1, s * r) * j1r;
          },
          rho, 1.0, s);
      basis.sqrt_lambda_.push_back(s);
      basis.norm_const_.push_back(1.0 / nrm);
      basis.j1_inner_.push_back(j1r);
      basis.y1_inner_.push_back(y1r);
      ++found;
    }
    s_lo = s_hi;
    f_lo = f_hi;
  }
  require(found == k_count, "annulus_dirichlet_swirl: root scan fell short");
  return basis;
}

void EigenBasis::check_index(std::size_t k) const {
  require(k < size(), "basis: mode index out of range");
}

void EigenBasis::check_radius(double r) const {
  require(r >= geom_.inner() - 1e-9 && r <= geom_.outer() + 1e-9,
          "basis: radius outside the geometry");
}

double EigenBasis::sqrt_lambda(std::size_t k) const {
  check_index(k);
  return sqrt_lambda_[k];
}

double EigenBasis::lambda(std::size_t k) const {
  check_index(k);
  return sqrt_lambda_[k] * sqrt_lambda_[k];
}

double EigenBasis::norm_const(std::size_t k) const {
  check_index(k);
  return norm_const_[k];
}

double EigenBasis::eval(std::size_t k, double r) const {
  check_index(k);
  check_radius(r);
  const double s = sqrt_lambda_[k];
  const double c = norm_const_[k];
  switch (kind_) {
    case BasisKind::dirichlet_swirl:
      return c * cyl_j(1, s * r);
    case BasisKind::neumann_scalar:
      return k == 0 ? c : c * cyl_j(0, s * r);
    case BasisKind::annulus_dirichlet_swirl:
      return c * (cyl_j(1, s * r) * y1_inner_[k] - cyl_y(1, s * r) * j1_inner_[k]);
  }
  return 0.0;
}

double EigenBasis::eval_deriv(std::size_t k, double r) const {
  check_index(k);
  check_radius(r);
  const double s = sqrt_lambda_[k];
  const double c = norm_const_[k];
  switch (kind_) {
    case BasisKind::dirichlet_swirl:
      return c * s * cyl_j1_prime(s * r);
    case BasisKind::neumann_scalar:
      return k == 0 ? 0.0 : -c * s * cyl_j(1, s * r);
    case BasisKind::annulus_dirichlet_swirl:
      return c * s *
             (cyl_j1_prime(s * r) * y1_inner_[k] - y1_prime(s * r) * j1_inner_[k]);
  }
  return 0.0;
}

double EigenBasis::eval_curl_partner(std::size_t k, double r) const {
  check_index(k);
  check_radius(r);
  require(kind_ != BasisKind::neumann_scalar,
          "eval_curl_partner: defined for swirl bases only");
  const double s = sqrt_lambda_[k];
  const double c = norm_const_[k];
  if (kind_ == BasisKind::dirichlet_swirl) return c * cyl_j(0, s * r);
  return c * (cyl_j(0, s * r) * y1_inner_[k] - cyl_y(0, s * r) * j1_inner_[k]);
}

double EigenBasis::eval_curl_partner_deriv(std::size_t k, double r) const {
  check_index(k);
  check_radius(r);
  require(kind_ != BasisKind::neumann_scalar,
          "eval_curl_partner_deriv: defined for swirl bases only");
  const double s = sqrt_lambda_[k];
  const double c = norm_const_[k];
  if (kind_ == BasisKind::dirichlet_swirl) return -c * s * cyl_j(1, s * r);
  return -c * s *
         (cyl_j(1, s * r) * y1_inner_[k] - cyl_y(1, s * r) * j1_inner_[k]);
}

double EigenBasis::cross(int order, std::size_t k, double x) const {
  check_index(k);
  require(kind_ == BasisKind::annulus_dirichlet_swirl,
          "cross: annulus bases only");
  return cyl_j(order, x) * y1_inner_[k] - cyl_y(order, x) * j1_inner_[k];
}

}  // namespace swirl
