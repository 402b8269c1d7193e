#include "swirl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "swirl/basis.hpp"

namespace swirl {
namespace {

constexpr std::size_t kModes = 1024;

/// Fornberg's recurrence: weights of the m-th derivative at z for data on
/// the (distinct, arbitrary) nodes x[0..n). Exact for any node layout, so
/// the clustered grid needs no resampling.
std::vector<double> stencil_weights(double z, const double* x, std::size_t n,
                                    std::size_t m) {
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 *
                    (static_cast<double>(k) * c[i - 1][k - 1] -
                     c5 * c[i - 1][k]) /
                    c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

/// u^nu(t) - u0, evaluated pointwise from three boundary-exact pieces:
/// the alpha-driven response, minus the step response matching u0's own
/// trace, plus the decayed trace-free remainder.
class DriftField {
 public:
  DriftField(const RadialProfile& u0, const DrivingMotion* alpha, double nu,
             double t) {
    validate(u0);
    const Geometry geom = u0.geometry;
    basis_ = share(geom.is_disk()
                       ? EigenBasis::dirichlet_swirl(kModes)
                       : EigenBasis::annulus_dirichlet_swirl(geom.inner(),
                                                             kModes));
    const double a1 = 2.0 * kPi * profile_value(u0, 1.0);
    std::vector<double> trace{a1};
    SwirlBoundaryData matched_bc = SwirlBoundaryData::disk(
        DrivingMotion::step(a1, 0.0));
    if (!geom.is_disk()) {
      const double rho = geom.inner();
      const double a2 = 2.0 * kPi * profile_value(u0, rho) / rho;
      trace = {a1, a2};
      matched_bc = SwirlBoundaryData::annulus(
          rho, DrivingMotion::step(a1, 0.0), DrivingMotion::step(a2, 0.0));
    }

    RadialProfile remainder = u0;
    for (std::size_t i = 0; i < remainder.grid.size(); ++i)
      remainder.values[i] -= harmonic_speed(geom, trace, remainder.grid[i]);
    tail_ = to_spectral(remainder, basis_);
    for (std::size_t k = 0; k < tail_.coeffs.size(); ++k)
      tail_.coeffs[k] *= std::expm1(-nu * t * basis_->lambda(k));

    const SpectralField zero{basis_,
                             std::vector<double>(basis_->size(), 0.0)};
    matched_ = solve(zero, matched_bc, nu, t);
    if (alpha != nullptr) {
      const SwirlBoundaryData bc =
          geom.is_disk()
              ? SwirlBoundaryData::disk(*alpha)
              : SwirlBoundaryData::annulus(geom.inner(), *alpha,
                                           DrivingMotion::step(0.0, 0.0));
      driven_ = solve(zero, bc, nu, t);
      has_driven_ = true;
    }
  }

  double value(double r) const {
    double v = synthesize_at(tail_, r) - solution_value(matched_, r);
    if (has_driven_) v += solution_value(driven_, r);
    return v;
  }

 private:
  BasisPtr basis_;
  SpectralField tail_{nullptr, {}};
  DrivenSolution matched_;
  DrivenSolution driven_;
  bool has_driven_ = false;
};

void check_nu_grid(const std::vector<double>& nus, const char* who) {
  require(!nus.empty(), std::string(who) + ": empty viscosity list");
  for (double nu : nus)
    require(nu > 0.0, std::string(who) + ": viscosities must be positive");
}

}  // namespace

RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
  require(points.size() >= 3, "rate_fit: need at least three points");
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [nu, value] : points) {
    require(nu > 0.0 && value > 0.0, "rate_fit: data must be positive");
    const double x = std::log(nu);
    const double y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ymean = sy / n;
  for (const auto& [nu, value] : points) {
    const double y = std::log(value);
    const double yhat = fit.intercept + fit.slope * std::log(nu);
    ss_res += (y - yhat) * (y - yhat);
    ss_tot += (y - ymean) * (y - ymean);
  }
  fit.r_squared = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::vector<double> default_nu_grid() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

std::vector<InteriorRow> interior_convergence(const RadialProfile& u0,
                                              const DrivingMotion& alpha,
                                              double t, double r0, double r1,
                                              const std::vector<double>& nus) {
  validate(u0);
  check_nu_grid(nus, "interior_convergence");
  require(t > 0.0, "interior_convergence: time must be positive");
  require(r1 < 1.0, "interior_convergence: band touches the boundary");
  require(r0 < r1, "interior_convergence: empty band");
  require(u0.geometry.is_disk() ? r0 >= 0.0 : r0 > u0.geometry.inner(),
          "interior_convergence: band touches the inner boundary");

  const std::vector<double> grid = make_grid(u0.geometry, 1024);
  std::size_t lo = 0;
  while (lo < grid.size() && grid[lo] < r0) ++lo;
  std::size_t hi = lo;
  while (hi < grid.size() && grid[hi] <= r1) ++hi;
  require(hi - lo >= 7, "interior_convergence: band holds too few nodes");

  std::vector<InteriorRow> rows;
  rows.reserve(nus.size());
  std::vector<double> d(hi - lo);
  for (double nu : nus) {
    const DriftField drift(u0, &alpha, nu, t);
    for (std::size_t i = lo; i < hi; ++i) d[i - lo] = drift.value(grid[i]);

    InteriorRow row;
    row.nu = nu;
    for (std::size_t i = lo; i < hi; ++i) {
      row.sup[0] = std::max(row.sup[0], std::abs(d[i - lo]));
      const std::size_t start =
          std::min(std::max(i, lo + 2) - 2, hi - 5);
      for (std::size_t m : {1u, 2u}) {
        const std::vector<double> w =
            stencil_weights(grid[i], grid.data() + start, 5, m);
        double deriv = 0.0;
        for (std::size_t j = 0; j < 5; ++j)
          deriv += w[j] * d[start + j - lo];
        row.sup[m] = std::max(row.sup[m], std::abs(deriv));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::vector<RegionRow> region_scan(const RadialProfile& u0, double t,
                                   const std::vector<double>& nus,
                                   const std::function<double(double)>& cut_of,
                                   const char* who) {
  validate(u0);
  check_nu_grid(nus, who);
  require(t > 0.0, std::string(who) + ": time must be positive");

  const double inner = u0.geometry.inner();
  std::vector<RegionRow> rows;
  rows.reserve(nus.size());
  for (double nu : nus) {
    const double cut = cut_of(nu);
    const double delta = 1.0 - cut;
    const double lo = u0.geometry.is_disk() ? 0.0 : inner + delta;
    require(cut > lo, std::string(who) + ": cut leaves no region");
    const DriftField drift(u0, nullptr, nu, t);
    double sup = 0.0;
    for (double r : chebyshev_lobatto(lo, cut, 601))
      sup = std::max(sup, std::abs(drift.value(r)));
    rows.push_back({nu, delta, sup});
  }
  return rows;
}

}  // namespace

std::vector<RegionRow> uniform_region(const RadialProfile& u0, double t,
                                      const std::vector<double>& nus,
                                      double exponent) {
  require(exponent > 0.0 && exponent < 0.5,
          "uniform_region: exponent must sit strictly below 1/2");
  return region_scan(
      u0, t, nus, [&](double nu) { return 1.0 - std::pow(nu, exponent); },
      "uniform_region");
}

std::vector<RegionRow> uniform_region_cut(const RadialProfile& u0, double t,
                                          const std::vector<double>& nus,
                                          double cut) {
  require(cut > 0.0 && cut <= 1.0, "uniform_region_cut: cut outside (0, 1]");
  return region_scan(
      u0, t, nus, [&](double) { return cut; }, "uniform_region_cut");
}

std::vector<LayerRow> layer_comparison(const std::vector<double>& ts,
                                       const std::vector<double>& rs,
                                       BieMode mode) {
  require(!ts.empty() && !rs.empty(), "layer_comparison: empty grid");
  for (double r : rs)
    require(r >= 0.0 && r < 1.0, "layer_comparison: radius outside [0, 1)");
  double horizon = 0.0;
  for (double t : ts) {
    require(t > 0.0, "layer_comparison: times must be positive");
    horizon = std::max(horizon, t);
  }

  const double rim = 1.0 / (2.0 * kPi);
  const BoundaryDensity g =
      graded_density(horizon, 512, [&](double) { return rim; });
  const BoundaryDensity h = solve_bie(g, mode);

  static const BasisPtr basis = share(EigenBasis::dirichlet_swirl(256));
  const SpectralField zero{basis, std::vector<double>(basis->size(), 0.0)};
  const SwirlBoundaryData bc =
      SwirlBoundaryData::disk(DrivingMotion::step(1.0, 0.0));

  std::vector<LayerRow> rows;
  rows.reserve(ts.size() * rs.size());
  for (double t : ts) {
    const DrivenSolution sol = solve(zero, bc, 1.0, t);
    for (double r : rs) {
      LayerRow row;
      row.t = t;
      row.r = r;
      row.value_layer = double_layer_eval(h, t, r);
      row.value_spectral = solution_value(sol, r);
      row.abs_err = std::abs(row.value_layer - row.value_spectral);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_interior_csv(const std::string& path,
                        const std::vector<InteriorRow>& rows) {
  std::ofstream out(path);
  require(out.good(), "write_interior_csv: cannot open " + path);
  out << "nu,sup_m0,sup_m1,sup_m2\n";
  out.precision(17);
  for (const InteriorRow& r : rows)
    out << r.nu << "," << r.sup[0] << "," << r.sup[1] << "," << r.sup[2]
        << "\n";
}

void write_region_csv(const std::string& path,
                      const std::vector<RegionRow>& rows) {
  std::ofstream out(path);
  require(out.good(), "write_region_csv: cannot open " + path);
  out << "nu,delta,sup_error\n";
  out.precision(17);
  for (const RegionRow& r : rows)
    out << r.nu << "," << r.delta << "," << r.sup_error << "\n";
}

void write_layer_csv(const std::string& path,
                     const std::vector<LayerRow>& rows) {
  std::ofstream out(path);
  require(out.good(), "write_layer_csv: cannot open " + path);
  out << "t,r,value_layer,value_spectral,abs_err\n";
  out.precision(17);
  for (const LayerRow& r : rows)
    out << r.t << "," << r.r << "," << r.value_layer << ","
        << r.value_spectral << "," << r.abs_err << "\n";
}

}  // namespace swirl
