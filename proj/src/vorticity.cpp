#include "swirl/vorticity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

/// Derivative at x0 of the Lagrange interpolant through the m nodes
/// grid[lo .. lo+m). Exact for polynomials of degree < m, so on the
/// clustered canonical grids a five-node window leaves h^4-sized errors.
double window_derivative(const std::vector<double>& grid,
                         const std::vector<double>& values, std::size_t lo,
                         std::size_t m, double x0) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double denom = 1.0;
    for (std::size_t l = 0; l < m; ++l)
      if (l != i) denom *= grid[lo + i] - grid[lo + l];
    double dsum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      double p = 1.0;
      for (std::size_t l = 0; l < m; ++l)
        if (l != i && l != j) p *= x0 - grid[lo + l];
      dsum += p;
    }
    acc += values[lo + i] * dsum / denom;
  }
  return acc;
}

void solve4(std::array<std::array<double, 4>, 4>& a,
            std::array<double, 4>& b) {
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    require(a[c][c] != 0.0, "boundary flux: singular fit system");
    for (std::size_t r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t cc = c; cc < 4; ++cc) a[r][cc] -= f * a[c][cc];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 4; c-- > 0;) {
    for (std::size_t cc = c + 1; cc < 4; ++cc) b[c] -= a[c][cc] * b[cc];
    b[c] /= a[c][c];
  }
}

/// Wall slope from a least-squares cubic in the depth over
/// [fit_depth, 4 fit_depth], evaluated back at the wall. Averaging across
/// the window cancels the oscillatory truncation tail that a local stencil
/// would read verbatim.
double fitted_wall_slope(const RadialProfile& w, bool at_outer,
                         double fit_depth) {
  const std::vector<double>& g = w.grid;
  const double edge = at_outer ? g.back() : g.front();
  const double d_hi = 4.0 * fit_depth;
  std::array<double, 7> zp{};
  std::array<std::array<double, 4>, 4> a{};
  std::array<double, 4> rhs{};
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = at_outer ? edge - g[i] : g[i] - edge;
    if (d < fit_depth || d > d_hi) continue;
    const double z = d / d_hi;
    double p = 1.0;
    for (std::size_t q = 0; q < 7; ++q, p *= z) {
      zp[q] += p;
      if (q < 4) rhs[q] += p * w.values[i];
    }
    ++count;
  }
  require(count >= 12,
          "boundary flux: too few nodes in the fit window; refine the grid "
          "or adjust fit_depth");
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) a[r][c] = zp[r + c];
  solve4(a, rhs);
  const double slope_depth = rhs[1] / d_hi;
  return at_outer ? -slope_depth : slope_depth;
}

/// d(omega)/dr at the requested wall.
double wall_derivative(const RadialProfile& w, bool at_outer,
                       double fit_depth) {
  if (fit_depth > 0.0) return fitted_wall_slope(w, at_outer, fit_depth);
  const std::size_t n = w.grid.size();
  const std::size_t m = std::min<std::size_t>(6, n);
  const std::size_t lo = at_outer ? n - m : 0;
  const double edge = at_outer ? w.grid.back() : w.grid.front();
  return window_derivative(w.grid, w.values, lo, m, edge);
}

void check_swirl_field(const SpectralField& u, const char* who) {
  require(u.basis != nullptr, std::string(who) + ": field has no basis");
  require(u.basis->kind() != BasisKind::neumann_scalar,
          std::string(who) + ": expects a swirl velocity field");
  require(u.coeffs.size() <= u.basis->size(),
          std::string(who) + ": more coefficients than basis modes");
}

}  // namespace

RadialProfile curl(const RadialProfile& u) {
  validate(u);
  const std::size_t n = u.grid.size();
  require(n >= 8, "curl: need at least eight grid nodes");
  RadialProfile w = u;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i <= 2 ? 0 : std::min(i - 2, n - 5);
    const double dv = window_derivative(u.grid, u.values, lo, 5, u.grid[i]);
    // w = v' + v/r; on the axis v(0) = 0 and both terms equal v'(0).
    w.values[i] = u.grid[i] == 0.0 ? 2.0 * dv : dv + u.values[i] / u.grid[i];
  }
  return w;
}

SpectralField curl(const SpectralField& u, const BasisPtr& target) {
  check_swirl_field(u, "curl");
  require(target != nullptr, "curl: missing target basis");
  require(u.basis->kind() == BasisKind::dirichlet_swirl,
          "curl: spectral curl maps disk swirl fields");
  require(target->kind() == BasisKind::neumann_scalar,
          "curl: target must be a Neumann scalar basis");
  require(target->size() > u.coeffs.size(),
          "curl: target basis has too few modes");
  SpectralField out;
  out.basis = target;
  out.coeffs.assign(target->size(), 0.0);
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
    const double s = u.basis->sqrt_lambda(k);
    require(std::abs(target->sqrt_lambda(k + 1) - s) <= 1e-10 * s,
            "curl: swirl and Neumann bases are misaligned");
    // curl(c_k J1(s r) e_theta) = s c_k J0(s r), re-expressed in the
    // target's own normalization.
    out.coeffs[k + 1] =
        u.coeffs[k] * s * u.basis->norm_const(k) / target->norm_const(k + 1);
  }
  return out;
}

RadialProfile curl_profile(const SpectralField& u,
                           const std::vector<double>& grid) {
  check_swirl_field(u, "curl_profile");
  require(!grid.empty(), "curl_profile: empty grid");
  RadialProfile w;
  w.geometry = u.basis->geometry();
  w.grid = grid;
  w.values.assign(grid.size(), 0.0);
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
    const double amp = u.coeffs[k] * u.basis->sqrt_lambda(k);
    if (amp == 0.0) continue;
    for (std::size_t i = 0; i < grid.size(); ++i)
      w.values[i] += amp * u.basis->eval_curl_partner(k, grid[i]);
  }
  return w;
}

RadialProfile curl_of(const DrivenSolution& sol, std::size_t n) {
  require(sol.basis != nullptr, "curl_of: solution has no basis");
  const Geometry& geom = sol.basis->geometry();
  SpectralField part;
  part.basis = sol.basis;
  part.coeffs = sol.homogeneous;
  RadialProfile w = curl_profile(part, make_grid(geom, n));
  double beta1 = 0.0;
  if (geom.is_disk()) {
    require(sol.boundary.size() == 1, "curl_of: malformed disk solution");
    beta1 = sol.boundary[0];
  } else {
    require(sol.boundary.size() == 2, "curl_of: malformed annulus solution");
    beta1 =
        harmonic_interpolant(sol.boundary[0], sol.boundary[1], geom.rho).beta1;
  }
  // rot(beta1 f1 + beta2 f2) = beta1 / pi; the f2 part is curl free.
  for (double& v : w.values) v += beta1 / kPi;
  return w;
}

double ring_mass(const RadialProfile& profile, double r0, double r1) {
  validate(profile);
  const double lo = profile.geometry.inner();
  require(r0 < r1, "ring_mass: cut radii out of order");
  require(r0 >= lo - 1e-12 && r1 <= 1.0 + 1e-12,
          "ring_mass: cut outside the domain interval");
  const std::size_t m =
      std::max<std::size_t>(257, profile.grid.size() + 1);
  const std::vector<double> x = chebyshev_lobatto(r0, r1, m);
  const std::vector<double> w = clenshaw_curtis_weights(r0, r1, m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    acc += w[i] * profile_value(profile, x[i]) * x[i];
  return 2.0 * kPi * acc;
}

double total_mass(const RadialProfile& omega) {
  return ring_mass(omega, omega.geometry.inner(), 1.0);
}

double l1_mass(const RadialProfile& omega) {
  return lebesgue_norm(omega, 1.0);
}

ShellMasses shell_mass(const RadialProfile& omega, double outer_cut,
                       double inner_cut) {
  const double lo = omega.geometry.inner();
  require(outer_cut > lo && outer_cut < 1.0,
          "shell_mass: outer cut outside the domain interval");
  ShellMasses out;
  if (omega.geometry.is_disk()) {
    require(inner_cut < 0.0, "shell_mass: inner cut needs an annulus");
    out.interior = ring_mass(omega, 0.0, outer_cut);
  } else {
    require(inner_cut > lo && inner_cut < outer_cut,
            "shell_mass: inner cut outside (rho, outer_cut)");
    out.inner_shell = ring_mass(omega, lo, inner_cut);
    out.interior = ring_mass(omega, inner_cut, outer_cut);
  }
  out.outer_shell = ring_mass(omega, outer_cut, 1.0);
  return out;
}

FluxCheck boundary_flux(const RadialProfile& omega, double nu,
                        const std::vector<double>& alpha_prime,
                        double fit_depth) {
  validate(omega);
  require(std::isfinite(nu) && nu > 0.0,
          "boundary flux: viscosity must be positive");
  require(std::isfinite(fit_depth) && fit_depth >= 0.0,
          "boundary flux: fit depth must be nonnegative");
  const bool disk = omega.geometry.is_disk();
  const std::size_t walls = disk ? 1 : 2;
  require(alpha_prime.size() == walls,
          "boundary flux: one angular rate per boundary circle");
  const double width = 1.0 - omega.geometry.inner();
  require(8.0 * fit_depth < width,
          "boundary flux: fit window spans the whole gap");
  FluxCheck out;
  out.measured.resize(walls);
  out.predicted.resize(walls);
  out.residual.resize(walls);
  // Outward normal is +e_r at the outer wall and -e_r at the inner one.
  out.measured[0] = wall_derivative(omega, true, fit_depth);
  out.predicted[0] = alpha_prime[0] / (2.0 * kPi * nu);
  if (!disk) {
    out.measured[1] = -wall_derivative(omega, false, fit_depth);
    out.predicted[1] =
        -omega.geometry.rho * alpha_prime[1] / (2.0 * kPi * nu);
  }
  double scale = 0.0;
  for (double p : out.predicted) scale = std::max(scale, std::abs(p));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t j = 0; j < walls; ++j)
    out.residual[j] = std::abs(out.measured[j] - out.predicted[j]) / scale;
  return out;
}

FluxCheck boundary_flux(const RadialProfile& omega, double nu, double t,
                        const std::vector<DrivingMotion>& alphas,
                        double fit_depth) {
  std::vector<double> rates;
  rates.reserve(alphas.size());
  for (const DrivingMotion& alpha : alphas) {
    require(alpha.has_density() && alpha.jumps().empty(),
            "boundary flux: driving must be differentiable (no jumps)");
    rates.push_back(alpha.density(t));
  }
  return boundary_flux(omega, nu, rates, fit_depth);
}

BoundarySplit boundary_decompose(const RadialProfile& u0) {
  validate(u0);
  require(u0.geometry.is_disk(), "boundary_decompose: disk fields only");
  BoundarySplit out;
  out.b = 2.0 * kPi * profile_value(u0, 1.0);
  out.remainder = u0;
  for (std::size_t i = 0; i < u0.grid.size(); ++i)
    out.remainder.values[i] -= out.b * u0.grid[i] / (2.0 * kPi);
  return out;
}

double DiskMeasure::total() const {
  double s = interior_mass;
  for (double a : atoms) s += a;
  return s;
}

ConcentrationReport concentration_sweep(
    const RadialProfile& u0, const SwirlBoundaryData& bc,
    const std::vector<double>& nus, double t, const BasisPtr& basis,
    const std::function<double(double)>& collar) {
  require(basis != nullptr, "concentration: missing basis");
  require(basis->kind() != BasisKind::neumann_scalar,
          "concentration: needs a swirl basis");
  const Geometry& geom = basis->geometry();
  const bool same_bc =
      geom.domain == bc.geometry.domain &&
      (geom.is_disk() || std::abs(geom.rho - bc.geometry.rho) < 1e-12);
  require(same_bc && geom.domain == u0.geometry.domain,
          "concentration: geometry mismatch");
  require(std::isfinite(t) && t > 0.0,
          "concentration: time must be positive");
  require(nus.size() >= 2, "concentration: need at least two viscosities");
  for (std::size_t i = 0; i < nus.size(); ++i) {
    require(std::isfinite(nus[i]) && nus[i] > 0.0,
            "concentration: viscosities must be positive");
    require(i == 0 || nus[i] < nus[i - 1],
            "concentration: viscosities must decrease");
  }
  std::function<double(double)> delta = collar;
  if (!delta) delta = [](double nu) { return std::pow(nu, 0.4); };
  const bool disk = geom.is_disk();
  const double lo = geom.inner();
  const SpectralField c0 = to_spectral(u0, basis);
  const std::size_t n = std::max<std::size_t>(2049, 2 * basis->size() + 1);

  ConcentrationReport rep;
  std::vector<double> widths;
  RadialProfile last_curl;
  std::vector<double> last_boundary;
  for (double nu : nus) {
    const double d = delta(nu);
    const double outer_cut = 1.0 - d;
    const double inner_cut = disk ? -1.0 : lo + d;
    require(std::isfinite(d) && d > 0.0 &&
                outer_cut > (disk ? 0.0 : inner_cut),
            "concentration: collar swallows the domain");
    const DrivenSolution sol = solve(c0, bc, nu, t);
    const RadialProfile w = curl_of(sol, n);
    const ShellMasses sm = shell_mass(w, outer_cut, inner_cut);
    ConcentrationRow row;
    row.nu = nu;
    row.interior_mass = sm.interior;
    row.shells.push_back(sm.outer_shell);
    if (!disk) row.shells.push_back(sm.inner_shell);
    rep.rows.push_back(std::move(row));
    widths.push_back(d);
    if (nu == nus.back()) {
      last_curl = w;
      last_boundary = sol.boundary;
      rep.limit.cuts = disk ? std::vector<double>{outer_cut}
                            : std::vector<double>{outer_cut, inner_cut};
    }
  }

  // The collar also holds a slice of the smooth interior density, of size
  // proportional to its width; eliminating that slice from the two finest
  // runs leaves the atom.
  const std::size_t m = rep.rows.size();
  const double d1 = widths[m - 2];
  const double d2 = widths[m - 1];
  const std::size_t walls = disk ? 1 : 2;
  for (std::size_t j = 0; j < walls; ++j) {
    const double s1 = rep.rows[m - 2].shells[j];
    const double s2 = rep.rows[m - 1].shells[j];
    rep.limit.atoms.push_back((s2 * d1 - s1 * d2) / (d1 - d2));
    int dir = 0;
    for (std::size_t i = 1; i < m; ++i) {
      const double step = rep.rows[i].shells[j] - rep.rows[i - 1].shells[j];
      if (step == 0.0) continue;
      const int sgn = step > 0.0 ? 1 : -1;
      if (dir == 0)
        dir = sgn;
      else if (dir != sgn)
        rep.limit.converged = false;
    }
  }

  const double v_outer = profile_value(u0, 1.0);
  rep.limit.predicted.push_back(last_boundary[0] - 2.0 * kPi * v_outer);
  if (!disk) {
    const double v_inner = profile_value(u0, lo);
    rep.limit.predicted.push_back(2.0 * kPi * lo * v_inner -
                                  lo * lo * last_boundary[1]);
  }

  rep.limit.interior = last_curl;
  for (std::size_t i = 0; i < last_curl.grid.size(); ++i) {
    const double r = last_curl.grid[i];
    if (r >= rep.limit.cuts[0] || (!disk && r <= rep.limit.cuts[1]))
      rep.limit.interior.values[i] = 0.0;
  }
  rep.limit.interior_mass = rep.rows.back().interior_mass;
  return rep;
}

DiskMeasure concentration_limit(const RadialProfile& u0,
                                const SwirlBoundaryData& bc,
                                const std::vector<double>& nus, double t,
                                const BasisPtr& basis,
                                const std::function<double(double)>& collar) {
  return concentration_sweep(u0, bc, nus, t, basis, collar).limit;
}

void write_concentration_csv(const std::string& path,
                             const ConcentrationReport& report) {
  require(!report.rows.empty(), "concentration csv: empty report");
  std::ofstream out(path);
  require(out.good(), "concentration csv: cannot open " + path);
  out.precision(17);
  const bool two = report.rows.front().shells.size() == 2;
  out << "nu,interior_mass,shell_mass_outer";
  if (two) out << ",shell_mass_inner";
  out << ",predicted_atom_outer";
  if (two) out << ",predicted_atom_inner";
  out << '\n';
  for (const ConcentrationRow& row : report.rows) {
    out << row.nu << ',' << row.interior_mass << ',' << row.shells[0];
    if (two) out << ',' << row.shells[1];
    out << ',' << report.limit.predicted[0];
    if (two) out << ',' << report.limit.predicted[1];
    out << '\n';
  }
  require(out.good(), "concentration csv: write failed for " + path);
}

}  // namespace swirl
