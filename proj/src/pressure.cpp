#include "swirl/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

/// Derivative at grid[i] of the Lagrange interpolant through five nodes
/// around i. The check in gradient_identity_residual must not lean on
/// the Chebyshev series that produced p, so it differentiates the stored
/// point values directly.
double five_node_derivative(const std::vector<double>& grid,
                            const std::vector<double>& values,
                            std::size_t i) {
  const std::size_t n = grid.size();
  const std::size_t lo = i <= 2 ? 0 : std::min(i - 2, n - 5);
  const double x0 = grid[i];
  double acc = 0.0;
  for (std::size_t a = 0; a < 5; ++a) {
    double denom = 1.0;
    for (std::size_t l = 0; l < 5; ++l)
      if (l != a) denom *= grid[lo + a] - grid[lo + l];
    double dsum = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == a) continue;
      double p = 1.0;
      for (std::size_t l = 0; l < 5; ++l)
        if (l != a && l != j) p *= x0 - grid[lo + l];
      dsum += p;
    }
    acc += values[lo + a] * dsum / denom;
  }
  return acc;
}

}  // namespace

PressureProfile pressure_from_velocity(const RadialProfile& u,
                                       bool normalize) {
  validate(u);
  const double lo = u.geometry.inner();
  const std::size_t m = std::max<std::size_t>(513, u.grid.size());

  // Integrand of the cumulative pressure, s(r)^2 r = v(r)^2 / r, sampled
  // on a Lobatto grid and re-expanded in Chebyshev polynomials. At the
  // disk center the swirl vanishes linearly, so the integrand extends by
  // zero; clustered nodes nearby keep the division benign.
  const std::vector<double> nodes = chebyshev_lobatto(lo, 1.0, m);
  std::vector<double> g(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double r = nodes[j];
    const double v = profile_value(u, r);
    g[j] = r > 0.0 ? v * v / r : 0.0;
  }

  // p(r) = -int_r^1 g = G(r) - G(1) with G the spectral antiderivative.
  const std::vector<double> G =
      chebyshev_antiderivative(chebyshev_coefficients(g), lo, 1.0);
  const double at_outer = chebyshev_eval(G, lo, 1.0, 1.0);

  PressureProfile p;
  p.geometry = u.geometry;
  p.grid = u.grid;
  p.values.resize(u.grid.size());
  for (std::size_t i = 0; i < u.grid.size(); ++i) {
    p.values[i] = chebyshev_eval(G, lo, 1.0, u.grid[i]) - at_outer;
  }

  if (normalize) {
    const std::vector<double> w = clenshaw_curtis_weights(lo, 1.0, m);
    double integral = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      integral += w[j] * (chebyshev_eval(G, lo, 1.0, nodes[j]) - at_outer) *
                  nodes[j] * 2.0 * kPi;
    }
    const double mean = integral / u.geometry.area();
    for (double& value : p.values) value -= mean;
    p.mean_zero = true;
  }
  return p;
}

double pressure_integral(const PressureProfile& p) {
  RadialProfile view{p.geometry, p.grid, p.values};
  validate(view);
  const double lo = p.geometry.inner();
  const std::size_t m = std::max<std::size_t>(513, p.grid.size() + 1);
  const std::vector<double> nodes = chebyshev_lobatto(lo, 1.0, m);
  const std::vector<double> w = clenshaw_curtis_weights(lo, 1.0, m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += w[j] * profile_value(view, nodes[j]) * nodes[j] * 2.0 * kPi;
  }
  return acc;
}

double gradient_identity_residual(const RadialProfile& u,
                                  const PressureProfile& p) {
  validate(u);
  const std::size_t n = u.grid.size();
  require(p.grid.size() == n, "gradient identity: grid size mismatch");
  require(p.values.size() == n, "gradient identity: value count mismatch");
  require(p.geometry.domain == u.geometry.domain &&
              p.geometry.rho == u.geometry.rho,
          "gradient identity: geometry mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::abs(p.grid[i] - u.grid[i]) <= 1e-12,
            "gradient identity: pressure lives on a different grid");
  }
  require(n >= 8, "gradient identity: grid too coarse");

  double vmax2 = 0.0;
  for (double v : u.values) vmax2 = std::max(vmax2, v * v);

  // Interior nodes only: the stencil loses accuracy one-sided, and on the
  // disk the identity at r = 0 reduces to 0 = 0.
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = u.grid[i];
    if (r <= 0.0) continue;
    const double dp = five_node_derivative(p.grid, p.values, i);
    worst = std::max(worst, std::abs(r * dp - u.values[i] * u.values[i]));
  }
  return vmax2 > 0.0 ? worst / vmax2 : worst;
}

void write_pressure_csv(const std::string& path, const PressureProfile& p) {
  require(p.grid.size() == p.values.size() && !p.grid.empty(),
          "pressure csv: inconsistent profile");
  std::ofstream out(path);
  require(out.good(), "pressure csv: cannot open " + path);
  out.precision(17);
  out << "r,p\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    out << p.grid[i] << ',' << p.values[i] << '\n';
  }
  require(out.good(), "pressure csv: write failed for " + path);
}

}  // namespace swirl
