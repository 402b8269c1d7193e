#include "swirl/layerpot.hpp"

#include <algorithm>
#include <cmath>

#include "swirl/core.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

constexpr double kFlatLimit = 0.14104739588693907;  // 1 / (4 sqrt(pi))

/// Integral over [0, pi] of a kernel integrand concentrated near theta = 0
/// on the scale theta_star: one dense rule across the peak, a coarse one
/// for the exponentially small remainder.
double peaked_theta_integral(const std::function<double(double)>& f,
                             double theta_star) {
  double acc = 0.0;
  const QuadRule peak = gauss_legendre_on(0.0, theta_star, 64);
  for (std::size_t i = 0; i < peak.x.size(); ++i)
    acc += peak.w[i] * f(peak.x[i]);
  if (theta_star < kPi) {
    const QuadRule far = gauss_legendre_on(theta_star, kPi, 32);
    for (std::size_t i = 0; i < far.x.size(); ++i)
      acc += far.w[i] * f(far.x[i]);
  }
  return acc;
}

/// Angular cutoff: exp(-q sin^2(theta/2)) has dropped to e^-40 beyond it.
double peak_cutoff(double q) {
  if (q <= 40.0) return kPi;
  return 2.0 * std::asin(std::sqrt(40.0 / q));
}

/// Product-integration weights for int_0^{t_i} kernel(t_i - s) f(s) ds
/// with piecewise linear f: row i holds the weights on f_0 .. f_i. The
/// kernel moments mu(tau) = int_0^tau k and mu1(tau) = int_0^tau sigma k
/// are spectrally tabulated in the variable xi = sqrt(sigma), where
/// sqrt(sigma) k(sigma) is smooth, so the tau^(-1/2) singularity is
/// integrated exactly.
struct ProductWeights {
  std::vector<double> times;
  std::vector<std::vector<double>> rows;

  std::vector<double> apply(const std::vector<double>& f) const {
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += rows[i][j] * f[j];
      out[i] = acc;
    }
    return out;
  }
};

struct KernelMoments {
  double root_horizon = 0.0;
  std::vector<double> anti;       // antiderivative of m(xi)
  std::vector<double> anti_xisq;  // antiderivative of xi^2 m(xi)

  double mu(double tau) const {
    const double xi = std::min(std::sqrt(std::max(tau, 0.0)), root_horizon);
    return 2.0 * chebyshev_eval(anti, 0.0, root_horizon, xi);
  }
  double mu1(double tau) const {
    const double xi = std::min(std::sqrt(std::max(tau, 0.0)), root_horizon);
    return 2.0 * chebyshev_eval(anti_xisq, 0.0, root_horizon, xi);
  }
};

KernelMoments make_moments(double horizon) {
  const double b = std::sqrt(horizon);
  const std::size_t n = 129;
  const std::vector<double> xi = chebyshev_lobatto(0.0, b, n);
  std::vector<double> m(n), m2(n);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = xi[j] == 0.0 ? kFlatLimit
                        : xi[j] * boundary_kernel(xi[j] * xi[j]);
    m2[j] = xi[j] * xi[j] * m[j];
  }
  KernelMoments out;
  out.root_horizon = b;
  out.anti = chebyshev_antiderivative(chebyshev_coefficients(m), 0.0, b);
  out.anti_xisq = chebyshev_antiderivative(chebyshev_coefficients(m2), 0.0, b);
  return out;
}

ProductWeights make_weights(const std::vector<double>& times) {
  const KernelMoments mom = make_moments(times.back());
  ProductWeights pw;
  pw.times = times;
  pw.rows.resize(times.size());
  for (std::size_t i = 1; i < times.size(); ++i) {
    std::vector<double>& row = pw.rows[i];
    row.assign(i + 1, 0.0);
    for (std::size_t j = 1; j <= i; ++j) {
      const double a = times[i] - times[j];
      const double b = times[i] - times[j - 1];
      const double dt = times[j] - times[j - 1];
      const double dmu = mom.mu(b) - mom.mu(a);
      const double dmu1 = mom.mu1(b) - mom.mu1(a);
      row[j - 1] += (dmu1 - a * dmu) / dt;
      row[j] += (b * dmu - dmu1) / dt;
    }
  }
  return pw;
}

/// Unchecked piecewise linear lookup for the quadrature loops; the public
/// density_value validates first.
double interp(const BoundaryDensity& d, double t) {
  if (t < d.times.front()) return 0.0;
  if (t >= d.times.back()) return d.values.back();
  const auto it = std::upper_bound(d.times.begin(), d.times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - d.times.begin());
  const double w = (t - d.times[j - 1]) / (d.times[j] - d.times[j - 1]);
  return d.values[j - 1] + w * (d.values[j] - d.values[j - 1]);
}

void validate_density(const BoundaryDensity& d, const char* who) {
  require(d.times.size() >= 2, std::string(who) + ": need at least two nodes");
  require(d.values.size() == d.times.size(),
          std::string(who) + ": node/value count mismatch");
  require(d.times.front() == 0.0, std::string(who) + ": grid must start at 0");
  for (std::size_t i = 1; i < d.times.size(); ++i)
    require(d.times[i] > d.times[i - 1],
            std::string(who) + ": times must increase strictly");
}

/// int_0^tau interior_kernel(sigma, r) d sigma: the step response. The
/// integrand rises from an exponentially suppressed floor at sigma ~
/// (1-r)^2, so the panels halve geometrically until the floor is reached.
double step_layer(double tau, double r) {
  if (tau <= 0.0) return 0.0;
  const double floor = (1.0 - r) * (1.0 - r) / 300.0;
  double acc = 0.0;
  double hi = tau;
  for (int k = 0; k < 64 && hi > floor; ++k) {
    const double lo = std::max(hi / 2.0, hi > 2.0 * floor ? 0.0 : floor);
    const QuadRule rule = gauss_legendre_on(std::max(lo, floor), hi, 12);
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      acc += rule.w[i] * interior_kernel(rule.x[i], r);
    hi = lo;
  }
  return acc;
}

/// exp(-x) I_1(x) for x >= 0, switching to the large-argument expansion
/// where the library Bessel would overflow.
double scaled_bessel_i1(double x) {
  if (x < 30.0) return std::exp(-x) * std::cyl_bessel_i(1.0, x);
  const double u = 1.0 / x;
  const double series =
      1.0 + u * (-0.375 +
                 u * (-0.1171875 +
                      u * (-0.1025390625 +
                           u * (-0.144195556640625 + u * -0.2775764465332031))));
  return series / std::sqrt(2.0 * kPi * x);
}

}  // namespace

BoundaryDensity graded_density(double horizon, std::size_t nodes,
                               const std::function<double(double)>& f) {
  require(horizon > 0.0, "graded_density: horizon must be positive");
  require(nodes >= 2, "graded_density: need at least two nodes");
  require(static_cast<bool>(f), "graded_density: missing sampler");
  BoundaryDensity d;
  d.times.resize(nodes);
  d.values.resize(nodes);
  const double m = static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double frac = static_cast<double>(i) / m;
    d.times[i] = horizon * frac * frac * frac;
    d.values[i] = f(d.times[i]);
  }
  d.times.back() = horizon;
  return d;
}

double density_value(const BoundaryDensity& d, double t) {
  validate_density(d, "density_value");
  return interp(d, t);
}

double reduced_kernel(double tau) {
  require(tau > 0.0, "reduced_kernel: tau must be positive");
  const double q = 1.0 / tau;
  const auto f = [&](double theta) {
    const double s2 = std::sin(0.5 * theta);
    const double lam2 = q * s2 * s2;
    return lam2 > 700.0 ? 0.0 : lam2 * std::exp(-lam2);
  };
  return 2.0 * peaked_theta_integral(f, peak_cutoff(q)) / (8.0 * kPi * tau);
}

double interior_kernel(double tau, double r) {
  require(tau > 0.0, "interior_kernel: tau must be positive");
  require(r >= 0.0 && r <= 1.0, "interior_kernel: radius outside [0, 1]");
  const double gap = (1.0 - r) * (1.0 - r) / (4.0 * tau);
  if (gap > 700.0) return 0.0;
  const double q = r / tau;
  const auto f = [&](double theta) {
    const double s2 = std::sin(0.5 * theta);
    const double e = q * s2 * s2;
    if (e > 700.0) return 0.0;
    // 1 - r cos(theta) written cancellation-free: both terms nonnegative,
    // which keeps the kernel clean at tiny tau where theta ~ sqrt(tau).
    const double c = 1.0 - 2.0 * s2 * s2;
    return c * ((1.0 - r) + 2.0 * r * s2 * s2) * std::exp(-e);
  };
  const double angular = peaked_theta_integral(f, peak_cutoff(q));
  return std::exp(-gap) * angular / (4.0 * kPi * tau * tau);
}

double boundary_kernel(double tau) { return interior_kernel(tau, 1.0); }

BoundaryDensity apply_boundary_operator(const BoundaryDensity& f) {
  validate_density(f, "apply_boundary_operator");
  const ProductWeights pw = make_weights(f.times);
  BoundaryDensity out;
  out.times = f.times;
  out.values = pw.apply(f.values);
  return out;
}

BoundaryDensity solve_bie(const BoundaryDensity& g, BieMode mode,
                          std::size_t series_order) {
  validate_density(g, "solve_bie");
  const ProductWeights pw = make_weights(g.times);
  const std::size_t n = g.times.size();
  BoundaryDensity h;
  h.times = g.times;
  h.values.assign(n, 0.0);

  if (mode == BieMode::time_stepping) {
    h.values[0] = 2.0 * g.values[0];
    for (std::size_t i = 1; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) acc += pw.rows[i][j] * h.values[j];
      h.values[i] = (g.values[i] - acc) / (0.5 + pw.rows[i][i]);
    }
    return h;
  }

  // Flat-limit majorant of the operator norm: sqrt(tau)|kappa_b| peaks at
  // tau = 0, so ||2N|| <= 4 kFlatLimit sqrt(T). Past 1/2 the truncation
  // bound is void and the horizon is rejected.
  require(4.0 * kFlatLimit * std::sqrt(g.times.back()) < 0.5,
          "solve_bie: horizon too long for the series expansion");
  double gscale = 0.0;
  for (double v : g.values) gscale = std::max(gscale, std::abs(v));
  std::vector<double> term = g.values;
  for (std::size_t i = 0; i < n; ++i) h.values[i] = 2.0 * term[i];
  double prev = gscale;
  for (std::size_t j = 1; j <= series_order; ++j) {
    std::vector<double> next = pw.apply(term);
    for (double& v : next) v *= -2.0;
    term = std::move(next);
    double size = 0.0;
    for (double v : term) size = std::max(size, std::abs(v));
    if (size < 1e-15 * gscale) break;
    if (size > prev)
      throw ConvergenceError("solve_bie: series term grew; shorten the horizon");
    prev = size;
    for (std::size_t i = 0; i < n; ++i) h.values[i] += 2.0 * term[i];
  }
  return h;
}

double bie_residual(const BoundaryDensity& g, const BoundaryDensity& h) {
  validate_density(g, "bie_residual");
  validate_density(h, "bie_residual");
  require(g.times == h.times, "bie_residual: densities live on different grids");

  // Midpoint-refined grid: both piecewise linear functions are reproduced
  // exactly, so the interesting rows are the fresh collocation points.
  std::vector<double> fine;
  fine.reserve(2 * g.times.size() - 1);
  for (std::size_t i = 0; i + 1 < g.times.size(); ++i) {
    fine.push_back(g.times[i]);
    fine.push_back(0.5 * (g.times[i] + g.times[i + 1]));
  }
  fine.push_back(g.times.back());

  std::vector<double> gf(fine.size()), hf(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    gf[i] = interp(g, fine[i]);
    hf[i] = interp(h, fine[i]);
  }
  const ProductWeights pw = make_weights(fine);
  const std::vector<double> nh = pw.apply(hf);
  double worst = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i)
    worst = std::max(worst, std::abs(0.5 * hf[i] + nh[i] - gf[i]));
  return worst;
}

double double_layer_eval(const BoundaryDensity& h, double t, double r) {
  validate_density(h, "double_layer_eval");
  require(t > 0.0, "double_layer_eval: time must be positive");
  require(r >= 0.0 && r < 1.0,
          "double_layer_eval: radius must be strictly interior");
  require(t <= h.times.back() * (1.0 + 1e-12),
          "double_layer_eval: time beyond the density horizon");

  // Work in sigma = t - s. Panel edges follow the density nodes so the
  // piecewise linear factor stays smooth inside each panel; the panel
  // touching sigma = 0 is split geometrically down to the exponential
  // floor of the kernel.
  std::vector<double> edges;
  edges.push_back(0.0);
  for (std::size_t j = h.times.size(); j-- > 0;) {
    const double sigma = t - h.times[j];
    if (sigma > 0.0 && sigma < t) edges.push_back(sigma);
  }
  edges.push_back(t);
  std::sort(edges.begin(), edges.end());

  const double floor = (1.0 - r) * (1.0 - r) / 300.0;
  double acc = 0.0;
  const auto integrand = [&](double sigma) {
    return interp(h, t - sigma) * interior_kernel(sigma, r);
  };
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p];
    const double hi = edges[p + 1];
    if (hi <= floor) continue;
    if (lo == 0.0) {
      double top = hi;
      for (int k = 0; k < 64 && top > floor; ++k) {
        const double bottom =
            std::max(top / 2.0, top > 2.0 * floor ? 0.0 : floor);
        const QuadRule rule =
            gauss_legendre_on(std::max(bottom, floor), top, 12);
        for (std::size_t i = 0; i < rule.x.size(); ++i)
          acc += rule.w[i] * integrand(rule.x[i]);
        top = bottom;
      }
    } else {
      const QuadRule rule = gauss_legendre_on(lo, hi, 12);
      for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * integrand(rule.x[i]);
    }
  }
  return acc;
}

double leading_term(const BoundaryDensity& g, double t, double r,
                    std::size_t order) {
  validate_density(g, "leading_term");
  BoundaryDensity gk = g;
  if (order > 0) {
    const ProductWeights pw = make_weights(g.times);
    std::vector<double> term = g.values;
    for (std::size_t j = 1; j <= order; ++j) {
      term = pw.apply(term);
      for (double& v : term) v *= -2.0;
      for (std::size_t i = 0; i < term.size(); ++i) gk.values[i] += term[i];
    }
  }
  return 2.0 * double_layer_eval(gk, t, r);
}

LeadingApprox duhamel_leading(const DrivingMotion& alpha, double nu, double t,
                              double r) {
  require(nu > 0.0, "duhamel_leading: viscosity must be positive");
  require(t > 0.0, "duhamel_leading: time must be positive");
  require(r >= 0.0 && r < 1.0,
          "duhamel_leading: radius must be strictly interior");
  LeadingApprox out;
  // Step response of the rim data f1 has amplitude 1/2pi, so the leading
  // term 2 D g reduces to step_layer / pi per unit of alpha.
  out.value = stieltjes_integrate(
      [&](double s) { return step_layer(nu * (t - s), r) / kPi; }, alpha, t);
  out.envelope = std::sqrt(nu * t) * total_variation(alpha, t);
  return out;
}

double whole_plane_value(const std::function<double(double)>& v0, double t,
                         double r) {
  require(static_cast<bool>(v0), "whole_plane_value: missing profile");
  require(t > 0.0, "whole_plane_value: time must be positive");
  require(r >= 0.0, "whole_plane_value: radius must be nonnegative");
  const double width = 18.0 * std::sqrt(t);
  const double lo = std::max(0.0, r - width);
  const double hi = r + width;
  const std::size_t panels = 16;
  double acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * static_cast<double>(p) / panels;
    const double b = lo + (hi - lo) * static_cast<double>(p + 1) / panels;
    const QuadRule rule = gauss_legendre_on(a, b, 16);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double rho = rule.x[i];
      const double gap = (r - rho) * (r - rho) / (4.0 * t);
      if (gap > 700.0) continue;
      acc += rule.w[i] * rho * v0(rho) * std::exp(-gap) *
             scaled_bessel_i1(r * rho / (2.0 * t));
    }
  }
  return acc / (2.0 * t);
}

}  // namespace swirl
