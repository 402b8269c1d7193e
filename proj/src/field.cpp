#include "swirl/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

bool is_canonical_grid(const RadialProfile& p) {
  const std::vector<double> ref =
      chebyshev_lobatto(p.geometry.inner(), p.geometry.outer(), p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (std::abs(p.grid[i] - ref[i]) > 1e-12) return false;
  }
  return true;
}

double cubic_interp(const RadialProfile& p, double r) {
  const std::vector<double>& x = p.grid;
  const std::vector<double>& f = p.values;
  const std::size_t n = x.size();
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  std::size_t lo = (hi >= 2) ? hi - 2 : 0;
  if (lo + 4 > n) lo = n - 4;
  double out = 0.0;
  for (std::size_t i = lo; i < lo + 4; ++i) {
    double li = 1.0;
    for (std::size_t j = lo; j < lo + 4; ++j) {
      if (j != i) li *= (r - x[j]) / (x[i] - x[j]);
    }
    out += li * f[i];
  }
  return out;
}

// Shared quadrature rule for projections: 64 Gauss-Legendre nodes per
// oscillation wavelength of the top mode, floor of 512 nodes.
struct ProjectionRule {
  std::vector<double> r;
  std::vector<double> w;  // includes the 2 pi r measure
};

ProjectionRule projection_rule(const EigenBasis& basis) {
  const double a = basis.geometry().inner();
  const double b = basis.geometry().outer();
  const double s_max = basis.sqrt_lambda(basis.size() - 1);
  const std::size_t nodes = static_cast<std::size_t>(std::max(
      512.0, std::ceil(64.0 * std::max(1.0, s_max * (b - a) / (2.0 * kPi)))));
  const std::size_t panels = (nodes + 15) / 16;
  const QuadRule& base = gauss_legendre(16);
  ProjectionRule rule;
  rule.r.reserve(panels * 16);
  rule.w.reserve(panels * 16);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < 16; ++i) {
      const double ri = mid + 0.5 * h * base.x[i];
      rule.r.push_back(ri);
      rule.w.push_back(0.5 * h * base.w[i] * 2.0 * kPi * ri);
    }
  }
  return rule;
}

}  // namespace

BasisPtr share(EigenBasis basis) {
  return std::make_shared<const EigenBasis>(std::move(basis));
}

std::vector<double> make_grid(const Geometry& geom, std::size_t n) {
  return chebyshev_lobatto(geom.inner(), geom.outer(), n);
}

RadialProfile make_profile(const Geometry& geom, std::size_t n) {
  RadialProfile p;
  p.geometry = geom;
  p.grid = make_grid(geom, n);
  p.values.assign(n, 0.0);
  return p;
}

void validate(const RadialProfile& p) {
  require(p.grid.size() >= 4, "profile: need at least four grid nodes");
  require(p.grid.size() == p.values.size(),
          "profile: grid/value size mismatch");
  for (std::size_t i = 1; i < p.grid.size(); ++i) {
    require(p.grid[i] > p.grid[i - 1], "profile: grid not strictly ascending");
  }
  require(std::abs(p.grid.front() - p.geometry.inner()) < 1e-9 &&
              std::abs(p.grid.back() - p.geometry.outer()) < 1e-9,
          "profile: grid does not span the radial interval");
}

double profile_value(const RadialProfile& p, double r) {
  require(r >= p.grid.front() - 1e-12 && r <= p.grid.back() + 1e-12,
          "profile_value: radius outside the grid");
  if (is_canonical_grid(p)) {
    return lobatto_interpolate(p.values, p.grid.front(), p.grid.back(), r);
  }
  return cubic_interp(p, r);
}

SpectralField to_spectral(const RadialProfile& profile, const BasisPtr& basis) {
  validate(profile);
  require(basis != nullptr, "to_spectral: null basis");
  require(profile.geometry.is_disk() == basis->geometry().is_disk() &&
              std::abs(profile.geometry.inner() - basis->geometry().inner()) <
                  1e-12,
          "to_spectral: profile and basis geometries differ");

  const ProjectionRule rule = projection_rule(*basis);
  std::vector<double> pv(rule.r.size());
  const bool canonical = is_canonical_grid(profile);
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    pv[i] = canonical
                ? lobatto_interpolate(profile.values, profile.grid.front(),
                                      profile.grid.back(), rule.r[i])
                : cubic_interp(profile, rule.r[i]);
  }

  SpectralField field;
  field.basis = basis;
  field.coeffs.assign(basis->size(), 0.0);
  for (std::size_t k = 0; k < basis->size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.r.size(); ++i) {
      acc += rule.w[i] * pv[i] * basis->eval(k, rule.r[i]);
    }
    field.coeffs[k] = acc;
  }
  return field;
}

RadialProfile synthesize(const SpectralField& field,
                         const std::vector<double>& grid) {
  require(field.basis != nullptr, "synthesize: null basis");
  require(field.coeffs.size() == field.basis->size(),
          "synthesize: coefficient count mismatch");
  RadialProfile p;
  p.geometry = field.basis->geometry();
  p.grid = grid;
  p.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
      if (field.coeffs[k] != 0.0) {
        acc += field.coeffs[k] * field.basis->eval(k, grid[i]);
      }
    }
    p.values[i] = acc;
  }
  return p;
}

double synthesize_at(const SpectralField& field, double r) {
  require(field.basis != nullptr, "synthesize_at: null basis");
  double acc = 0.0;
  for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
    if (field.coeffs[k] != 0.0) acc += field.coeffs[k] * field.basis->eval(k, r);
  }
  return acc;
}

double sobolev_norm(const SpectralField& field, double sigma) {
  require(field.basis != nullptr, "sobolev_norm: null basis");
  require(sigma >= -2.0 && sigma < 2.5,
          "sobolev_norm: sigma outside [-2, 5/2)");
  require(field.coeffs.size() == field.basis->size(),
          "sobolev_norm: coefficient count mismatch");
  double sum = 0.0;
  double scale = 0.0;
  for (double c : field.coeffs) scale = std::max(scale, std::abs(c));
  for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
    const double lam = field.basis->lambda(k);
    const double c = field.coeffs[k];
    if (lam == 0.0) {
      if (sigma < 0.0) {
        require(std::abs(c) <= 1e-12 * std::max(1.0, scale),
                "sobolev_norm: negative order undefined on the constant mode");
      }
      if (sigma == 0.0) sum += c * c;
      continue;  // zero weight for sigma > 0
    }
    sum += std::pow(lam, sigma) * c * c;
  }
  return std::sqrt(sum);
}

double lebesgue_norm(const RadialProfile& profile, double q) {
  validate(profile);
  require(q >= 1.0, "lebesgue_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : profile.values) m = std::max(m, std::abs(v));
    return m;
  }
  const std::size_t n = profile.grid.size();
  std::vector<double> w;
  if (is_canonical_grid(profile)) {
    w = clenshaw_curtis_weights(profile.grid.front(), profile.grid.back(), n);
  } else {
    w.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = profile.grid[i + 1] - profile.grid[i];
      w[i] += 0.5 * h;
      w[i + 1] += 0.5 * h;
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += w[i] * std::pow(std::abs(profile.values[i]), q) * 2.0 * kPi *
           profile.grid[i];
  }
  return std::pow(acc, 1.0 / q);
}

double gagliardo_seminorm(const RadialProfile& profile, double sigma, double q,
                          std::size_t resample_nodes) {
  validate(profile);
  require(sigma > 0.0 && sigma < 1.0, "gagliardo_seminorm: sigma in (0,1)");
  require(q >= 1.0 && std::isfinite(q), "gagliardo_seminorm: q in [1, inf)");
  require(resample_nodes >= 16, "gagliardo_seminorm: too few nodes");

  const double a = profile.geometry.inner();
  const double b = profile.geometry.outer();
  const std::size_t m = resample_nodes;
  const std::vector<double> r = chebyshev_lobatto(a, b, m);
  const std::vector<double> w = clenshaw_curtis_weights(a, b, m);
  std::vector<double> f(m);
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    f[i] = profile_value(profile, r[i]);
    scale = std::max(scale, std::abs(f[i]));
  }
  // Differences at rounding level are interpolation noise, not structure;
  // dropping them keeps constants at exactly zero seminorm.
  const double df_floor = 1e-14 * scale;

  // Angular reduction: |x-y|^2 = r^2 + r'^2 - 2 r r' cos(theta); the fixed
  // 64-node rule integrates theta over [0, pi] (even symmetry doubles it).
  const QuadRule& ang = gauss_legendre(64);
  const double beta = 2.0 + sigma * q;

  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double df = std::abs(f[i] - f[j]);
      if (df <= df_floor) continue;
      const double base2 = r[i] * r[i] + r[j] * r[j];
      double kernel = 0.0;
      for (std::size_t t = 0; t < 64; ++t) {
        const double theta = 0.5 * kPi * (1.0 + ang.x[t]);
        const double d2 = base2 - 2.0 * r[i] * r[j] * std::cos(theta);
        kernel += 0.5 * kPi * ang.w[t] * std::pow(d2, -0.5 * beta);
      }
      kernel *= 2.0;  // theta in [pi, 2 pi) mirrors [0, pi)
      // factor 2 for (i,j) vs (j,i); 2 pi from the outer angular variable
      acc += 2.0 * 2.0 * kPi * w[i] * w[j] * r[i] * r[j] *
             std::pow(df, q) * kernel;
    }
  }
  return std::pow(acc, 1.0 / q);
}

void write_profile_csv(const std::string& path, const RadialProfile& profile) {
  std::ofstream out(path);
  require(out.good(), "write_profile_csv: cannot open " + path);
  out << "r,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    out << profile.grid[i] << "," << profile.values[i] << "\n";
  }
}

void write_spectral_csv(const std::string& path, const SpectralField& field) {
  require(field.basis != nullptr, "write_spectral_csv: null basis");
  std::ofstream out(path);
  require(out.good(), "write_spectral_csv: cannot open " + path);
  out << "k,sqrt_lambda,coeff\n";
  out.precision(17);
  const bool has_constant = field.basis->kind() == BasisKind::neumann_scalar;
  for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
    const std::size_t label = has_constant ? k : k + 1;
    out << label << "," << field.basis->sqrt_lambda(k) << ","
        << field.coeffs[k] << "\n";
  }
}

}  // namespace swirl
