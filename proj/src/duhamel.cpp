#include "swirl/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "swirl/bessel.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

void check_time(double nu, double t) {
  require(std::isfinite(nu) && nu >= 0.0,
          "duhamel: viscosity must be finite and nonnegative");
  require(std::isfinite(t) && t >= 0.0,
          "duhamel: time must be finite and nonnegative");
}

void check_geometry(const Geometry& a, const Geometry& b) {
  const bool same =
      a.domain == b.domain && (a.is_disk() || std::abs(a.rho - b.rho) < 1e-12);
  require(same, "duhamel: boundary data does not match the basis geometry");
}

/// rate * int_0^t exp(-rate (t-s)) alpha(s) ds. The kernel dies within a
/// few 1/rate of s = t, so integration runs in tau = t - s over panels
/// scaled to e-folds, cut off once exp(-rate tau) is below roundoff.
double exp_kernel_integral(const DrivingMotion& alpha, double rate,
                           double t) {
  if (rate == 0.0 || t == 0.0) return 0.0;
  const double tau_max = std::min(t, 42.0 / rate);
  const auto n_panels = static_cast<std::size_t>(std::clamp(
      std::ceil(2.0 * rate * tau_max), 16.0, 96.0));
  const QuadRule& gl = gauss_legendre(12);
  double acc = 0.0;
  for (std::size_t p = 0; p < n_panels; ++p) {
    const double a = tau_max * static_cast<double>(p) /
                     static_cast<double>(n_panels);
    const double b = tau_max * static_cast<double>(p + 1) /
                     static_cast<double>(n_panels);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double tau = mid + half * gl.x[i];
      acc += half * gl.w[i] * std::exp(-rate * tau) * alpha.value(t - tau);
    }
  }
  return rate * acc;
}

/// Boundary weight at time t with a jump at exactly s = t dropped.
double effective_weight(const DrivingMotion& alpha, double t) {
  double a = alpha.value(t);
  for (const auto& [ti, J] : alpha.jumps()) {
    if (ti == t) a -= J;
  }
  return a;
}

DuhamelForm pick_form(const DrivingMotion& alpha, DuhamelForm form) {
  if (form != DuhamelForm::automatic) return form;
  switch (alpha.kind()) {
    case DrivingKind::smooth:
    case DrivingKind::bv:
      return DuhamelForm::stieltjes;
    case DrivingKind::lp:
    case DrivingKind::brownian:
      return DuhamelForm::by_parts;
  }
  return DuhamelForm::stieltjes;
}

/// D_k = int_[0,t] (1 - e^{-nu lambda_k (t-s)}) d alpha(s), all modes at
/// once for the Stieltjes form, mode by mode when integrating by parts.
std::vector<double> duhamel_weights(const DrivingMotion& alpha,
                                    const EigenBasis& basis, double nu,
                                    double t, DuhamelForm form) {
  const std::size_t K = basis.size();
  if (t == 0.0 || nu == 0.0) {
    // The kernel weight 1 - e^0 vanishes; only atoms strictly before t
    // would contribute, and they carry the same vanishing weight at nu = 0.
    return std::vector<double>(K, 0.0);
  }
  if (form == DuhamelForm::stieltjes) {
    require(alpha.kind() == DrivingKind::smooth ||
                alpha.kind() == DrivingKind::bv,
            "duhamel: stieltjes form needs a smooth or bv path");
    const auto F = [&basis, nu, t, K](double s, std::vector<double>& out) {
      for (std::size_t k = 0; k < K; ++k) {
        out[k] = 1.0 - std::exp(-nu * basis.lambda(k) * (t - s));
      }
    };
    return stieltjes_integrate(F, K, alpha, t);
  }
  require(alpha.kind() != DrivingKind::bv,
          "duhamel: by-parts form needs path values, not atoms");
  std::vector<double> d(K);
  for (std::size_t k = 0; k < K; ++k) {
    d[k] = exp_kernel_integral(alpha, nu * basis.lambda(k), t);
  }
  return d;
}

}  // namespace

SwirlBoundaryData SwirlBoundaryData::disk(DrivingMotion alpha) {
  SwirlBoundaryData bc;
  bc.geometry = Geometry::disk();
  bc.motions.push_back(std::move(alpha));
  return bc;
}

SwirlBoundaryData SwirlBoundaryData::annulus(double rho, DrivingMotion outer,
                                             DrivingMotion inner) {
  SwirlBoundaryData bc;
  bc.geometry = Geometry::annulus(rho);
  bc.motions.push_back(std::move(outer));
  bc.motions.push_back(std::move(inner));
  return bc;
}

HarmonicPair harmonic_interpolant(double alpha1, double alpha2, double rho) {
  require(rho > 0.0 && rho < 1.0, "harmonic interpolant: rho in (0,1)");
  require(std::isfinite(alpha1) && std::isfinite(alpha2),
          "harmonic interpolant: boundary weights must be finite");
  HarmonicPair pair;
  pair.rho = rho;
  pair.beta2 = rho * rho * (alpha2 - alpha1) / (1.0 - rho * rho);
  pair.beta1 = alpha1 - pair.beta2;
  return pair;
}

RadialProfile f1_profile(const Geometry& geom, std::size_t n) {
  RadialProfile p = make_profile(geom, n);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    p.values[i] = p.grid[i] / (2.0 * kPi);
  }
  return p;
}

double harmonic_speed(const Geometry& geom, const std::vector<double>& alpha,
                      double r) {
  if (geom.is_disk()) {
    require(alpha.size() == 1, "harmonic speed: disk takes one weight");
    return alpha[0] * r / (2.0 * kPi);
  }
  require(alpha.size() == 2, "harmonic speed: annulus takes two weights");
  const HarmonicPair pair =
      harmonic_interpolant(alpha[0], alpha[1], geom.rho);
  return (pair.beta1 * r + pair.beta2 / r) / (2.0 * kPi);
}

double harmonic_l2sq(const Geometry& geom, const std::vector<double>& alpha) {
  if (geom.is_disk()) {
    require(alpha.size() == 1, "harmonic mass: disk takes one weight");
    return alpha[0] * alpha[0] / (8.0 * kPi);
  }
  require(alpha.size() == 2, "harmonic mass: annulus takes two weights");
  const double rho = geom.rho;
  const HarmonicPair pair = harmonic_interpolant(alpha[0], alpha[1], rho);
  const double b1 = pair.beta1, b2 = pair.beta2;
  // int_rho^1 (b1 r + b2/r)^2 r dr / 2 pi, term by term.
  const double quartic = b1 * b1 * (1.0 - std::pow(rho, 4)) / 4.0;
  const double cross = b1 * b2 * (1.0 - rho * rho);
  const double log_term = b2 * b2 * std::log(1.0 / rho);
  return (quartic + cross + log_term) / (2.0 * kPi);
}

std::vector<double> forcing_coefficients(const EigenBasis& basis,
                                         std::size_t which) {
  const std::size_t K = basis.size();
  std::vector<double> b(K);
  if (basis.kind() == BasisKind::dirichlet_swirl) {
    require(which == 0, "forcing: the disk has a single forcing field");
    for (std::size_t k = 0; k < K; ++k) {
      // <f1, phi_k> = c_k int r^2 J1(s r) dr = c_k J2(s)/s.
      const double s = basis.sqrt_lambda(k);
      b[k] = basis.norm_const(k) * cyl_j(2, s) / s;
    }
    return b;
  }
  require(basis.kind() == BasisKind::annulus_dirichlet_swirl,
          "forcing: swirl bases only");
  require(which <= 1, "forcing: the annulus has two forcing fields");
  const double rho = basis.geometry().rho;
  const double denom = 1.0 - rho * rho;
  for (std::size_t k = 0; k < K; ++k) {
    const double s = basis.sqrt_lambda(k);
    const double c = basis.norm_const(k);
    // Antiderivatives of the cross-product modes: int r^2 p1(s r) dr =
    // r^2 p2(s r)/s and int p1(s r) dr = -p0(s r)/s.
    const double f1_k =
        c * (basis.cross(2, k, s) - rho * rho * basis.cross(2, k, s * rho)) /
        s;
    const double f2_k =
        c * (basis.cross(0, k, s * rho) - basis.cross(0, k, s)) / s;
    b[k] = (which == 0) ? (f1_k - rho * rho * f2_k) / denom
                        : -rho * rho * (f1_k - f2_k) / denom;
  }
  return b;
}

DrivenSolution solve(const SpectralField& u0, const SwirlBoundaryData& bc,
                     double nu, double t, DuhamelForm form) {
  check_time(nu, t);
  require(u0.basis != nullptr, "duhamel: null basis");
  const EigenBasis& basis = *u0.basis;
  require(basis.kind() == BasisKind::dirichlet_swirl ||
              basis.kind() == BasisKind::annulus_dirichlet_swirl,
          "duhamel: swirl bases only");
  check_geometry(bc.geometry, basis.geometry());
  const std::size_t n_bdry = bc.geometry.is_disk() ? 1 : 2;
  require(bc.motions.size() == n_bdry,
          "duhamel: boundary motion count does not match the geometry");
  const std::size_t K = basis.size();
  require(u0.coeffs.size() <= K, "duhamel: initial data exceeds the basis");

  DrivenSolution sol;
  sol.basis = u0.basis;
  sol.homogeneous.assign(K, 0.0);
  const double nut = nu * t;
  for (std::size_t k = 0; k < u0.coeffs.size(); ++k) {
    sol.homogeneous[k] = u0.coeffs[k] * std::exp(-nut * basis.lambda(k));
  }
  for (std::size_t j = 0; j < n_bdry; ++j) {
    const DrivingMotion& alpha = bc.motions[j];
    const double a = effective_weight(alpha, t);
    sol.boundary.push_back(a);
    const DuhamelForm used = pick_form(alpha, form);
    const std::vector<double> d = duhamel_weights(alpha, basis, nu, t, used);
    const std::vector<double> b = forcing_coefficients(basis, j);
    for (std::size_t k = 0; k < K; ++k) {
      sol.homogeneous[k] += b[k] * (d[k] - a);
    }
  }
  return sol;
}

DrivenSolution solve(const RadialProfile& u0, const SwirlBoundaryData& bc,
                     double nu, double t, const BasisPtr& basis,
                     DuhamelForm form) {
  return solve(to_spectral(u0, basis), bc, nu, t, form);
}

double solution_value(const DrivenSolution& sol, double r) {
  SpectralField w;
  w.basis = sol.basis;
  w.coeffs = sol.homogeneous;
  return harmonic_speed(sol.basis->geometry(), sol.boundary, r) +
         synthesize_at(w, r);
}

RadialProfile realize(const DrivenSolution& sol, std::size_t n) {
  SpectralField w;
  w.basis = sol.basis;
  w.coeffs = sol.homogeneous;
  RadialProfile p = synthesize(w, make_grid(sol.basis->geometry(), n));
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    p.values[i] +=
        harmonic_speed(sol.basis->geometry(), sol.boundary, p.grid[i]);
  }
  return p;
}

SpectralField project(const DrivenSolution& sol) {
  SpectralField out;
  out.basis = sol.basis;
  out.coeffs = sol.homogeneous;
  for (std::size_t j = 0; j < sol.boundary.size(); ++j) {
    const std::vector<double> b = forcing_coefficients(*sol.basis, j);
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
      out.coeffs[k] += sol.boundary[j] * b[k];
    }
  }
  return out;
}

double harmonic_tail_l2sq(const DrivenSolution& sol) {
  const Geometry& geom = sol.basis->geometry();
  double captured = 0.0;
  std::vector<double> h(sol.basis->size(), 0.0);
  for (std::size_t j = 0; j < sol.boundary.size(); ++j) {
    const std::vector<double> b = forcing_coefficients(*sol.basis, j);
    for (std::size_t k = 0; k < h.size(); ++k) {
      h[k] += sol.boundary[j] * b[k];
    }
  }
  for (double v : h) captured += v * v;
  return std::max(0.0, harmonic_l2sq(geom, sol.boundary) - captured);
}

namespace {

double norm_of_diff(const DrivenSolution& sol, const SpectralField* ref,
                    const NormSpec& norm) {
  if (norm.family == "sobolev") {
    SpectralField d = project(sol);
    if (ref != nullptr) {
      for (std::size_t k = 0; k < ref->coeffs.size(); ++k) {
        d.coeffs[k] -= ref->coeffs[k];
      }
    }
    if (norm.sigma == 0.0) {
      double sq = harmonic_tail_l2sq(sol);
      for (double c : d.coeffs) sq += c * c;
      return std::sqrt(sq);
    }
    return sobolev_norm(d, norm.sigma);
  }
  // Two grid points per mode so the top of the band stays resolved.
  const std::size_t n_grid =
      std::max<std::size_t>(1024, 2 * sol.basis->size() + 1);
  RadialProfile p = realize(sol, n_grid);
  if (ref != nullptr) {
    const RadialProfile rp = synthesize(*ref, p.grid);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      p.values[i] -= rp.values[i];
    }
  }
  if (norm.family == "lebesgue") return lebesgue_norm(p, norm.q);
  require(norm.family == "gagliardo",
          "sweep: norm family must be sobolev, lebesgue or gagliardo");
  return gagliardo_seminorm(p, norm.sigma, norm.q);
}

}  // namespace

std::vector<SweepRow> sweep(const SpectralField& u0,
                            const SwirlBoundaryData& bc,
                            const std::vector<double>& nus,
                            const std::vector<double>& ts,
                            const std::vector<NormSpec>& norms) {
  require(!nus.empty() && !ts.empty() && !norms.empty(),
          "sweep: empty parameter lists");
  SpectralField zero;
  zero.basis = u0.basis;
  zero.coeffs.assign(u0.basis ? u0.basis->size() : 0, 0.0);
  std::vector<SweepRow> rows;
  rows.reserve(nus.size() * ts.size() * norms.size());
  for (double nu : nus) {
    for (double t : ts) {
      const DrivenSolution full = solve(u0, bc, nu, t);
      const DrivenSolution forced = solve(zero, bc, nu, t);
      for (const NormSpec& norm : norms) {
        SweepRow row;
        row.nu = nu;
        row.t = t;
        row.norm = norm;
        row.value_err = norm_of_diff(full, &u0, norm);
        row.value_forced = norm_of_diff(forced, nullptr, norm);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  require(out.good(), "sweep csv: cannot open " + path);
  out.precision(17);
  out << "nu,t,norm_family,sigma,q,value_err,value_forced\n";
  for (const SweepRow& r : rows) {
    out << r.nu << ',' << r.t << ',' << r.norm.family << ',' << r.norm.sigma
        << ',' << r.norm.q << ',' << r.value_err << ',' << r.value_forced
        << '\n';
  }
  require(out.good(), "sweep csv: write failed for " + path);
}

}  // namespace swirl
