// Heat semigroup on spectral fields and the whole-plane embedding flow.

#include "swirl/semigroup.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "swirl/quadrature.hpp"
#include "support/bessel_oracle.hpp"
#include "support/harness.hpp"

namespace {

swirl::SpectralField band_limited(const swirl::BasisPtr& basis,
                                  const std::vector<double>& coeffs) {
  swirl::SpectralField f;
  f.basis = basis;
  f.coeffs = coeffs;
  f.coeffs.resize(basis->size(), 0.0);
  return f;
}

// C-infinity bump in the angular velocity, supported on 0.15 < r < 0.75.
double bump_s(double r) {
  const double u = (r - 0.45) / 0.3;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

// Whole-plane heat flow by direct 2D convolution: the evolved swirl speed at
// radius r is  v(r) = int G_{nu t}((r,0) - y) s(|y|) y_1 dy  with the plane
// heat kernel G_tau(z) = exp(-|z|^2/(4 tau)) / (4 pi tau). Composite GL on a
// box that contains either the whole kernel mass or the whole support of s.
double convolution_oracle(const std::function<double(double)>& s, double r,
                          double nut, double half_width,
                          std::size_t panels) {
  const swirl::QuadRule gl = swirl::gauss_legendre(12);
  const auto nodes_on = [&gl](double a, double b, std::vector<double>& x,
                              std::vector<double>& w) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      x.push_back(mid + half * gl.x[i]);
      w.push_back(half * gl.w[i]);
    }
  };
  std::vector<double> x1, w1, x2, w2;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = -half_width + 2.0 * half_width * p / panels;
    const double b = -half_width + 2.0 * half_width * (p + 1) / panels;
    nodes_on(r + a, r + b, x1, w1);
    nodes_on(a, b, x2, w2);
  }
  const double norm = 1.0 / (4.0 * swirl::kPi * nut);
  double acc = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) {
      const double dx = x1[i] - r, dy = x2[j];
      const double rho = std::hypot(x1[i], x2[j]);
      acc += w1[i] * w2[j] * norm *
             std::exp(-(dx * dx + dy * dy) / (4.0 * nut)) * s(rho) * x1[i];
    }
  }
  return acc;
}

void spectral_evolution() {
  const swirl::BasisPtr basis =
      swirl::share(swirl::EigenBasis::dirichlet_swirl(24));
  std::vector<double> c(24);
  for (std::size_t k = 0; k < 24; ++k) {
    c[k] = std::sin(3.0 * static_cast<double>(k + 1)) /
           static_cast<double>(k + 1);
  }
  const swirl::SpectralField f = band_limited(basis, c);

  const swirl::SpectralField same = swirl::evolve(f, {0.5, 0.0});
  bool identity = true;
  for (std::size_t k = 0; k < 24; ++k) {
    identity = identity && same.coeffs[k] == f.coeffs[k];
  }
  harness::record("nu t = 0 is the identity", identity, "");

  // Single mode e_1 with the decay rate fed by the high-precision zero.
  swirl::SpectralField e1 = band_limited(basis, {1.0});
  e1 = swirl::evolve(e1, {1.0, 0.01});
  const double j11 = oracle::j1_zero(1);
  const double want = std::exp(-0.01 * j11 * j11);
  harness::record("mode-1 decay factor exp(-0.01 j^2)",
                  std::abs(e1.coeffs[0] - want) < 5e-15,
                  harness::qoi(std::abs(e1.coeffs[0] - want), 5e-15));

  // Constant vorticity is a Neumann steady state: 1/pi stays 1/pi.
  const swirl::BasisPtr neu =
      swirl::share(swirl::EigenBasis::neumann_scalar(8));
  swirl::RadialProfile flat = swirl::make_profile(swirl::Geometry::disk(), 257);
  for (double& v : flat.values) v = 1.0 / swirl::kPi;
  swirl::SpectralField omega = swirl::to_spectral(flat, neu);
  double drift = 0.0;
  for (double nut : {1e-4, 0.1, 3.0}) {
    const swirl::SpectralField evolved = swirl::evolve(omega, {1.0, nut});
    drift = std::max(
        drift, std::abs(swirl::synthesize_at(evolved, 0.37) - 1.0 / swirl::kPi));
  }
  harness::record("constant Neumann vorticity is invariant", drift < 1e-12,
                  harness::qoi(drift, 1e-12));

  // Semigroup property and L2 contraction.
  const swirl::SpectralField two_step =
      swirl::evolve(swirl::evolve(f, {1.0, 0.013}), {1.0, 0.0077});
  const swirl::SpectralField one_step = swirl::evolve(f, {1.0, 0.0207});
  double law = 0.0;
  for (std::size_t k = 0; k < 24; ++k) {
    law = std::max(law, std::abs(two_step.coeffs[k] - one_step.coeffs[k]));
  }
  harness::record("semigroup law coefficient-wise", law < 1e-12,
                  harness::qoi(law, 1e-12));

  const double before = swirl::sobolev_norm(f, 0.0);
  const double after = swirl::sobolev_norm(swirl::evolve(f, {1.0, 0.02}), 0.0);
  harness::record("L2 contraction", after <= before,
                  harness::qoi(after - before));
}

void fractional_weights() {
  const swirl::BasisPtr basis =
      swirl::share(swirl::EigenBasis::dirichlet_swirl(64));
  const swirl::SpectralField ones =
      band_limited(basis, std::vector<double>(64, 1.0));

  const swirl::SpectralField plain = swirl::evolve(ones, {1.0, 0.004});
  const swirl::SpectralField gamma0 =
      swirl::fractional_apply(ones, 0.0, {1.0, 0.004});
  double diff = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    diff = std::max(diff, std::abs(plain.coeffs[k] - gamma0.coeffs[k]));
  }
  harness::record("gamma = 0 reduces to evolve", diff == 0.0, "");

  // Calculus bound: sup_x x^g e^{-x} = g^g e^{-g}.
  double worst = 0.0;
  for (double gamma : {0.3, 0.7, 1.0, 1.6, 2.0}) {
    const double cap = std::pow(gamma, gamma) * std::exp(-gamma);
    for (double nut : {1e-5, 1e-3, 0.02, 0.4}) {
      const swirl::SpectralField w =
          swirl::fractional_apply(ones, gamma, {1.0, nut});
      for (double c : w.coeffs) worst = std::max(worst, c - cap);
    }
  }
  harness::record("weights below gamma^gamma e^-gamma", worst <= 1e-12,
                  harness::qoi(worst, 1e-12));

  // gamma = 1: the weight peaks at exactly nu t lambda = 1, value 1/e.
  double peak = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    const double nut_star = 1.0 / basis->lambda(k);
    if (nut_star > 1.0) continue;  // scan stays within nu t in (0,1]
    const swirl::SpectralField w =
        swirl::fractional_apply(ones, 1.0, {1.0, nut_star});
    for (double c : w.coeffs) peak = std::max(peak, c);
  }
  harness::record("gamma = 1 peak weight is 1/e",
                  std::abs(peak - std::exp(-1.0)) < 1e-14 && peak <= 1.0,
                  harness::qoi(std::abs(peak - std::exp(-1.0)), 1e-14));

  bool threw = false;
  try {
    swirl::fractional_apply(ones, 0.5, {1.0, 0.0});
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  harness::record("gamma > 0 with nu t = 0 rejected", threw, "");
}

void max_principle() {
  const swirl::BasisPtr basis =
      swirl::share(swirl::EigenBasis::dirichlet_swirl(16));
  std::mt19937_64 rng(20260814u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> nut_draw(1e-3, 0.05);

  const std::size_t n_eval = 8192;
  double worst = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(16);
    for (std::size_t k = 0; k < 16; ++k) {
      const double kk = static_cast<double>(k + 1);
      c[k] = unit(rng) / (kk * kk * kk);
    }
    const swirl::SpectralField f = band_limited(basis, c);
    const swirl::SpectralField g = swirl::evolve(f, {1.0, nut_draw(rng)});
    double sup_f = 0.0, sup_g = 0.0;
    for (std::size_t i = 0; i <= n_eval; ++i) {
      const double r = static_cast<double>(i) / static_cast<double>(n_eval);
      sup_f = std::max(sup_f, std::abs(swirl::synthesize_at(f, r)));
      sup_g = std::max(sup_g, std::abs(swirl::synthesize_at(g, r)));
    }
    worst = std::max(worst, sup_g - sup_f);
  }
  harness::record("max principle over 20 random profiles", worst <= 1e-8,
                  harness::qoi(worst, 1e-8));
}

void strong_continuity() {
  const swirl::BasisPtr basis =
      swirl::share(swirl::EigenBasis::dirichlet_swirl(64));
  std::vector<double> c(64);
  for (std::size_t k = 0; k < 64; ++k) {
    c[k] = std::exp(-0.25 * static_cast<double>(k + 1));
  }
  const swirl::SpectralField f = band_limited(basis, c);

  for (double sigma : {0.0, 0.25, 0.45}) {
    std::vector<double> gaps;
    for (double nut : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
      swirl::SpectralField diff = swirl::evolve(f, {1.0, nut});
      for (std::size_t k = 0; k < 64; ++k) diff.coeffs[k] -= f.coeffs[k];
      gaps.push_back(swirl::sobolev_norm(diff, sigma));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      monotone = monotone && gaps[i] < gaps[i - 1];
    }
    harness::record(
        "strong continuity, sigma " + std::to_string(sigma).substr(0, 4),
        monotone && gaps.back() < 1e-4, harness::qoi(gaps.back(), 1e-4));
  }
}

void whole_plane() {
  // Identity at nu t = 0.
  swirl::RadialProfile rigid = swirl::make_profile(swirl::Geometry::disk());
  for (std::size_t i = 0; i < rigid.grid.size(); ++i) {
    rigid.values[i] = rigid.grid[i] / (2.0 * swirl::kPi);
  }
  const swirl::RadialProfile still = swirl::whole_plane_evolve(rigid, {0.0, 1.0});
  bool identity = true;
  for (std::size_t i = 0; i < still.grid.size(); ++i) {
    identity = identity && still.values[i] == rigid.values[i];
  }
  harness::record("whole-plane nu t = 0 identity", identity, "");

  // Rigid rotation is harmonic, so plane heat flow leaves it alone; the
  // extension of s = 1/2pi past r = 1 is again s = 1/2pi.
  const swirl::RadialProfile spun = swirl::whole_plane_evolve(rigid, {1.0, 1e-4});
  double rigid_err = 0.0;
  double oracle_err = 0.0;
  for (double r : {0.1, 0.3, 0.5}) {
    const double got = swirl::profile_value(spun, r);
    rigid_err = std::max(rigid_err, std::abs(got - r / (2.0 * swirl::kPi)));
    const double via_kernel = convolution_oracle(
        [](double) { return 1.0 / (2.0 * swirl::kPi); }, r, 1e-4, 0.30, 24);
    oracle_err = std::max(oracle_err, std::abs(got - via_kernel));
  }
  harness::record("rigid swirl invariant under plane flow", rigid_err < 1e-8,
                  harness::qoi(rigid_err, 1e-8));
  harness::record("rigid swirl vs convolution oracle", oracle_err < 1e-8,
                  harness::qoi(oracle_err, 1e-8));

  // Compactly supported bump against the heat-kernel convolution.
  swirl::RadialProfile bump = swirl::make_profile(swirl::Geometry::disk());
  for (std::size_t i = 0; i < bump.grid.size(); ++i) {
    bump.values[i] = bump.grid[i] * bump_s(bump.grid[i]);
  }
  const double nut = 1e-3;
  const swirl::RadialProfile blurred =
      swirl::whole_plane_evolve(bump, {1.0, nut});
  double bump_err = 0.0;
  for (double r : {0.1, 0.3, 0.5}) {
    const double want = convolution_oracle(bump_s, r, nut, 0.78 + r, 40);
    bump_err = std::max(bump_err,
                        std::abs(swirl::profile_value(blurred, r) - want));
  }
  harness::record("bump vs convolution oracle", bump_err < 1e-8,
                  harness::qoi(bump_err, 1e-8));

  // Interior values must not feel the embedding radius.
  const swirl::RadialProfile r4 = swirl::whole_plane_evolve(bump, {1.0, 0.01}, 4.0);
  const swirl::RadialProfile r8 = swirl::whole_plane_evolve(bump, {1.0, 0.01}, 8.0);
  double radius_dep = 0.0;
  for (std::size_t i = 0; i < r4.grid.size(); ++i) {
    radius_dep = std::max(radius_dep, std::abs(r4.values[i] - r8.values[i]));
  }
  harness::record("embedding radius independence", radius_dep < 1e-10,
                  harness::qoi(radius_dep, 1e-10));

  bool threw = false;
  try {
    swirl::whole_plane_evolve(bump, {1.0, 0.2}, 4.0);
  } catch (const swirl::ConvergenceError&) {
    threw = true;
  }
  harness::record("embedding too small signalled", threw, "");

  bool threw_r = false;
  try {
    swirl::whole_plane_evolve(bump, {1.0, 1e-4}, 2.0);
  } catch (const std::invalid_argument&) {
    threw_r = true;
  }
  harness::record("R < 4 rejected", threw_r, "");
}

}  // namespace

int main() {
  return harness::run("semigroup", [] {
    spectral_evolution();
    fractional_weights();
    max_principle();
    strong_continuity();
    whole_plane();
  });
}
