// Boundary driving paths: Stieltjes and graded L^p integration, total
// variation, Wiener sampling.

#include "swirl/driving.hpp"

#include <cmath>
#include <vector>

#include "swirl/core.hpp"
#include "swirl/quadrature.hpp"
#include "support/harness.hpp"

namespace {

// Independent check for integrals with a (t-s)^(delta-1) endpoint, written
// in the distance variable sigma = t - s (the graded cells shrink below
// double resolution in s itself): composite 12-point GL on the mesh
// sigma_i = t (i/N)^q, q = 3/(2 delta). The cell touching sigma = 0 is the
// accuracy bottleneck (the rule sees the bare singularity there), which
// caps this oracle near 1e-5 absolute at N = 2048.
double graded_mesh_oracle(const std::function<double(double)>& g_of_sigma,
                          double t, double delta, std::size_t n_cells) {
  const double q = 1.5 / delta;
  const swirl::QuadRule& gl = swirl::gauss_legendre(12);
  double acc = 0.0;
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double lo = static_cast<double>(i) / static_cast<double>(n_cells);
    const double hi =
        static_cast<double>(i + 1) / static_cast<double>(n_cells);
    const double a = t * std::pow(lo, q);
    const double b = t * std::pow(hi, q);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
      acc += half * gl.w[k] * g_of_sigma(mid + half * gl.x[k]);
    }
  }
  return acc;
}

void stieltjes_cases() {
  const auto F = [](double s) { return std::cos(s) + 2.0; };

  const swirl::DrivingMotion step = swirl::DrivingMotion::step();
  const double hit = swirl::stieltjes_integrate(F, step, 1.0);
  harness::record("unit step picks out F(0)", std::abs(hit - F(0.0)) < 1e-15,
                  harness::qoi(std::abs(hit - F(0.0)), 1e-15));

  // Density 1 on [0,1]: integral of a constant c is c min(t,1).
  const swirl::DrivingMotion clipped = swirl::DrivingMotion::smooth(
      [](double t) { return std::min(t, 1.0); },
      [](double s) { return s <= 1.0 ? 1.0 : 0.0; });
  const double c = 2.5;
  const auto Fc = [c](double) { return c; };
  const double half_window =
      swirl::stieltjes_integrate(Fc, clipped, 0.5) - c * 0.5;
  const double past_end =
      swirl::stieltjes_integrate(Fc, clipped, 2.0) - c * 1.0;
  harness::record("clipped ramp, window inside support",
                  std::abs(half_window) < 1e-10,
                  harness::qoi(std::abs(half_window), 1e-10));
  harness::record("clipped ramp, window past support",
                  std::abs(past_end) < 1e-10,
                  harness::qoi(std::abs(past_end), 1e-10));

  const swirl::DrivingMotion two_jumps =
      swirl::DrivingMotion::jump_list({{0.25, 2.0}, {0.5, -1.0}});
  const auto Fs = [](double s) { return s; };
  const double cancel = swirl::stieltjes_integrate(Fs, two_jumps, 1.0);
  harness::record("jump pair cancels for F(s) = s", std::abs(cancel) < 1e-15,
                  harness::qoi(std::abs(cancel), 1e-15));

  // The window is closed on the right: a jump at exactly s = t counts.
  const double at_edge = swirl::stieltjes_integrate(Fs, two_jumps, 0.5);
  const double before_edge = swirl::stieltjes_integrate(Fs, two_jumps, 0.4);
  harness::record("jump at s = t included",
                  std::abs(at_edge) < 1e-15 &&
                      std::abs(before_edge - 0.5) < 1e-15,
                  "");

  // Mixed bv path and a vector integrand, against the closed form.
  const swirl::DrivingMotion mixed = swirl::DrivingMotion::bv(
      {{0.5, 1.5}}, [](double s) { return 2.0 * s; });
  const auto Fvec = [](double s, std::vector<double>& out) {
    out[0] = 1.0;
    out[1] = s;
  };
  const std::vector<double> got = swirl::stieltjes_integrate(Fvec, 2, mixed, 1.0);
  // jumps: 1.5 {1, 0.5}; density: int 2s ds = 1, int 2s^2 ds = 2/3.
  const double e0 = std::abs(got[0] - 2.5);
  const double e1 = std::abs(got[1] - (0.75 + 2.0 / 3.0));
  harness::record("bv path with vector integrand",
                  e0 < 1e-10 && e1 < 1e-10, harness::qoi(std::max(e0, e1), 1e-10));
}

void lp_cases() {
  const swirl::DrivingMotion one = swirl::DrivingMotion::smooth(
      [](double) { return 1.0; }, [](double) { return 0.0; });

  const double plain =
      swirl::lp_integrate([](double) { return 1.0; }, one, 0.7);
  harness::record("flat integrand, flat path", std::abs(plain - 0.7) < 1e-14,
                  harness::qoi(std::abs(plain - 0.7), 1e-14));

  const double root = swirl::lp_integrate(
      [](double s) { return 1.0 / std::sqrt(1.0 - s); }, one, 1.0);
  harness::record("inverse square root endpoint", std::abs(root - 2.0) < 1e-8,
                  harness::qoi(std::abs(root - 2.0), 1e-8));

  // Beta(2, 1/4): int (1-s)^(-3/4) s ds = 16/5, driven by a ramp.
  const swirl::DrivingMotion ramp = swirl::DrivingMotion::ramp(1.0);
  const auto sharp = [](double s) { return std::pow(1.0 - s, -0.75); };
  const double beta = swirl::lp_integrate(sharp, ramp, 1.0);
  const double beta_err = std::abs(beta - 16.0 / 5.0) / (16.0 / 5.0);
  harness::record("Beta(2,1/4) vs closed form", beta_err < 1e-8,
                  harness::qoi(beta_err, 1e-8));

  const double oracle = graded_mesh_oracle(
      [](double sigma) { return std::pow(sigma, -0.75) * (1.0 - sigma); },
      1.0, 0.25, 2048);
  harness::record("Beta(2,1/4) vs graded mesh at 8x resolution",
                  std::abs(beta - oracle) < 3e-5,
                  harness::qoi(std::abs(beta - oracle), 3e-5));

  // Same integral with the ramp represented by grid samples.
  std::vector<double> samples(1025);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<double>(i) / 1024.0;
  }
  const swirl::DrivingMotion gridded =
      swirl::DrivingMotion::lp_samples(samples, 1.0 / 1024.0, 4.0 / 3.0);
  const double beta_grid = swirl::lp_integrate(sharp, gridded, 1.0);
  const double grid_err = std::abs(beta_grid - 16.0 / 5.0) / (16.0 / 5.0);
  harness::record("Beta(2,1/4) with sampled path", grid_err < 1e-8,
                  harness::qoi(grid_err, 1e-8));

  bool threw = false;
  try {
    swirl::lp_integrate([](double s) { return 1.0 / (1.0 - s); }, one, 1.0);
  } catch (const swirl::ConvergenceError&) {
    threw = true;
  }
  harness::record("nonintegrable endpoint signalled", threw, "");
}

void variant_rejections() {
  const swirl::DrivingMotion lp =
      swirl::DrivingMotion::lp_samples({0.0, 1.0, 0.5}, 0.5, 2.0);
  const swirl::DrivingMotion brownian = swirl::sample_brownian(5, 1.0, 0.25);
  const swirl::DrivingMotion jumps =
      swirl::DrivingMotion::jump_list({{0.0, 1.0}});
  const auto F = [](double) { return 1.0; };

  int rejected = 0;
  for (const swirl::DrivingMotion* m : {&lp, &brownian}) {
    try {
      swirl::stieltjes_integrate(F, *m, 1.0);
    } catch (const std::invalid_argument&) {
      ++rejected;
    }
    try {
      swirl::total_variation(*m, 1.0);
    } catch (const std::invalid_argument&) {
      ++rejected;
    }
  }
  try {
    swirl::lp_integrate(F, jumps, 1.0);
  } catch (const std::invalid_argument&) {
    ++rejected;
  }
  try {
    swirl::lp_integrate(F, brownian, 1.0);
  } catch (const std::invalid_argument&) {
    ++rejected;
  }
  harness::record("integrators reject wrong variants", rejected == 6,
                  harness::qoi(rejected, 6));
}

void variation_cases() {
  const double tv_step =
      swirl::total_variation(swirl::DrivingMotion::step(), 1.0);
  harness::record("TV of unit step", std::abs(tv_step - 1.0) < 1e-15, "");

  const double tv_ramp =
      swirl::total_variation(swirl::DrivingMotion::ramp(2.0), 1.0);
  harness::record("TV of slope-2 ramp", std::abs(tv_ramp - 2.0) < 1e-12,
                  harness::qoi(std::abs(tv_ramp - 2.0), 1e-12));

  const swirl::DrivingMotion zigzag =
      swirl::DrivingMotion::jump_list({{0.1, 1.0}, {0.2, -1.0}});
  const double tv_zig = swirl::total_variation(zigzag, 1.0);
  harness::record("TV adds jump magnitudes", std::abs(tv_zig - 2.0) < 1e-15,
                  "");
  const double tv_window = swirl::total_variation(zigzag, 0.15);
  harness::record("TV respects the window", std::abs(tv_window - 1.0) < 1e-15,
                  "");
}

void linearity() {
  const auto F = [](double s) { return std::exp(-s); };
  const auto G = [](double s) { return s * s; };
  const swirl::DrivingMotion mixed = swirl::DrivingMotion::bv(
      {{0.2, 1.0}, {0.6, -0.5}}, [](double s) { return std::cos(s); });

  const double combo = swirl::stieltjes_integrate(
      [&](double s) { return 3.0 * F(s) - 2.0 * G(s); }, mixed, 1.0);
  const double parts = 3.0 * swirl::stieltjes_integrate(F, mixed, 1.0) -
                       2.0 * swirl::stieltjes_integrate(G, mixed, 1.0);
  harness::record("stieltjes linear in F", std::abs(combo - parts) < 1e-12,
                  harness::qoi(std::abs(combo - parts), 1e-12));

  const swirl::DrivingMotion doubled = swirl::DrivingMotion::bv(
      {{0.2, 2.0}, {0.6, -1.0}}, [](double s) { return 2.0 * std::cos(s); });
  const double twice = swirl::stieltjes_integrate(F, doubled, 1.0);
  const double once = swirl::stieltjes_integrate(F, mixed, 1.0);
  harness::record("stieltjes linear in alpha",
                  std::abs(twice - 2.0 * once) < 1e-12,
                  harness::qoi(std::abs(twice - 2.0 * once), 1e-12));

  const swirl::DrivingMotion ramp = swirl::DrivingMotion::ramp(1.0);
  const swirl::DrivingMotion ramp3 = swirl::DrivingMotion::ramp(3.0);
  const auto sharp = [](double s) { return std::pow(1.0 - s, -0.5); };
  const double lp_once = swirl::lp_integrate(sharp, ramp, 1.0);
  const double lp_thrice = swirl::lp_integrate(sharp, ramp3, 1.0);
  harness::record("lp linear in alpha",
                  std::abs(lp_thrice - 3.0 * lp_once) < 1e-10,
                  harness::qoi(std::abs(lp_thrice - 3.0 * lp_once), 1e-10));
}

void wiener_sampling() {
  const swirl::DrivingMotion a = swirl::sample_brownian(42, 1.0, 0.01);
  const swirl::DrivingMotion b = swirl::sample_brownian(42, 1.0, 0.01);
  double replay = 0.0;
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    replay = std::max(replay, std::abs(a.value(t) - b.value(t)));
  }
  harness::record("same seed replays the path", replay == 0.0, "");
  harness::record("path starts at zero", a.value(0.0) == 0.0, "");

  // Off-grid times interpolate linearly between the sampled points.
  const swirl::DrivingMotion coarse = swirl::sample_brownian(7, 1.0, 0.25);
  const double mid = coarse.value(0.375);
  const double want = 0.5 * (coarse.value(0.25) + coarse.value(0.5));
  harness::record("piecewise linear between samples",
                  std::abs(mid - want) < 1e-15, "");

  const int n_paths = 10000;
  std::vector<double> end(n_paths), inc_a(n_paths), inc_b(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    const swirl::DrivingMotion w =
        swirl::sample_brownian(900000u + static_cast<std::uint64_t>(i), 1.0,
                               0.01);
    end[i] = w.value(1.0);
    inc_a[i] = w.value(0.3) - w.value(0.0);
    inc_b[i] = w.value(0.7) - w.value(0.4);
  }
  double mean = 0.0;
  for (double v : end) mean += v;
  mean /= n_paths;
  double var = 0.0;
  for (double v : end) var += (v - mean) * (v - mean);
  var /= (n_paths - 1);
  // Sample variance of N(0, T) has standard error T sqrt(2/(n-1)).
  const double tol = 5.0 * std::sqrt(2.0 / (n_paths - 1));
  harness::record("variance of W(T) matches T", std::abs(var - 1.0) < tol,
                  harness::qoi(std::abs(var - 1.0), tol));

  double ma = 0.0, mb = 0.0;
  for (int i = 0; i < n_paths; ++i) {
    ma += inc_a[i];
    mb += inc_b[i];
  }
  ma /= n_paths;
  mb /= n_paths;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (int i = 0; i < n_paths; ++i) {
    cov += (inc_a[i] - ma) * (inc_b[i] - mb);
    va += (inc_a[i] - ma) * (inc_a[i] - ma);
    vb += (inc_b[i] - mb) * (inc_b[i] - mb);
  }
  const double corr = cov / std::sqrt(va * vb);
  harness::record("disjoint increments uncorrelated", std::abs(corr) < 0.04,
                  harness::qoi(std::abs(corr), 0.04));
}

void path_values() {
  const swirl::DrivingMotion ramp = swirl::DrivingMotion::ramp(2.0);
  harness::record("paths vanish before time zero", ramp.value(-0.5) == 0.0,
                  "");

  const swirl::DrivingMotion lp =
      swirl::DrivingMotion::lp_samples({0.0, 1.0, 0.5}, 0.5, 2.0);
  const bool held = lp.value(5.0) == 0.5;
  const bool interp = std::abs(lp.value(0.25) - 0.5) < 1e-15;
  harness::record("sampled path interpolates and holds", held && interp, "");

  const swirl::DrivingMotion steps =
      swirl::DrivingMotion::jump_list({{0.0, 1.0}, {0.5, 2.0}});
  harness::record("jump path accumulates sizes",
                  steps.value(0.25) == 1.0 && steps.value(0.75) == 3.0, "");

  bool threw = false;
  try {
    swirl::DrivingMotion::jump_list({{0.5, 1.0}, {0.25, 1.0}});
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  harness::record("unsorted jump times rejected", threw, "");
}

}  // namespace

int main() {
  return harness::run("driving", [] {
    stieltjes_cases();
    lp_cases();
    variant_rejections();
    variation_cases();
    linearity();
    wiener_sampling();
    path_values();
  });
}
