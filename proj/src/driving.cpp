#include "swirl/driving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "swirl/core.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

namespace {

void check_jumps(const std::vector<std::pair<double, double>>& jumps) {
  double prev = -1.0;
  for (const auto& [t, J] : jumps) {
    require(std::isfinite(t) && std::isfinite(J), "jump entries must be finite");
    require(t >= 0.0, "jump times must be nonnegative");
    require(t > prev, "jump times must be strictly increasing");
    prev = t;
  }
}

}  // namespace

DrivingMotion DrivingMotion::step(double size, double at) {
  return jump_list({{at, size}});
}

DrivingMotion DrivingMotion::ramp(double slope) {
  require(std::isfinite(slope), "ramp slope must be finite");
  return smooth([slope](double t) { return slope * t; },
                [slope](double) { return slope; });
}

DrivingMotion DrivingMotion::smooth(std::function<double(double)> value,
                                    std::function<double(double)> density) {
  require(value && density, "smooth path needs value and density samplers");
  DrivingMotion m(DrivingKind::smooth);
  m.value_ = std::move(value);
  m.density_ = std::move(density);
  return m;
}

DrivingMotion DrivingMotion::jump_list(
    std::vector<std::pair<double, double>> jumps) {
  check_jumps(jumps);
  DrivingMotion m(DrivingKind::bv);
  m.jumps_ = std::move(jumps);
  return m;
}

DrivingMotion DrivingMotion::bv(std::vector<std::pair<double, double>> jumps,
                                std::function<double(double)> density) {
  check_jumps(jumps);
  DrivingMotion m(DrivingKind::bv);
  m.jumps_ = std::move(jumps);
  m.density_ = std::move(density);
  return m;
}

DrivingMotion DrivingMotion::lp_samples(std::vector<double> values, double dt,
                                        double p_prime) {
  require(values.size() >= 2, "lp path needs at least two samples");
  require(dt > 0.0 && std::isfinite(dt), "lp sample spacing must be positive");
  require(p_prime >= 1.0, "conjugate exponent must be >= 1");
  for (double v : values)
    require(std::isfinite(v), "lp samples must be finite");
  DrivingMotion m(DrivingKind::lp);
  m.samples_ = std::move(values);
  m.dt_ = dt;
  m.p_prime_ = p_prime;
  return m;
}

double DrivingMotion::value(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case DrivingKind::smooth:
      return value_(t);
    case DrivingKind::bv: {
      double acc = 0.0;
      for (const auto& [ti, J] : jumps_) {
        if (ti > t) break;
        acc += J;
      }
      if (density_)
        acc += integrate_panels(
            [this](double s) { return density_(s); }, 0.0, t,
            std::max<std::size_t>(8, static_cast<std::size_t>(t) + 8));
      return acc;
    }
    case DrivingKind::lp:
    case DrivingKind::brownian: {
      const double u = t / dt_;
      const auto n = samples_.size();
      if (u >= static_cast<double>(n - 1)) return samples_.back();
      const auto i = static_cast<std::size_t>(u);
      const double frac = u - static_cast<double>(i);
      return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
    }
  }
  return 0.0;
}

double DrivingMotion::density(double s) const {
  require(kind_ == DrivingKind::smooth || kind_ == DrivingKind::bv,
          "density is defined for smooth and bv paths only");
  if (s < 0.0 || !density_) return 0.0;
  return density_(s);
}

double DrivingMotion::p_prime() const {
  require(kind_ == DrivingKind::lp, "conjugate exponent applies to lp paths");
  return p_prime_;
}

double DrivingMotion::grid_dt() const {
  require(kind_ == DrivingKind::lp || kind_ == DrivingKind::brownian,
          "sample spacing applies to sampled paths");
  return dt_;
}

double DrivingMotion::horizon() const {
  switch (kind_) {
    case DrivingKind::lp:
    case DrivingKind::brownian:
      return dt_ * static_cast<double>(samples_.size() - 1);
    case DrivingKind::bv:
      return jumps_.empty() ? 0.0 : jumps_.back().first;
    case DrivingKind::smooth:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

DrivingMotion sample_brownian(std::uint64_t seed, double T, double dt) {
  require(T > 0.0 && dt > 0.0 && dt <= T, "need 0 < dt <= T");
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  std::vector<double> w(steps + 1, 0.0);
  std::mt19937_64 rng(seed);
  const double root_dt = std::sqrt(dt);
  // Box-Muller by hand: std::normal_distribution is not bit-identical
  // across standard libraries, and seeds must reproduce paths everywhere.
  const auto uniform = [&rng]() {
    // (0,1]: shift by one ULP class so log() never sees zero.
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  std::size_t i = 1;
  while (i <= steps) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    w[i] = w[i - 1] + root_dt * rad * std::cos(2.0 * kPi * u2);
    ++i;
    if (i > steps) break;
    w[i] = w[i - 1] + root_dt * rad * std::sin(2.0 * kPi * u2);
    ++i;
  }
  DrivingMotion m(DrivingKind::brownian);
  m.samples_ = std::move(w);
  m.dt_ = dt;
  return m;
}

std::vector<double> stieltjes_integrate(
    const std::function<void(double, std::vector<double>&)>& F,
    std::size_t dim, const DrivingMotion& alpha, double t) {
  require(alpha.kind() == DrivingKind::smooth ||
              alpha.kind() == DrivingKind::bv,
          "stieltjes integration needs a smooth or bv path");
  require(t >= 0.0 && std::isfinite(t), "time must be finite and >= 0");
  std::vector<double> acc(dim, 0.0);
  std::vector<double> fs(dim);
  for (const auto& [ti, J] : alpha.jumps()) {
    if (ti > t) break;
    F(ti, fs);
    for (std::size_t k = 0; k < dim; ++k) acc[k] += fs[k] * J;
  }
  if (alpha.has_density() && t > 0.0) {
    const auto g = [&](double s, std::vector<double>& out) {
      F(s, out);
      const double d = alpha.density(s);
      for (double& v : out) v *= d;
    };
    const auto part = integrate_endpoint_singular(g, dim, t);
    for (std::size_t k = 0; k < dim; ++k) acc[k] += part[k];
  }
  return acc;
}

double stieltjes_integrate(const std::function<double(double)>& F,
                           const DrivingMotion& alpha, double t) {
  const auto wrap = [&F](double s, std::vector<double>& out) {
    out[0] = F(s);
  };
  return stieltjes_integrate(wrap, 1, alpha, t)[0];
}

std::vector<double> lp_integrate(
    const std::function<void(double, std::vector<double>&)>& F,
    std::size_t dim, const DrivingMotion& alpha, double t) {
  require(alpha.kind() == DrivingKind::lp ||
              alpha.kind() == DrivingKind::smooth,
          "lp integration needs an lp or smooth path");
  require(t >= 0.0 && std::isfinite(t), "time must be finite and >= 0");
  std::vector<double> acc(dim, 0.0);
  if (t == 0.0) return acc;
  const auto g = [&](double s, std::vector<double>& out) {
    F(s, out);
    const double a = alpha.value(s);
    for (double& v : out) v *= a;
  };
  return integrate_endpoint_singular(g, dim, t);
}

double lp_integrate(const std::function<double(double)>& F,
                    const DrivingMotion& alpha, double t) {
  const auto wrap = [&F](double s, std::vector<double>& out) {
    out[0] = F(s);
  };
  return lp_integrate(wrap, 1, alpha, t)[0];
}

double total_variation(const DrivingMotion& alpha, double t) {
  require(alpha.kind() == DrivingKind::smooth ||
              alpha.kind() == DrivingKind::bv,
          "total variation needs a smooth or bv path");
  require(t >= 0.0 && std::isfinite(t), "time must be finite and >= 0");
  double acc = 0.0;
  for (const auto& [ti, J] : alpha.jumps()) {
    if (ti > t) break;
    acc += std::abs(J);
  }
  if (t > 0.0 && alpha.has_density())
    acc += integrate_panels(
        [&alpha](double s) { return std::abs(alpha.density(s)); }, 0.0, t,
        std::max<std::size_t>(16, static_cast<std::size_t>(t) + 16));
  return acc;
}

}  // namespace swirl
