#include "swirl/stochastic.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <thread>
#include <vector>

#include "swirl/basis.hpp"
#include "swirl/duhamel.hpp"

namespace swirl {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-mode damping factors e^{-nu lambda_k (t - s_i)} on the Ito grid,
/// stored from the first index where they exceed e^-42; earlier entries
/// are indistinguishable from zero and fold into the W_t term of
///   S_k = sum_i (1 - E_{k,i}) dw_i = W_t - sum_i E_{k,i} dw_i.
/// The table depends only on (nu, t, basis, sigma, steps), so one table
/// serves every path of a Monte-Carlo run.
struct ItoTable {
  std::size_t steps = 0;
  std::vector<double> weight;  ///< lambda_k^sigma <f1, phi_k>^2
  std::vector<std::size_t> first;
  std::vector<std::vector<double>> damp;

  ItoTable(double nu, double t, const BasisPtr& basis, double sigma,
           std::size_t n_steps)
      : steps(n_steps) {
    const std::vector<double> f = forcing_coefficients(*basis, 0);
    const double dt = t / static_cast<double>(steps);
    weight.resize(basis->size());
    first.resize(basis->size());
    damp.resize(basis->size());
    for (std::size_t k = 0; k < basis->size(); ++k) {
      const double lam = basis->lambda(k);
      weight[k] = (sigma == 0.0 ? 1.0 : std::pow(lam, sigma)) * f[k] * f[k];
      const double window = 42.0 / (nu * lam);
      std::size_t lo = 0;
      if (window < t) {
        const double frac = (t - window) / t;
        lo = static_cast<std::size_t>(
            std::ceil(frac * static_cast<double>(steps)));
      }
      first[k] = lo;
      damp[k].resize(steps - lo);
      for (std::size_t i = lo; i < steps; ++i) {
        const double s = static_cast<double>(i) * dt;
        damp[k][i - lo] = std::exp(-nu * lam * (t - s));
      }
    }
  }

  double squared_norm(const std::vector<double>& dw) const {
    double total = 0.0;
    for (double d : dw) total += d;
    double acc = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      double damped = 0.0;
      const std::vector<double>& e = damp[k];
      const std::size_t lo = first[k];
      for (std::size_t i = 0; i < e.size(); ++i) damped += e[i] * dw[lo + i];
      const double s = total - damped;
      acc += weight[k] * s * s;
    }
    return acc;
  }
};

void path_increments(const DrivingMotion& path, double t, std::size_t steps,
                     std::vector<double>& dw) {
  const double dt = t / static_cast<double>(steps);
  dw.resize(steps);
  double prev = path.value(0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    const double next =
        path.value(i + 1 == steps ? t : static_cast<double>(i + 1) * dt);
    dw[i] = next - prev;
    prev = next;
  }
}

/// int_0^t (1 - e^{-a s})^2 ds. The direct expression loses (a t)^2 digits
/// to cancellation as a t -> 0, so small arguments take the series and the
/// rest is evaluated in long double.
double mode_time_integral(double a, double t) {
  const double x = a * t;
  if (x < 1e-4) {
    return t * x * x *
           (1.0 / 3.0 - x / 4.0 + 7.0 * x * x / 60.0 - x * x * x / 24.0);
  }
  const long double al = a;
  const long double e1 = -std::expm1l(-static_cast<long double>(x));
  const long double e2 = -std::expm1l(-2.0L * static_cast<long double>(x));
  return static_cast<double>(static_cast<long double>(t) - 2.0L * e1 / al +
                             e2 / (2.0L * al));
}

void check_arguments(double nu, double t, double sigma) {
  require(nu > 0.0, "stochastic: viscosity must be positive");
  require(t > 0.0, "stochastic: time must be positive");
  require(sigma >= 0.0 && sigma < 0.5,
          "stochastic: sigma outside [0, 1/2)");
}

}  // namespace

double ito_sample(const DrivingMotion& path, double nu, double t,
                  const BasisPtr& basis, double sigma, std::size_t steps) {
  check_arguments(nu, t, sigma);
  require(basis != nullptr, "ito_sample: null basis");
  require(steps >= 2, "ito_sample: need at least two steps");
  if (path.kind() == DrivingKind::brownian || path.kind() == DrivingKind::lp)
    require(path.horizon() >= t * (1.0 - 1e-12),
            "ito_sample: path horizon too short");
  const ItoTable table(nu, t, basis, sigma, steps);
  std::vector<double> dw;
  path_increments(path, t, steps, dw);
  return table.squared_norm(dw);
}

double variance_rhs(double nu, double t, const BasisPtr& basis, double sigma) {
  check_arguments(nu, t, sigma);
  require(basis != nullptr, "variance_rhs: null basis");
  const std::vector<double> f = forcing_coefficients(*basis, 0);
  double acc = 0.0;
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const double lam = basis->lambda(k);
    const double w = (sigma == 0.0 ? 1.0 : std::pow(lam, sigma)) * f[k] * f[k];
    acc += w * mode_time_integral(nu * lam, t);
  }
  return acc;
}

McReport variance_check(double nu, double t, std::size_t n_paths,
                        std::uint64_t seed, double sigma) {
  check_arguments(nu, t, sigma);
  require(n_paths >= 100, "variance_check: need at least 100 paths");

  static const BasisPtr basis = share(EigenBasis::dirichlet_swirl(256));
  const std::size_t steps = 2048;
  const ItoTable table(nu, t, basis, sigma, steps);
  const double dt = t / static_cast<double>(steps);

  std::uint64_t stream = seed;
  std::vector<std::uint64_t> path_seed(n_paths);
  for (std::uint64_t& s : path_seed) s = splitmix64(stream);

  // Fixed-size blocks with an ordered merge: the totals are a fixed sum
  // regardless of which thread handled which block.
  const std::size_t block = 256;
  const std::size_t n_blocks = (n_paths + block - 1) / block;
  std::vector<long double> block_sum(n_blocks, 0.0L);
  std::vector<long double> block_sumsq(n_blocks, 0.0L);
  std::atomic<std::size_t> next{0};

  const auto worker = [&]() {
    std::vector<double> dw;
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t hi = std::min(n_paths, (b + 1) * block);
      long double sum = 0.0L, sumsq = 0.0L;
      for (std::size_t p = b * block; p < hi; ++p) {
        const DrivingMotion path = sample_brownian(path_seed[p], t, dt);
        path_increments(path, t, steps, dw);
        const double v = table.squared_norm(dw);
        sum += v;
        sumsq += static_cast<long double>(v) * v;
      }
      block_sum[b] = sum;
      block_sumsq[b] = sumsq;
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t n_threads = std::min<std::size_t>(
      std::min<std::size_t>(hw, 16), n_blocks);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  long double sum = 0.0L, sumsq = 0.0L;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }
  const auto n = static_cast<long double>(n_paths);
  const long double mean = sum / n;
  const long double var =
      n_paths > 1 ? (sumsq - n * mean * mean) / (n - 1.0L) : 0.0L;

  McReport report;
  report.nu = nu;
  report.t = t;
  report.n_paths = n_paths;
  report.sample_mean = static_cast<double>(mean);
  report.std_error =
      static_cast<double>(std::sqrt(std::max(var, 0.0L) / n));
  report.quadrature_rhs = variance_rhs(nu, t, basis, sigma);
  return report;
}

void write_mc_csv(const std::string& path, const std::vector<McReport>& rows) {
  std::ofstream out(path);
  require(out.good(), "write_mc_csv: cannot open " + path);
  out << "nu,t,n_paths,sample_mean,std_error,rhs\n";
  out.precision(17);
  for (const McReport& r : rows) {
    out << r.nu << "," << r.t << "," << r.n_paths << "," << r.sample_mean
        << "," << r.std_error << "," << r.quadrature_rhs << "\n";
  }
}

}  // namespace swirl
