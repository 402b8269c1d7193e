#include "swirl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "swirl/core.hpp"

namespace swirl {

namespace {

// Newton iteration on P_n with the three-term recurrence. Nodes converge
// quadratically from the Tricomi initial guess; 1e2 iterations is a safety
// cap, in practice 4-5 suffice.
QuadRule build_gauss_legendre(std::size_t n) {
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.w[i] = w;
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

std::map<std::size_t, QuadRule>& rule_cache() {
  static std::map<std::size_t, QuadRule> cache;
  return cache;
}

std::mutex cache_mutex;

}  // namespace

const QuadRule& gauss_legendre(std::size_t n) {
  require(n >= 1, "gauss_legendre: need at least one node");
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& cache = rule_cache();
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

QuadRule gauss_legendre_on(double a, double b, std::size_t n) {
  const QuadRule& base = gauss_legendre(n);
  QuadRule rule = base;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.x[i] = mid + half * base.x[i];
    rule.w[i] = half * base.w[i];
  }
  return rule;
}

std::vector<double> chebyshev_lobatto(double a, double b, std::size_t n) {
  require(n >= 2, "chebyshev_lobatto: need at least two nodes");
  std::vector<double> x(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double nm1 = static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = mid - half * std::cos(kPi * static_cast<double>(j) / nm1);
  }
  x.front() = a;
  x.back() = b;
  return x;
}

std::vector<double> clenshaw_curtis_weights(double a, double b,
                                            std::size_t n) {
  require(n >= 2, "clenshaw_curtis_weights: need at least two nodes");
  const std::size_t m = n - 1;  // polynomial degree of the grid
  std::vector<double> w(n);
  const double half = 0.5 * (b - a);
  for (std::size_t j = 0; j <= m; ++j) {
    const double theta = kPi * static_cast<double>(j) / static_cast<double>(m);
    double s = 1.0;
    for (std::size_t k = 1; k <= m / 2; ++k) {
      const double bk = (2 * k == m) ? 1.0 : 2.0;
      s -= bk * std::cos(2.0 * static_cast<double>(k) * theta) /
           (4.0 * static_cast<double>(k) * static_cast<double>(k) - 1.0);
    }
    const double cj = (j == 0 || j == m) ? 1.0 : 2.0;
    w[j] = half * cj * s / static_cast<double>(m);
  }
  return w;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, std::size_t panels, std::size_t pts) {
  require(panels >= 1, "integrate_panels: need at least one panel");
  const QuadRule& base = gauss_legendre(pts);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < pts; ++i) {
      total += 0.5 * h * base.w[i] * f(mid + 0.5 * h * base.x[i]);
    }
  }
  return total;
}

std::vector<double> chebyshev_coefficients(const std::vector<double>& values) {
  const std::size_t n = values.size();
  require(n >= 2, "chebyshev_coefficients: need at least two values");
  const std::size_t m = n - 1;
  // Values arrive ascending in x; the DCT below indexes g_j = f(cos(j pi/m)).
  std::vector<double> g(n);
  for (std::size_t j = 0; j <= m; ++j) g[j] = values[m - j];
  std::vector<double> c(n);
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k <= m; ++k) {
    double s = 0.5 * (g[0] + (k % 2 == 0 ? g[m] : -g[m]));
    for (std::size_t j = 1; j < m; ++j) {
      s += g[j] * std::cos(kPi * static_cast<double>(k) *
                           static_cast<double>(j) / md);
    }
    const double gamma = (k == 0 || k == m) ? 2.0 : 1.0;
    c[k] = 2.0 * s / (gamma * md);
  }
  return c;
}

std::vector<double> chebyshev_antiderivative(const std::vector<double>& c,
                                             double a, double b) {
  const std::size_t n = c.size();
  require(n >= 1, "chebyshev_antiderivative: empty coefficients");
  const double half = 0.5 * (b - a);
  std::vector<double> out(n + 1, 0.0);
  auto cc = [&](std::size_t k) { return k < n ? c[k] : 0.0; };
  if (n >= 1) out[1] = half * (cc(0) - 0.5 * cc(2));
  for (std::size_t k = 2; k <= n; ++k) {
    out[k] = half * (cc(k - 1) - cc(k + 1)) / (2.0 * static_cast<double>(k));
  }
  // Pin the antiderivative to zero at the left endpoint, T_k(-1) = (-1)^k.
  double at_a = 0.0;
  for (std::size_t k = 1; k <= n; ++k) at_a += (k % 2 == 0 ? out[k] : -out[k]);
  out[0] = -at_a;
  return out;
}

double chebyshev_eval(const std::vector<double>& c, double a, double b,
                      double x) {
  require(!c.empty(), "chebyshev_eval: empty coefficients");
  const double u = (2.0 * x - (a + b)) / (b - a);
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

double lobatto_interpolate(const std::vector<double>& values, double a,
                           double b, double x) {
  const std::size_t n = values.size();
  require(n >= 2, "lobatto_interpolate: need at least two values");
  const std::vector<double> xs = chebyshev_lobatto(a, b, n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = x - xs[j];
    if (dx == 0.0) return values[j];
    double wj = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n - 1) wj *= 0.5;
    const double t = wj / dx;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

std::vector<double> integrate_endpoint_singular(
    const std::function<void(double, std::vector<double>&)>& f,
    std::size_t dim, double t) {
  require(dim >= 1, "integrate_endpoint_singular: empty integrand");
  require(t > 0.0, "integrate_endpoint_singular: need t > 0");
  const QuadRule& base = gauss_legendre(12);

  std::vector<double> total(dim, 0.0);
  std::vector<double> cur(dim, 0.0);
  std::vector<double> val(dim, 0.0);

  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  };

  double prev_norm = 0.0;
  int growth_streak = 0;
  int negligible_streak = 0;
  double tau_hi = t;  // panel j covers s in [t - tau_hi, t - tau_lo]
  // Stopping depth balances two error sources: the geometric tail model
  // drifts like O(tau/t) for non-pure-power integrands, while evaluating
  // f near s = t loses digits to cancellation like O(eps t/tau). The
  // crossover sits at tau ~ sqrt(eps) t.
  const double floor_tau =
      std::sqrt(std::numeric_limits<double>::epsilon()) * t;

  for (int j = 0; j < 2000; ++j) {
    const double tau_lo = 0.5 * tau_hi;
    const double a = t - tau_hi;
    const double b = t - tau_lo;
    std::fill(cur.begin(), cur.end(), 0.0);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < base.x.size(); ++i) {
      f(mid + half * base.x[i], val);
      for (std::size_t d = 0; d < dim; ++d) {
        cur[d] += half * base.w[i] * val[d];
      }
    }
    for (std::size_t d = 0; d < dim; ++d) total[d] += cur[d];

    const double cn = inf_norm(cur);
    const double tn = inf_norm(total);
    if (j > 0) {
      growth_streak =
          (cn >= 0.999 * prev_norm && cn > 0.0) ? growth_streak + 1 : 0;
      if (growth_streak >= 8 && j >= 10) {
        throw ConvergenceError(
            "integrate_endpoint_singular: panel sums near the endpoint do "
            "not decay; singularity looks nonintegrable");
      }
    }
    negligible_streak = (cn <= 1e-17 * tn) ? negligible_streak + 1 : 0;
    if (negligible_streak >= 3) return total;

    if (tau_lo <= floor_tau) {
      // Geometric tail: for a (t-s)^(delta-1) endpoint the panel sums form
      // a geometric sequence with ratio 2^(-delta).
      if (prev_norm > 0.0 && cn > 0.0) {
        const double r = cn / prev_norm;
        if (r < 0.999) {
          const double scale = r / (1.0 - r);
          for (std::size_t d = 0; d < dim; ++d) total[d] += scale * cur[d];
        } else {
          throw ConvergenceError(
              "integrate_endpoint_singular: tail ratio at the resolution "
              "floor is not summable");
        }
      }
      return total;
    }
    prev_norm = cn;
    tau_hi = tau_lo;
  }
  throw ConvergenceError("integrate_endpoint_singular: panel budget exceeded");
}

double integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double t) {
  auto wrapped = [&f](double s, std::vector<double>& out) { out[0] = f(s); };
  return integrate_endpoint_singular(wrapped, 1, t)[0];
}

}  // namespace swirl
