#include "swirl/bessel.hpp"

#include <cmath>
#include <limits>

#include "swirl/core.hpp"

namespace swirl {
namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr long double kEulerGammaL = 0.57721566490153286060651209008240243L;

// Branch point: the ascending series keeps ~1e-15 absolute accuracy in
// 80-bit arithmetic up to here, and the optimally truncated Hankel series
// is already below 1e-13 here, so the branches overlap cleanly.
constexpr double kBranch = 18.0;

// Ascending series J_n(x) = sum_m (-1)^m (x/2)^{2m+n} / (m! (m+n)!).
long double j_series(int n, long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  for (int m = 1; m <= n; ++m) term *= 0.5L * x / m;  // (x/2)^n / n!
  long double sum = term;
  for (int m = 1; m < 400; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + n));
    sum += term;
    if (std::fabs(term) < 1e-25L * (std::fabs(sum) + 1e-30L)) break;
  }
  return sum;
}

// Harmonic numbers H_0..H_m as long doubles.
long double harmonic(int m) {
  long double h = 0.0L;
  for (int i = 1; i <= m; ++i) h += 1.0L / i;
  return h;
}

// Ascending series for Y0 and Y1 (with the log term), x <= branch point.
long double y_series(int n, long double x) {
  const long double q = 0.25L * x * x;
  const long double lg = std::log(0.5L * x);
  if (n == 0) {
    // Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum_{m>=1} (-1)^{m+1} H_m q^m/(m!)^2].
    long double sum = 0.0L;
    long double pw = 1.0L;  // q^m / (m!)^2
    for (int m = 1; m < 400; ++m) {
      pw *= q / (static_cast<long double>(m) * m);
      const long double term = (m % 2 ? pw : -pw) * harmonic(m);
      sum += term;
      if (std::fabs(term) < 1e-25L * (std::fabs(sum) + 1e-30L) && m > 4) break;
    }
    return (2.0L / kPiL) * ((lg + kEulerGammaL) * j_series(0, x) + sum);
  }
  // Y1 = (2/pi) ln(x/2) J1 - 2/(pi x)
  //      - (x/2pi) sum_m (psi(m+1)+psi(m+2)) (-q)^m / (m!(m+1)!).
  long double sum = 0.0L;
  long double pw = 1.0L;  // q^m / (m!(m+1)!)
  for (int m = 0; m < 400; ++m) {
    if (m > 0) pw *= -q / (static_cast<long double>(m) * (m + 1));
    const long double psi = -2.0L * kEulerGammaL + harmonic(m) + harmonic(m + 1);
    const long double term = pw * psi;
    sum += term;
    if (std::fabs(term) < 1e-25L * (std::fabs(sum) + 1e-30L) && m > 4) break;
  }
  return (2.0L / kPiL) * lg * j_series(1, x) - 2.0L / (kPiL * x) -
         (0.5L * x / kPiL) * sum;
}

// Hankel asymptotic modulus/phase series: fills P and Q for order n at x.
// P ~ sum over even k, Q over odd k, of prod_{j<=k}(mu-(2j-1)^2)/(k! (8x)^k)
// with alternating signs inside each series; truncated at the smallest term.
void hankel_pq(int n, long double x, long double& p, long double& q) {
  const long double mu = 4.0L * n * n;
  long double term = 1.0L;  // c_k = prod(mu-(2j-1)^2)/(k! 8^k x^k)
  p = 1.0L;
  q = 0.0L;
  long double prev = std::numeric_limits<long double>::max();
  for (int k = 1; k < 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= (mu - odd * odd) / (8.0L * k * x);
    const long double mag = std::fabs(term);
    if (mag >= prev) break;  // series started diverging
    prev = mag;
    const int phase = (k % 4);
    if (phase == 1) q += term;
    else if (phase == 2) p -= term;
    else if (phase == 3) q -= term;
    else p += term;
    if (mag < 1e-20L) break;
  }
}

long double asymptotic(int n, bool second_kind, long double x) {
  long double p, q;
  hankel_pq(n, x, p, q);
  const long double chi = x - (2 * n + 1) * (kPiL / 4.0L);
  const long double amp = std::sqrt(2.0L / (kPiL * x));
  const long double c = std::cos(chi), s = std::sin(chi);
  return second_kind ? amp * (p * s + q * c) : amp * (p * c - q * s);
}

}  // namespace

double bessel_branch_point() { return kBranch; }

double cyl_j(int n, double x) {
  require(n >= 0 && n <= 2, "cyl_j: order must be 0, 1 or 2");
  require(x >= 0.0, "cyl_j: argument must be nonnegative");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const long double xl = x;
  if (x <= kBranch) return static_cast<double>(j_series(n, xl));
  return static_cast<double>(asymptotic(n, false, xl));
}

double cyl_y(int n, double x) {
  require(n >= 0 && n <= 2, "cyl_y: order must be 0, 1 or 2");
  require(x > 0.0, "cyl_y: argument must be positive");
  const long double xl = x;
  if (x <= kBranch) {
    if (n <= 1) return static_cast<double>(y_series(n, xl));
    // Upward recurrence (stable for Y): Y2 = (2/x) Y1 - Y0.
    return static_cast<double>((2.0L / xl) * y_series(1, xl) - y_series(0, xl));
  }
  return static_cast<double>(asymptotic(n, true, xl));
}

double cyl_j1_prime(double x) {
  if (x == 0.0) return 0.5;
  return cyl_j(0, x) - cyl_j(1, x) / x;
}

double bessel_zero(int n, int k) {
  require(n == 0 || n == 1, "bessel_zero: order must be 0 or 1");
  require(k >= 1, "bessel_zero: zero index starts at 1");

  // McMahon: j_{n,k} ~ b - (mu-1)/(8b) - 4(mu-1)(7mu-31)/(3(8b)^3), mu = 4n^2.
  const double mu = 4.0 * n * n;
  const double b = (k + 0.5 * n - 0.25) * kPi;
  double x = b - (mu - 1.0) / (8.0 * b) -
             4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * b, 3));

  auto f = [n](double t) { return cyl_j(n, t); };
  // derivative: J0' = -J1, J1' = J0 - J1/x
  auto df = [n](double t) {
    return n == 0 ? -cyl_j(1, t) : cyl_j(0, t) - cyl_j(1, t) / t;
  };

  // Zeros are separated by ~pi, so a half-pi bracket around the McMahon
  // guess isolates the root; widen defensively if the signs disagree.
  double lo = x - 1.5, hi = x + 1.5;
  if (lo <= 0.0) lo = 0.5;
  double flo = f(lo), fhi = f(hi);
  for (int grow = 0; grow < 8 && flo * fhi > 0.0; ++grow) {
    lo = std::max(0.25 * lo, lo - 0.5);
    hi += 0.5;
    flo = f(lo);
    fhi = f(hi);
  }
  require(flo * fhi <= 0.0, "bessel_zero: failed to bracket the root");

  for (int it = 0; it < 100; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (flo * fx <= 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    const double step = fx / df(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect fallback
    if (std::abs(next - x) < 1e-15 * x) return next;
    x = next;
  }
  return x;
}

}  // namespace swirl
