#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hpmsim::stats {

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz; converges for x < (a+1)/(a+b+2).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace detail

//! Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
inline double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete_beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

//! Beta(a, b) quantile by bisection on incomplete_beta, to 1e-12 in x.
inline double beta_quantile(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("beta_quantile: p must lie in [0, 1]");
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (incomplete_beta(mid, a, b) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/*!
 * Exact (Clopper-Pearson) binomial confidence interval for k successes in n
 * trials: low = B^-1(alpha/2; k, n-k+1), high = B^-1(1-alpha/2; k+1, n-k),
 * with low = 0 at k = 0 and high = 1 at k = n.
 */
inline Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95) {
  if (trials == 0 || successes > trials)
    throw std::domain_error("clopper_pearson: need 0 <= successes <= trials, trials >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::domain_error("clopper_pearson: confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval ci;
  ci.low = successes == 0 ? 0.0 : beta_quantile(alpha / 2.0, k, n - k + 1.0);
  ci.high = successes == trials ? 1.0 : beta_quantile(1.0 - alpha / 2.0, k + 1.0, n - k);
  return ci;
}

}  // namespace hpmsim::stats
