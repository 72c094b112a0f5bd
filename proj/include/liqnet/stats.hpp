#pragma once
// Two-sample Kolmogorov-Smirnov test and small statistical helpers.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace liqnet {

// Survival function Q(lambda) = P(K > lambda) of the Kolmogorov distribution.
// Direct alternating series for large lambda; Jacobi-theta dual form for
// small lambda where the direct series converges slowly.
inline double kolmogorov_tail(double lambda) {
  constexpr double pi = std::numbers::pi;
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double t = std::exp(-pi * pi / (8.0 * lambda * lambda));
    const double cdf = std::sqrt(2.0 * pi) / lambda * (t + std::pow(t, 9) + std::pow(t, 25));
    return 1.0 - cdf;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_a = 0, n_b = 0;
};

// D = sup_x |F_a(x) - F_b(x)| over right-continuous empirical CDFs; p-value
// from the asymptotic Kolmogorov distribution at effective size
// n_a n_b / (n_a + n_b).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < na || ib < nb) {
    const double x = (ib == nb || (ia < na && a[ia] <= b[ib])) ? a[ia] : b[ib];
    while (ia < na && a[ia] == x) ++ia;
    while (ib < nb && b[ib] == x) ++ib;
    const double diff = std::fabs(static_cast<double>(ia) / static_cast<double>(na) -
                                  static_cast<double>(ib) / static_cast<double>(nb));
    if (diff > d) d = diff;
  }
  const double ne = static_cast<double>(na) * static_cast<double>(nb) / static_cast<double>(na + nb);
  return KsResult{d, kolmogorov_tail(std::sqrt(ne) * d), na, nb};
}

inline double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("pearson: need at least 3 observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: constant series");
  return sxy / std::sqrt(sxx * syy);
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
inline double sample_std(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace liqnet
