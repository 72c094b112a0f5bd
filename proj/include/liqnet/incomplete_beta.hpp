#pragma once
// Regularized incomplete beta function I_x(a,b).
//
// Integer parameters take the exact binomial-sum route (all terms are
// nonnegative binomial probabilities, so the sum is stable); everything else
// goes through the Lentz continued fraction.

#include <cmath>
#include <stdexcept>

namespace liqnet {

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz method.
inline double ibeta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
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
  throw std::runtime_error("regularized_incomplete_beta: continued fraction failed to converge");
}

inline double ibeta_cf_route(double a, double b, double x) {
  // Prefactor x^a (1-x)^b / (a B(a,b)) shared by both symmetric branches.
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * ibeta_continued_fraction(b, a, 1.0 - x) / b;
}

// I_x(a,b) = sum_{k=a}^{n} C(n,k) x^k (1-x)^{n-k} with n = a+b-1, for integer
// a,b >= 1. Terms are binomial probabilities; the running product never grows
// past 1.
inline double ibeta_binomial_sum(int a, int b, double x) {
  const int n = a + b - 1;
  // First term k = a via logs, then the pmf recurrence upward.
  double term = std::exp(std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n - a + 1.0) +
                         a * std::log(x) + (n - a) * std::log1p(-x));
  double sum = term;
  const double odds = x / (1.0 - x);
  for (int k = a; k < n; ++k) {
    term *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    sum += term;
  }
  return sum < 1.0 ? sum : 1.0;
}

inline bool is_positive_integer(double v) {
  return v >= 1.0 && v == std::floor(v);
}

}  // namespace detail

inline double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: a and b must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: x must lie in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (detail::is_positive_integer(a) && detail::is_positive_integer(b) && a + b <= 200.0) {
    return detail::ibeta_binomial_sum(static_cast<int>(a), static_cast<int>(b), x);
  }
  return detail::ibeta_cf_route(a, b, x);
}

}  // namespace liqnet
