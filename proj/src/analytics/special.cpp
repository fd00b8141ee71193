#include "gyrospin/analytics/special.hpp"

#include <cmath>
#include <string>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

namespace {

constexpr double series_limit = 15.0;

void check_order(int n) {
  if (n < 0 || n > 2) throw InvalidParameter("bessel order must be 0, 1 or 2, got " + std::to_string(n));
}

// sum_k (x/2)^(2k+n) / (k! (k+n)!) for x >= 0
double power_series(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int j = 1; j <= n; ++j) term *= h / j;
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k < 200; ++k) {
    term *= h2 / (double(k) * double(k + n));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// exp(-x) I_n(x) ~ (2 pi x)^(-1/2) sum_k (-1)^k a_k / x^k, truncated at the
// smallest term
double asymptotic_scaled(int n, double x) {
  const double mu = 4.0 * n * n;
  double term = 1.0, sum = 1.0, last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > last) break;
    sum += term;
    last = std::abs(term);
    if (last < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * constants::pi * x);
}

double scaled_nonneg(int n, double ax) {
  if (ax <= series_limit) return std::exp(-ax) * power_series(n, ax);
  return asymptotic_scaled(n, ax);
}

double parity(int n, double x) { return (x < 0 && n % 2 == 1) ? -1.0 : 1.0; }

}  // namespace

double bessel_i_scaled(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw InvalidParameter("bessel argument must be finite");
  return parity(order, x) * scaled_nonneg(order, std::abs(x));
}

double bessel_i(int order, double x) {
  check_order(order);
  const double ax = std::abs(x);
  if (!(ax <= bessel_overflow_limit))
    throw InvalidParameter("bessel argument outside overflow guard: " + std::to_string(x));
  if (ax <= series_limit) return parity(order, x) * power_series(order, ax);
  return parity(order, x) * asymptotic_scaled(order, ax) * std::exp(ax);
}

double bessel_ratio(int order, double x) {
  if (order == 0) return 1.0;
  return bessel_i_scaled(order, x) / bessel_i_scaled(0, x);
}

double laguerre(int n, double x) {
  if (n < 0) throw InvalidParameter("laguerre degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace gyrospin
