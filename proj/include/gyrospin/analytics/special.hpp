#pragma once

namespace gyrospin {

inline constexpr double bessel_overflow_limit = 700.0;

// Modified Bessel function of the first kind, order 0, 1 or 2.
// Throws InvalidParameter for other orders and for |x| > bessel_overflow_limit.
double bessel_i(int order, double x);

// exp(-|x|) I_n(x); defined for every finite x.
double bessel_i_scaled(int order, double x);

// I_n(x) / I_0(x) without overflow.
double bessel_ratio(int order, double x);

// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

}  // namespace gyrospin
