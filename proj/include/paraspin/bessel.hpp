#pragma once

#include "paraspin/dd.hpp"

namespace paraspin {

// Modified Bessel function of the second kind, nu in {0, 1}, x > 0.
// Relative error <= 1e-12 across the full range.  Below the switchover the
// ascending series runs in double-double to absorb its cancellation; above
// it the asymptotic expansion in long double is already past its optimal
// truncation point.
double bessel_k(int nu, double x);

// Double-double version of the ascending-series branch, x < 16.  Exposed so
// the approximate-functional-equation weight can form z*K1(z) before any
// rounding to double.
dd bessel_k_dd(int nu, double x);

// Switchover between the ascending series and the asymptotic expansion.
inline constexpr double bessel_series_cut = 16.0;

} // namespace paraspin
