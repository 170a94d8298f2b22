#pragma once

#include <cmath>

namespace paraspin {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives ~32 significant digits, enough to absorb the catastrophic
// cancellation in ascending Bessel-K series up to the asymptotic switchover.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {} // NOLINT(google-explicit-constructor)
    dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return dd(s, err);
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return dd(s, b - (s - a));
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return dd(p, std::fma(a, b, -p));
}

} // namespace dd_detail

inline dd dd_add(const dd& a, const dd& b) {
    dd s = dd_detail::two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return dd_detail::quick_two_sum(s.hi, lo);
}

inline dd dd_sub(const dd& a, const dd& b) { return dd_add(a, dd(-b.hi, -b.lo)); }

inline dd dd_mul(const dd& a, const dd& b) {
    dd p = dd_detail::two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, lo);
}

inline dd dd_mul(const dd& a, double b) {
    dd p = dd_detail::two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return dd_detail::quick_two_sum(p.hi, lo);
}

inline dd dd_div(const dd& a, const dd& b) {
    double q0 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul(b, q0));
    double q1 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    return dd_add(dd_detail::quick_two_sum(q0, q1), dd(q2));
}

inline dd dd_div(const dd& a, double b) { return dd_div(a, dd(b)); }

inline dd dd_neg(const dd& a) { return dd(-a.hi, -a.lo); }

// exp(a) for |a| up to a few hundred; exact range reduction by ln 2 followed
// by a Taylor sum in the reduced argument.
dd dd_exp(const dd& a);

// Natural log for a > 0; double seed plus two Newton corrections in dd.
dd dd_log(const dd& a);

// High-word/low-word splits of the constants used by the Bessel kernels.
inline dd dd_pi()    { return dd(3.141592653589793116e+00, 1.224646799147353207e-16); }
inline dd dd_ln2()   { return dd(6.931471805599452862e-01, 2.319046813846299558e-17); }
inline dd dd_euler() { return dd(5.772156649015328655e-01, -4.942915152430645e-18); }

} // namespace paraspin
