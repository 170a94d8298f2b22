#include "paraspin/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "paraspin/bessel.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/quadforms.hpp"

namespace paraspin {

namespace {

// Arguments beyond which the weight is numerically zero against double
// accumulation (exp(-60) and the matching K-Bessel decay).
constexpr double kDegree4CutXOverQ = 900.0; // z = 2 sqrt(x) = 60
constexpr double kDegree2CutXOverQ = 60.0;

// Mean-square scale of the random-sign tail model, including safety margin.
constexpr double kTailModelScale = 2.0;

double weight_degree4(double x) {
    double z = 2.0 * std::sqrt(x);
    if (z < bessel_series_cut) {
        return dd_mul(bessel_k_dd(1, z), z).to_double();
    }
    return z * bessel_k(1, z);
}

} // namespace

double afe_weight(GammaKind kind, double x) {
    if (!(x > 0.0)) throw InvalidInputError("afe_weight: x must be positive");
    switch (kind) {
        case GammaKind::Degree4ParamodularWt2:
            return weight_degree4(x);
        case GammaKind::Degree2EllipticWt2:
            return std::exp(-x);
        case GammaKind::DirichletOdd:
            throw InvalidInputError(
                "afe_weight: no central-point weight is defined for the Dirichlet kind");
    }
    throw InvalidInputError("afe_weight: unknown gamma kind");
}

double tail_estimate(i64 n_max, double cond_q, GammaKind kind) {
    if (n_max < 1) throw InvalidInputError("tail_estimate: n_max must be >= 1");
    if (!(cond_q > 0.0)) throw InvalidInputError("tail_estimate: conductor scale must be positive");
    // integral_N^inf w(t/Q)^2 dt/t  with t = N (1+v)^2:
    //   = integral_0^inf w(N(1+v)^2 / Q)^2 * 2/(1+v) dv,
    // Simpson on [0, 12] with 600 panels (integrand decays at least like
    // exp(-4 sqrt(t/Q))).
    const int steps = 600;
    const double vmax = 12.0;
    const double hstep = vmax / steps;
    const double n0 = static_cast<double>(n_max);
    long double total = 0.0L;
    for (int i = 0; i <= steps; ++i) {
        double v = hstep * static_cast<double>(i);
        double x = n0 * (1.0 + v) * (1.0 + v) / cond_q;
        double w;
        if (kind == GammaKind::Degree4ParamodularWt2) {
            double z = 2.0 * std::sqrt(x);
            w = z > 700.0 ? 0.0 : (z < bessel_series_cut ? weight_degree4(x)
                                                         : z * bessel_k(1, z));
        } else if (kind == GammaKind::Degree2EllipticWt2) {
            w = x > 700.0 ? 0.0 : std::exp(-x);
        } else {
            throw InvalidInputError("tail_estimate: unsupported gamma kind");
        }
        double coef = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        total += static_cast<long double>(coef) * static_cast<long double>(w) *
                 static_cast<long double>(w) * 2.0L / (1.0L + static_cast<long double>(v));
    }
    total *= static_cast<long double>(hstep) / 3.0L;
    if (total < 0.0L) total = 0.0L;
    return 2.0 * kTailModelScale * std::sqrt(static_cast<double>(total));
}

i64 required_n_max(double cond_q, double tol, GammaKind kind) {
    if (!(tol > 0.0)) throw InvalidInputError("required_n_max: tolerance must be positive");
    i64 lo = 16;
    if (tail_estimate(lo, cond_q, kind) < tol) return lo;
    i64 hi = lo;
    while (tail_estimate(hi, cond_q, kind) >= tol) {
        if (hi > (i64(1) << 40))
            throw InvalidInputError("required_n_max: tolerance unreachable");
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        i64 mid = lo + (hi - lo) / 2;
        if (tail_estimate(mid, cond_q, kind) < tol) hi = mid;
        else lo = mid;
    }
    return hi;
}

CentralValueResult central_value(const LSeriesCoefficients& coeffs, const SelbergData& sd,
                                 double tol) {
    if (sd.sign != 1 && sd.sign != -1)
        throw InvalidInputError("central_value: functional-equation sign must be +1 or -1");
    if (!(tol > 0.0)) throw InvalidInputError("central_value: tolerance must be positive");
    CentralValueResult res;
    res.sign = sd.sign;
    if (sd.sign == -1) return res; // forced zero, no terms consumed

    if (sd.gamma_kind == GammaKind::DirichletOdd)
        throw InvalidInputError("central_value: Dirichlet kind has no degree-4/2 engine");
    const bool degree4 = sd.gamma_kind == GammaKind::Degree4ParamodularWt2;
    const double q = sd.cond_q;
    if (!(q > 0.0)) throw InvalidInputError("central_value: conductor scale must be positive");

    const double cut = degree4 ? kDegree4CutXOverQ : kDegree2CutXOverQ;
    long double acc = 0.0L;
    i64 used = 0;
    for (i64 n = 1; n <= coeffs.n_max; ++n) {
        double x = static_cast<double>(n) / q;
        if (x > cut) break;
        ++used;
        i128 an = coeffs.a[static_cast<std::size_t>(n)];
        if (an == 0) continue;
        double w = degree4 ? weight_degree4(x) : std::exp(-x);
        acc += static_cast<long double>(an) / static_cast<long double>(n) *
               static_cast<long double>(w);
    }
    res.value = static_cast<double>(2.0L * acc);
    res.terms_used = used;
    res.tail_bound = tail_estimate(coeffs.n_max, q, sd.gamma_kind);
    if (res.tail_bound >= tol) {
        i64 need = required_n_max(q, tol, sd.gamma_kind);
        char msg[192];
        std::snprintf(msg, sizeof msg,
                      "central_value: truncation estimate %.3g does not beat tolerance %.3g at "
                      "n_max %lld; approximately %lld coefficients would suffice",
                      res.tail_bound, tol, static_cast<long long>(coeffs.n_max),
                      static_cast<long long>(need));
        throw InsufficientPrecisionError(msg, res.value, res.tail_bound, need);
    }
    return res;
}

std::pair<Rational, double> dirichlet_class_number_values(i64 d) {
    if (!is_fundamental_discriminant(d) || d >= 0)
        throw InvalidInputError("dirichlet_class_number_values: D must be a negative "
                                "fundamental discriminant");
    ClassData cd = class_data(d);
    Rational l0 = Rational(2 * cd.h, cd.w);
    double l1 = 2.0 * std::numbers::pi * static_cast<double>(cd.h) /
                (static_cast<double>(cd.w) * std::sqrt(static_cast<double>(-d)));
    return {l0, l1};
}

} // namespace paraspin
