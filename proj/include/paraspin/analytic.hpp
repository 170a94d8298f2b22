#pragma once

#include <utility>

#include "paraspin/lseries.hpp"
#include "paraspin/rational.hpp"

namespace paraspin {

struct CentralValueResult {
    double value = 0.0;     // L at the center of the functional equation
    i64 terms_used = 0;     // Dirichlet terms actually summed
    double tail_bound = 0.0;// truncation-error estimate (see central_value)
    int sign = 0;           // functional-equation sign
};

// Smoothing weight of the single symmetric approximate functional equation
// at the center:
//   degree-4 kind: H(x) = 2 sqrt(x) K_1(2 sqrt(x))   (inverse Mellin of Gamma(1+w)^2/w)
//   degree-2 kind: exp(-x)                            (inverse Mellin of Gamma(1+w)/w)
// The Dirichlet-character kind has no central-point weight here and is
// rejected.
double afe_weight(GammaKind kind, double x);

// Central value by the smoothed approximate functional equation:
//   sign=-1: exactly 0 (odd functional equation), terms_used = 0.
//   sign=+1: L = 2 sum_{n>=1} (a(n)/n) w(n/Q) summed in ascending order.
//
// tail_bound is a root-mean-square estimate of the truncation error: the
// terms beyond n_max are modelled as w(n/Q)/sqrt(n) with random signs and
// Rankin-Selberg-normalized eigenvalue scale (constant mean square), with a
// 2x safety factor.  A worst-case divisor-bound majorant is useless here: at
// the conductor sizes this tool verifies it exceeds the actual error by many
// orders of magnitude precisely because the actual error lives off
// square-root cancellation.  The estimate is calibrated (tests pin it above
// observed |S_{2N} - S_N| with margin) and gates success: tail_bound >= tol
// raises InsufficientPrecisionError carrying the n_max that would suffice.
CentralValueResult central_value(const LSeriesCoefficients& coeffs, const SelbergData& sd,
                                 double tol = 1e-8);

// The truncation-error estimate itself, exposed for planning how many
// coefficients a run needs.
double tail_estimate(i64 n_max, double cond_q, GammaKind kind);

// Smallest n_max whose tail estimate beats tol.
i64 required_n_max(double cond_q, double tol, GammaKind kind);

// Dirichlet L-values of the quadratic character of fundamental D < 0 via the
// class number: L(0) = 2h/w exact, L(1) = 2 pi h / (w sqrt(|D|)).
std::pair<Rational, double> dirichlet_class_number_values(i64 d);

} // namespace paraspin
