#pragma once

#include <map>
#include <string>
#include <vector>

#include "paraspin/checked_int.hpp"

namespace paraspin {

// Local Euler factor at q: polynomial in X = q^{-s}, coefficients ascending,
// coeffs[0] = 1 always.  Full good factors have degree 4; truncated good
// factors (q^2 beyond the expansion range) keep only [1, -lambda_q]; the bad
// factor at the level has degree 3.
struct EulerFactor {
    i64 q = 0;
    std::vector<i64> coeffs;
};

// Dirichlet coefficients a(1..n_max) of the degree-4 L-function, arithmetic
// normalization.  Stored in 128 bits with checked arithmetic so corrupt
// factors fail loudly instead of wrapping.
struct LSeriesCoefficients {
    i64 level = 0;
    i64 n_max = 0;
    std::vector<i128> a; // index n, a[0] unused
};

enum class GammaKind {
    Degree4ParamodularWt2, // Gamma(s+1/2)^2 completed, weight-2 paramodular
    Degree2EllipticWt2,    // Gamma(s+1/2) completed, classical elliptic
    DirichletOdd,          // odd Dirichlet character (metadata only)
};

// Functional-equation data for Lambda(s) = Q^s * gamma(s) * L(s),
// symmetric under s <-> 1-s.
struct SelbergData {
    double cond_q = 0.0; // Q
    int sign = 0;        // epsilon in Lambda(s) = sign * Lambda(1-s)
    GammaKind gamma_kind = GammaKind::Degree4ParamodularWt2;
};

// Good factor 1 - l X + (l^2 - l2 - 1) X^2 - l q X^3 + q^2 X^4 with
// l = lambda_q, l2 = lambda_{q^2}.
EulerFactor good_euler_factor(i64 lambda_q, i64 lambda_q2, i64 q);

// Truncated good factor [1, -lambda_q], valid when q^2 exceeds the expansion
// range so no higher prime power is ever touched.
EulerFactor truncated_euler_factor(i64 lambda_q, i64 q);

// Factor at the prime level p.  The degree-4 Euler polynomial degenerates to
//   (1 + eps X) * (1 - lambda X + p X^2)
// where eps is the functional-equation sign and lambda the Hecke eigenvalue
// at p.  The linear factor carries +eps (not -eps): the functional-equation
// sign enters the local factor of this degree-4 family through the +1
// archimedean eigenvalue, opposite to the elliptic-curve convention.  This
// orientation is pinned by tests reproducing the printed central values;
// flipping it shifts every twisted value by O(a(p)/p) and fails them all.
EulerFactor bad_euler_factor(int al_sign, i64 lambda_p, i64 p);

// Multiplicative expansion of prod_q factor_q(q^{-s})^{-1} up to n_max.
// Every prime <= n_max must be present in `factors`; a missing prime is a
// hard error naming the prime.
LSeriesCoefficients dirichlet_expansion(const std::map<i64, EulerFactor>& factors, i64 n_max);

// True for fundamental discriminants: 1, squarefree D = 1 mod 4, or 4m with
// m = 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(i64 d);

// Kronecker symbol (D|n) for fundamental D (or D = 1) and n >= 1.
// Non-fundamental D is rejected.
int kronecker_symbol(i64 d, i64 n);

// chi_D(n) table for n in [0, n_max], multiplicative fill.
std::vector<signed char> character_table(i64 d, i64 n_max);

// Twisted coefficients chi_D(n) a(n).  Requires gcd(D, level) = 1.
LSeriesCoefficients twist(const LSeriesCoefficients& coeffs, i64 d);

// Functional-equation data of the twisted degree-4 L-function:
//   Q = sqrt(p) D^2 / (4 pi^2),  sign = al_sign * (D|p).
// D = 1 gives the untwisted datum with Q = sqrt(p)/(4 pi^2).
SelbergData selberg_data(i64 p, i64 d, int al_sign);

// Same for a weight-2 elliptic newform of conductor N twisted by chi_D:
//   Q = sqrt(N) |D| / (2 pi),  sign = root_number * (D|-N)-style twist rule
// handled by the caller via `sign`.
SelbergData selberg_data_degree2(i64 conductor, i64 d, int sign);

} // namespace paraspin
