#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paraspin/checked_int.hpp"

namespace paraspin {

// Integral model y^2 + h(x)y = f(x) of a genus-2 curve over Q, together with
// the arithmetic data of the associated degree-4 L-function: prime level,
// Atkin-Lehner sign (functional-equation sign), and the Hecke eigenvalue at
// the level.  Coefficient vectors are ascending (f[i] multiplies x^i).
struct CurveSpec {
    i64 level = 0;
    int al_sign = 0;
    i64 lambda_p = 0;
    std::vector<i64> f;
    std::vector<i64> h;
    std::string key; // CLI handle, e.g. "277" or "587-"

    // Degree/shape checks plus a squarefreeness test of 4f + h^2 over Q.
    void validate() const;
};

// Point counts of the smooth projective model over F_q and (optionally)
// F_{q^2}.  n2 < 0 means "not computed".
struct PointCounts {
    i64 q = 0;
    i64 n1 = 0;
    i64 n2 = -1;
};

// Number of points of the smooth model over F_{q^ext}, ext in {1,2}.
// q must be prime and the curve must have good reduction at q.
i64 count_points(const CurveSpec& curve, i64 q, int ext = 1);

// (lambda_q, lambda_{q^2}) from point counts over F_q and F_{q^2}:
//   lambda_q   = 1 + q - N1
//   a(q^2)     = 1 + q + q^2 - (1+q) N1 + (N1^2 - N2)/2,  lambda_{q^2} = a(q^2) - 1
// N1^2 - N2 must be even; odd parity signals a counting bug.
std::pair<i64, i64> hecke_from_counts(const PointCounts& pc);

// True when the reduction of the model at prime q is a smooth genus-2 curve.
// Odd q: 4f + h^2 mod q must keep degree >= 5 and stay squarefree.  q = 2:
// direct Jacobian-criterion check on both affine charts over the splitting
// fields involved.
bool is_good_at(const CurveSpec& curve, i64 q);

// Attempts the substitution y = 2Y + v(x), deg v <= 3, v coefficients in
// {0,1}, which fixes models that are singular at 2 only because the chosen
// equation is non-minimal there.  Returns the substituted model when one of
// the sixteen candidates is integral and has good reduction at 2.
std::optional<CurveSpec> two_adic_repair(const CurveSpec& curve);

// The coefficients of 4f + h^2 over Z (ascending), the branch polynomial of
// the model away from 2.
std::vector<i64> branch_polynomial(const CurveSpec& curve);

// CSV point-count cache, one line per prime: q,N1,N2 with N2 = -1 when the
// quadratic extension count was not needed.
void save_counts_csv(const std::string& path, const std::vector<PointCounts>& counts);
std::vector<PointCounts> load_counts_csv(const std::string& path);

} // namespace paraspin
