#pragma once

#include <map>
#include <string>
#include <vector>

#include "paraspin/analytic.hpp"
#include "paraspin/curves.hpp"
#include "paraspin/fixtures.hpp"
#include "paraspin/lseries.hpp"

namespace paraspin {

// Default Dirichlet-expansion length, and the cap when raising it
// automatically because the tail estimate at the largest requested |D|
// exceeds the tolerance.
constexpr i64 kDefaultNMax = 200000;
constexpr i64 kMaxAutoNMax = 2000000;

// Coefficient series of one eigenform, assembled from point counts:
//   - model substitution at 2 when the given equation is non-minimal there,
//   - N2 (hence the full degree-4 factor) only when q^2 <= n_max,
//   - the degenerate factor at the level,
//   - unramified factors at primes where every integral model is singular
//     recovered by functional-equation fitting (level 587+, prime 3).
struct SeriesBuild {
    LSeriesCoefficients coeffs;
    std::map<i64, EulerFactor> factors;
    std::vector<i64> repaired_primes; // substituted models (e.g. {2})
    std::vector<i64> fitted_primes;   // factors recovered by fitting
};

SeriesBuild build_series(const CurveSpec& curve, i64 n_max, int threads);

// The counting stage alone: every good prime <= bound (never the level),
// with the 2-adic model substitution applied automatically; N2 only when
// q^2 <= bound.  `skipped` lists primes where the working model is singular.
struct CountSweep {
    CurveSpec model;
    std::vector<i64> repaired_primes;
    std::vector<PointCounts> counts;
    std::vector<i64> skipped;
};
CountSweep count_sweep(const CurveSpec& curve, i64 bound, int threads);

struct VerifyOptions {
    i64 n_max = 0;     // 0: default, raised automatically as needed
    double tol = 1e-3; // per-row tail tolerance; rows at/over it are marked
    i64 d_min = -199;  // most negative discriminant to include
    int threads = 0;   // 0: default_thread_count()
};

// One discriminant row of a verification report.
struct ReportRow {
    i64 d = 0;
    int sign = 0; // functional-equation sign of the twist (+1 for all
                  // admissible rows; zero targets are genuine vanishings)
    bool in_reference = false;
    bool a_known = false;
    Rational a;            // reference coefficient average A(D)
    std::string printed;   // reference normalized value, verbatim
    double normalized = 0; // L(1/2, chi_D) |D| / C_F
    bool target_known = false;
    double target = 0;  // A(D)^2
    double abs_err = 0; // |normalized - target| when the target is known
    double tail_bound = 0;
    i64 terms_used = 0;
    bool marked = false;    // tail estimate >= tol: reported, not trusted
    i64 nearest_square = 0; // round(sqrt(max(normalized, 0)))
    std::string note;
};

struct ConjectureReport {
    std::string level_key;
    i64 level = 0;
    int al_sign = 0;
    i64 n_max = 0; // expansion length actually used
    double tol = 0;
    i64 c_f_discriminant = 0;  // normalization row D0
    double c_f = 0;            // L(1/2, chi_D0) |D0| / A(D0)^2, own values
    double c_f_reference = 0;  // published constant, for comparison only
    std::vector<ReportRow> rows;
};

// Fundamental D with d_min <= D < 0, p coprime to D and al_sign * (D|p) = +1,
// sorted by |D| ascending.  Exactly the discriminants the reference tables
// list; twists outside this set have functional-equation sign -1 and vanish.
std::vector<i64> admissible_discriminants(i64 level, int al_sign, i64 d_min);

// Full verification of one level against its reference table.  Reference
// A(D) values are used only as expectations and for the normalization row,
// never as inputs to the L-series side.
ConjectureReport verify_level(const CurveSpec& curve, const ValueTable& table,
                              const VerifyOptions& opt);

// Single-discriminant central value plus the normalization protocol.
struct CentralReport {
    std::string level_key;
    i64 level = 0;
    i64 d = 0;
    int sign = 0;
    double value = 0; // L(1/2, chi_D), unnormalized
    double tail_bound = 0;
    i64 terms_used = 0;
    i64 n_max = 0;
    i64 c_f_discriminant = 0;
    double c_f = 0;
    double normalized = 0;
};

// tol gates the result: explicit n_max that cannot reach tol raises
// InsufficientPrecisionError; n_max = 0 plans the expansion length itself.
CentralReport central_report(const CurveSpec& curve, const ValueTable& table, i64 d, i64 n_max,
                             double tol, int threads);

// Normalization row of a reference table: the smallest-|D| row with a known
// nonzero A(D), or simply the smallest-|D| row (target 1) for tables
// published without an A column.  Returns {D0, A(D0)^2}.
std::pair<i64, Rational> normalization_row(const ValueTable& table);

} // namespace paraspin
