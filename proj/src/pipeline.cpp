#include "paraspin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paraspin/errors.hpp"
#include "paraspin/parallel.hpp"
#include "paraspin/primes.hpp"

namespace paraspin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Functional-equation fitting needs the series long enough that the fitted
// evaluations have converged; and the candidate grid grows with the prime.
constexpr i64 kFitMinNMax = 30000;
constexpr i64 kFitMaxPrime = 100;

// Recovers the unramified degree-4 factor at a prime q0 where every
// available integral model is singular, so counting cannot see it.  The
// family is the self-dual palindrome 1 + c1 X + c2 X^2 + q0 c1 X^3 + q0^2
// X^4 (|c1| <= 4 sqrt(q0), |c2| <= 6 q0 from the Weil bounds).  For each
// candidate the central sum
//   S(X) = sum_n a(n) chi_D(n)/n [H(n/(Q X)) + sign H(n X / Q)]
// is evaluated at X in {3/4, 1, 4/3} for the two smallest admissible
// discriminants coprime to q0; the true factor makes S independent of X
// (that is what the functional equation asserts), so the winner minimizes
// the summed spread.  The margin over the runner-up is asserted to be
// decisive, not merely best-of-grid.
EulerFactor fit_unramified_factor(i64 q0, const CurveSpec& curve,
                                  const std::map<i64, EulerFactor>& other_factors, i64 n_max) {
    if (q0 > kFitMaxPrime) {
        throw InternalCheckError("cannot recover the local factor at " + std::to_string(q0) +
                                 ": prime too large for functional-equation fitting");
    }
    if (n_max < kFitMinNMax) {
        throw InsufficientPrecisionError(
            "expansion length " + std::to_string(n_max) +
                " is too short to recover the local factor at " + std::to_string(q0) +
                " by functional-equation fitting (needs " + std::to_string(kFitMinNMax) + ")",
            0.0, kInf, kFitMinNMax);
    }

    // Base expansion with a trivial factor at q0: a(n) = 0 whenever q0 | n.
    std::map<i64, EulerFactor> with_trivial = other_factors;
    with_trivial[q0] = EulerFactor{q0, {1}};
    const LSeriesCoefficients base = dirichlet_expansion(with_trivial, n_max);
    std::vector<double> b(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (i64 n = 1; n <= n_max; ++n) b[n] = static_cast<double>(base.a[n]);

    // Two smallest admissible discriminants coprime to q0.
    std::vector<i64> discs;
    for (i64 d = -3; d >= -1000 && discs.size() < 2; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        if (d % q0 == 0 || d % curve.level == 0) continue;
        if (curve.al_sign * kronecker_symbol(d, curve.level) != 1) continue;
        discs.push_back(d);
    }
    if (discs.size() < 2) {
        throw InternalCheckError("no usable discriminants for functional-equation fitting");
    }
    const double xs[3] = {0.75, 1.0, 4.0 / 3.0};

    int j_max = 0;
    for (i64 pw = q0; pw <= n_max; pw *= q0) ++j_max;

    // Candidate-independent pieces: S(X) = s0 + sum_j a_{q0}(q0^j) u[j],
    // where s0 sums the terms coprime to q0 and u[j] collects base(m) times
    // the weight at n = q0^j m.
    double s0[2][3] = {};
    std::vector<double> u[2][3];
    for (int di = 0; di < 2; ++di) {
        const i64 d = discs[di];
        const SelbergData sd = selberg_data(curve.level, d, curve.al_sign);
        const std::vector<signed char> chi = character_table(d, n_max);
        std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
        for (int xi = 0; xi < 3; ++xi) {
            const double qx = sd.cond_q * xs[xi];
            for (i64 n = 1; n <= n_max; ++n) {
                if (chi[n] == 0) continue;
                const double x_lo = static_cast<double>(n) / qx;
                const double x_hi = static_cast<double>(n) * xs[xi] / sd.cond_q;
                if (std::min(x_lo, x_hi) > 900.0) break; // weights vanish from here on
                const double weight = afe_weight(GammaKind::Degree4ParamodularWt2, x_lo) +
                                      sd.sign * afe_weight(GammaKind::Degree4ParamodularWt2, x_hi);
                w[n] = chi[n] * weight / static_cast<double>(n);
            }
            double s = 0.0;
            for (i64 n = 1; n <= n_max; ++n) {
                if (n % q0 != 0) s += b[n] * w[n];
            }
            s0[di][xi] = s;
            u[di][xi].assign(j_max + 1, 0.0);
            i64 pw = 1;
            for (int j = 1; j <= j_max; ++j) {
                pw *= q0;
                double uj = 0.0;
                for (i64 m = 1; m * pw <= n_max; ++m) {
                    if (m % q0 != 0) uj += b[m] * w[m * pw];
                }
                u[di][xi][j] = uj;
            }
            std::fill(w.begin(), w.end(), 0.0);
        }
    }

    const i64 c1_bound = static_cast<i64>(std::floor(4.0 * std::sqrt(static_cast<double>(q0))));
    const i64 c2_bound = 6 * q0;
    double best = kInf, second = kInf;
    i64 best_c1 = 0, best_c2 = 0;
    std::vector<double> apow(j_max + 1, 0.0);
    for (i64 c1 = -c1_bound; c1 <= c1_bound; ++c1) {
        for (i64 c2 = -c2_bound; c2 <= c2_bound; ++c2) {
            const double coeff[5] = {1.0, static_cast<double>(c1), static_cast<double>(c2),
                                     static_cast<double>(q0 * c1),
                                     static_cast<double>(q0 * q0)};
            apow[0] = 1.0;
            for (int j = 1; j <= j_max; ++j) {
                double v = 0.0;
                for (int i = 1; i <= std::min(j, 4); ++i) v -= coeff[i] * apow[j - i];
                apow[j] = v;
            }
            double defect = 0.0;
            for (int di = 0; di < 2; ++di) {
                double lo = kInf, hi = -kInf;
                for (int xi = 0; xi < 3; ++xi) {
                    double s = s0[di][xi];
                    for (int j = 1; j <= j_max; ++j) s += apow[j] * u[di][xi][j];
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
                defect += hi - lo;
            }
            if (defect < best) {
                second = best;
                best = defect;
                best_c1 = c1;
                best_c2 = c2;
            } else if (defect < second) {
                second = defect;
            }
        }
    }
    if (!(best < 1e-6) || !(second > 100.0 * best)) {
        throw InternalCheckError(
            "functional-equation fitting at " + std::to_string(q0) +
            " is not decisive: best spread " + std::to_string(best) + ", runner-up " +
            std::to_string(second));
    }
    return EulerFactor{q0, {1, best_c1, best_c2, q0 * best_c1, q0 * q0}};
}

} // namespace

CountSweep count_sweep(const CurveSpec& curve, i64 bound, int threads) {
    curve.validate();
    if (bound < 2) throw InvalidInputError("counting bound must be at least 2");
    if (threads <= 0) threads = default_thread_count();

    CountSweep out;
    out.model = curve;
    if (curve.level != 2 && !is_good_at(out.model, 2)) {
        if (std::optional<CurveSpec> fixed = two_adic_repair(out.model)) {
            out.model = *fixed;
            out.repaired_primes.push_back(2);
        }
    }

    std::vector<i64> good;
    for (i64 q : primes_upto(bound)) {
        if (q == curve.level) continue;
        (is_good_at(out.model, q) ? good : out.skipped).push_back(q);
    }

    out.counts.resize(good.size());
    parallel_for(good.size(), threads, [&](std::size_t i) {
        PointCounts pc;
        pc.q = good[i];
        pc.n1 = count_points(out.model, pc.q, 1);
        if (pc.q <= bound / pc.q) pc.n2 = count_points(out.model, pc.q, 2);
        out.counts[i] = pc;
    });
    return out;
}

SeriesBuild build_series(const CurveSpec& curve, i64 n_max, int threads) {
    if (n_max < 16) throw InvalidInputError("n_max must be at least 16");

    CountSweep sweep = count_sweep(curve, n_max, threads);
    if (sweep.skipped.size() > 1) {
        std::string msg = "model is singular at several primes:";
        for (i64 q : sweep.skipped) msg += " " + std::to_string(q);
        throw InternalCheckError(msg);
    }

    SeriesBuild out;
    out.repaired_primes = sweep.repaired_primes;
    out.factors.emplace(curve.level, bad_euler_factor(curve.al_sign, curve.lambda_p, curve.level));
    for (const PointCounts& pc : sweep.counts) {
        i64 lambda_q;
        if (pc.n2 >= 0) {
            const auto [l1, l2] = hecke_from_counts(pc);
            lambda_q = l1;
            out.factors.emplace(pc.q, good_euler_factor(l1, l2, pc.q));
        } else {
            lambda_q = 1 + pc.q - pc.n1;
            out.factors.emplace(pc.q, truncated_euler_factor(lambda_q, pc.q));
        }
        if (lambda_q * lambda_q > 16 * pc.q) {
            throw InternalCheckError("eigenvalue bound violated at q=" + std::to_string(pc.q) +
                                     ": lambda=" + std::to_string(lambda_q));
        }
    }

    if (!sweep.skipped.empty()) {
        const i64 q0 = sweep.skipped.front();
        out.factors[q0] = fit_unramified_factor(q0, curve, out.factors, n_max);
        out.fitted_primes.push_back(q0);
    }
    out.coeffs = dirichlet_expansion(out.factors, n_max);
    out.coeffs.level = curve.level;
    return out;
}

std::vector<i64> admissible_discriminants(i64 level, int al_sign, i64 d_min) {
    if (d_min >= 0) throw InvalidInputError("d_min must be negative");
    std::vector<i64> out;
    for (i64 d = -3; d >= d_min; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        if (d % level == 0) continue;
        if (al_sign * kronecker_symbol(d, level) != 1) continue;
        out.push_back(d);
    }
    return out;
}

std::pair<i64, Rational> normalization_row(const ValueTable& table) {
    bool any_a = false;
    for (const ValueRow& row : table.rows) any_a = any_a || row.a_known;
    const ValueRow* pick = nullptr;
    for (const ValueRow& row : table.rows) {
        if (any_a && (!row.a_known || row.a.is_zero())) continue;
        if (!pick || std::llabs(row.d) < std::llabs(pick->d)) pick = &row;
    }
    if (!pick) throw FixtureError("reference table for " + table.level_key +
                                  " has no usable normalization row");
    return {pick->d, any_a ? pick->a * pick->a : Rational(1)};
}

ConjectureReport verify_level(const CurveSpec& curve, const ValueTable& table,
                              const VerifyOptions& opt) {
    if (curve.level != table.level || curve.al_sign != table.al_sign) {
        throw InvalidInputError("curve and reference table describe different eigenforms");
    }
    const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
    const auto [d0, target0] = normalization_row(table);

    const std::vector<i64> ds = admissible_discriminants(curve.level, curve.al_sign, opt.d_min);
    if (ds.empty() || ds.front() != d0) {
        throw InvalidInputError("discriminant range excludes the normalization row D=" +
                                std::to_string(d0));
    }

    i64 n_max = opt.n_max;
    if (n_max <= 0) {
        n_max = kDefaultNMax;
        double q_max = 0.0;
        for (i64 d : ds) {
            q_max = std::max(q_max, selberg_data(curve.level, d, curve.al_sign).cond_q);
        }
        const i64 need =
            required_n_max(q_max, opt.tol, GammaKind::Degree4ParamodularWt2);
        if (need > n_max) n_max = std::min(kMaxAutoNMax, need);
    }

    const SeriesBuild sb = build_series(curve, n_max, threads);

    std::vector<CentralValueResult> cvs(ds.size());
    parallel_for(ds.size(), threads, [&](std::size_t i) {
        const SelbergData sd = selberg_data(curve.level, ds[i], curve.al_sign);
        cvs[i] = central_value(twist(sb.coeffs, ds[i]), sd, kInf);
    });

    const std::size_t i0 =
        static_cast<std::size_t>(std::find(ds.begin(), ds.end(), d0) - ds.begin());
    const double c_f =
        cvs[i0].value * static_cast<double>(-d0) / target0.to_double();
    if (!(c_f > 0.0)) {
        throw InternalCheckError("normalization constant came out non-positive at D=" +
                                 std::to_string(d0));
    }

    ConjectureReport rep;
    rep.level_key = table.level_key;
    rep.level = curve.level;
    rep.al_sign = curve.al_sign;
    rep.n_max = n_max;
    rep.tol = opt.tol;
    rep.c_f_discriminant = d0;
    rep.c_f = c_f;
    rep.c_f_reference = table.c_f;

    std::map<i64, const ValueRow*> by_d;
    bool table_has_a = false;
    for (const ValueRow& row : table.rows) {
        by_d[row.d] = &row;
        table_has_a = table_has_a || row.a_known;
    }

    for (std::size_t i = 0; i < ds.size(); ++i) {
        ReportRow row;
        row.d = ds[i];
        row.sign = cvs[i].sign;
        row.normalized = cvs[i].value * static_cast<double>(-ds[i]) / c_f;
        row.tail_bound = cvs[i].tail_bound;
        row.terms_used = cvs[i].terms_used;
        row.marked = cvs[i].tail_bound >= opt.tol;
        row.nearest_square = std::llround(std::sqrt(std::max(row.normalized, 0.0)));
        if (auto it = by_d.find(ds[i]); it != by_d.end()) {
            const ValueRow& ref = *it->second;
            row.in_reference = true;
            row.printed = ref.printed;
            if (ref.a_known) {
                row.a_known = true;
                row.a = ref.a;
                row.target_known = true;
                row.target = (ref.a * ref.a).to_double();
                row.abs_err = std::abs(row.normalized - row.target);
                if (ref.a.is_zero()) row.note = "genuine central vanishing: twist sign +1, A(D)=0";
            } else if (table_has_a) {
                row.note = "reference leaves A(D) undetermined";
            }
        } else {
            row.note = "not listed in the reference table";
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

CentralReport central_report(const CurveSpec& curve, const ValueTable& table, i64 d, i64 n_max,
                             double tol, int threads) {
    if (threads <= 0) threads = default_thread_count();
    const SelbergData sd = selberg_data(curve.level, d, curve.al_sign); // validates d
    const auto [d0, target0] = normalization_row(table);

    const bool explicit_n = n_max > 0;
    if (!explicit_n) {
        n_max = kDefaultNMax;
        if (sd.sign == 1) {
            const i64 need = required_n_max(sd.cond_q, tol, sd.gamma_kind);
            if (need > n_max) n_max = std::min(kMaxAutoNMax, need);
        }
    }

    const SeriesBuild sb = build_series(curve, n_max, threads);
    const CentralValueResult cv = central_value(twist(sb.coeffs, d), sd, tol);
    const CentralValueResult cv0 =
        d == d0 ? cv
                : central_value(twist(sb.coeffs, d0), selberg_data(curve.level, d0, curve.al_sign),
                                kInf);
    const double c_f = cv0.value * static_cast<double>(-d0) / target0.to_double();
    if (!(c_f > 0.0)) {
        throw InternalCheckError("normalization constant came out non-positive at D=" +
                                 std::to_string(d0));
    }

    CentralReport rep;
    rep.level_key = table.level_key;
    rep.level = curve.level;
    rep.d = d;
    rep.sign = cv.sign;
    rep.value = cv.value;
    rep.tail_bound = cv.tail_bound;
    rep.terms_used = cv.terms_used;
    rep.n_max = n_max;
    rep.c_f_discriminant = d0;
    rep.c_f = c_f;
    rep.normalized = cv.value * static_cast<double>(-d) / c_f;
    return rep;
}

} // namespace paraspin
