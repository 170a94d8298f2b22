#pragma once

// Independent oracles shared by the unit and acceptance suites.  Everything
// here is deliberately written against the mathematics, not against the
// library internals: point counts come from brute-force solution loops over
// explicitly constructed finite fields, and the smoothing weight comes from
// direct numerical integration of its inverse Mellin transform.

#include "paraspin/checked_int.hpp"
#include "paraspin/curves.hpp"
#include "paraspin/lseries.hpp"
#include "paraspin/primes.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using paraspin::i64;

// Element a + b*t of F_q (b = 0) or F_{q^2}.  For odd q the quadratic
// extension is F_q(t) with t^2 = d for the least non-residue d; for q = 2 it
// is F_4 = F_2(t) with t^2 = t + 1.
struct BruteField {
    i64 q = 0;
    int ext = 1;
    i64 d = 0;

    using El = std::pair<i64, i64>;

    BruteField(i64 q_in, int ext_in) : q(q_in), ext(ext_in) {
        if (ext == 2 && q > 2) {
            for (i64 c = 2; c < q; ++c) {
                bool square = false;
                for (i64 y = 1; y <= q / 2; ++y) {
                    if (y * y % q == c) { square = true; break; }
                }
                if (!square) { d = c; break; }
            }
            if (d == 0) throw std::runtime_error("no non-residue found");
        }
    }

    El from_int(i64 n) const {
        i64 r = n % q;
        if (r < 0) r += q;
        return {r, 0};
    }
    El add(El u, El v) const { return {(u.first + v.first) % q, (u.second + v.second) % q}; }
    El sub(El u, El v) const {
        return {(u.first - v.first % q + q) % q, (u.second - v.second % q + q) % q};
    }
    El mul(El u, El v) const {
        if (ext == 1) return {u.first * v.first % q, 0};
        i64 ac = u.first * v.first % q;
        i64 bd = u.second * v.second % q;
        i64 cross = (u.first * v.second + u.second * v.first) % q;
        if (q == 2) return {(ac + bd) % 2, (cross + bd) % 2}; // t^2 = t + 1
        return {(ac + d % q * bd) % q, cross};               // t^2 = d
    }
    bool is_zero(El u) const { return u.first == 0 && u.second == 0; }

    std::vector<El> all() const {
        std::vector<El> out;
        i64 bmax = ext == 2 ? q : 1;
        for (i64 b = 0; b < bmax; ++b)
            for (i64 a = 0; a < q; ++a) out.push_back({a, b});
        return out;
    }

    El eval(const std::vector<i64>& poly, El x) const {
        El acc = from_int(0);
        for (auto it = poly.rbegin(); it != poly.rend(); ++it)
            acc = add(mul(acc, x), from_int(*it));
        return acc;
    }
};

// Points of the smooth projective model of y^2 + h(x)y = f(x) over F_{q^ext}
// by brute force over both affine charts.  The chart at infinity
// (x = 1/v, y = w/v^3) reduces at v = 0 to w^2 + h3 w = f6 with h3, f6 the
// x^3 and x^6 coefficients.
inline i64 brute_count(const paraspin::CurveSpec& curve, i64 q, int ext) {
    BruteField F(q, ext);
    auto elems = F.all();
    i64 total = 0;
    for (const auto& x : elems) {
        auto hx = F.eval(curve.h, x);
        auto fx = F.eval(curve.f, x);
        for (const auto& y : elems) {
            auto lhs = F.add(F.mul(y, y), F.mul(hx, y));
            if (F.is_zero(F.sub(lhs, fx))) ++total;
        }
    }
    i64 h3 = curve.h.size() > 3 ? curve.h[3] : 0;
    i64 f6 = curve.f.size() > 6 ? curve.f[6] : 0;
    auto h3e = F.from_int(h3);
    auto f6e = F.from_int(f6);
    for (const auto& w : elems) {
        auto lhs = F.add(F.mul(w, w), F.mul(h3e, w));
        if (F.is_zero(F.sub(lhs, f6e))) ++total;
    }
    return total;
}

// Complex log-gamma for Re z > 0.5 (Lanczos approximation, g = 7).
inline std::complex<double> lanczos_lgamma(std::complex<double> z) {
    static const double coef[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    std::complex<double> x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Direct numerical inverse Mellin transform of Gamma(1+w)^m / w at the
// center: the smoothing weight equals
//   (1/2*pi) Integral over t in [-T, T] of Re[ Gamma(1+w)^m x^{-w} / w ],
// w = c + it, with c to the right of 0.  The contour sits at c = 0.5 for
// x <= 1 and c = 2 for x > 1 so the integrand decays before |t| = T.
inline double contour_weight(paraspin::GammaKind kind, double x) {
    int m = kind == paraspin::GammaKind::Degree4ParamodularWt2 ? 2 : 1;
    double c = x <= 1.0 ? 0.5 : 2.0;
    const double T = 16.0;
    const double h = 0.005;
    int n = static_cast<int>(std::ceil(T / h));
    auto f = [&](double t) {
        std::complex<double> w(c, t);
        std::complex<double> val =
            std::exp(static_cast<double>(m) * lanczos_lgamma(1.0 + w) - w * std::log(x)) / w;
        return val.real();
    };
    double sum = f(-T) + f(T);
    for (int i = 1; i < 2 * n; ++i) {
        double t = -T + static_cast<double>(i) * h;
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(t);
    }
    return sum * h / 3.0 / (2.0 * M_PI);
}

// Dirichlet coefficients of the weight-2 newform of the conductor-11
// elliptic curve y^2 + y = x^3 - x^2 - 10x - 20 (the smallest conductor with
// a newform), built from scratch: a_q by counting points over F_q through
// the substitution (2y+1)^2 = 4g(x) + 1, prime powers by the Hecke
// recursion, the rest multiplicatively.
inline paraspin::LSeriesCoefficients elliptic_11a1_coefficients(i64 n_max) {
    auto legendre = [](i64 a, i64 q) -> i64 {
        a %= q;
        if (a < 0) a += q;
        if (a == 0) return 0;
        i64 r = 1, base = a, e = (q - 1) / 2;
        while (e > 0) {
            if (e & 1) r = r * base % q;
            base = base * base % q;
            e >>= 1;
        }
        return r == 1 ? 1 : -1;
    };
    paraspin::LSeriesCoefficients out;
    out.level = 11;
    out.n_max = n_max;
    out.a.assign(static_cast<std::size_t>(n_max) + 1, paraspin::i128(0));
    out.a[1] = 1;
    paraspin::SpfSieve sieve(n_max);
    for (i64 q : paraspin::primes_upto(n_max)) {
        i64 aq;
        if (q == 11) {
            aq = 1;
        } else if (q == 2) {
            aq = -2; // y^2 + y = g(x) over F_2: direct table
        } else {
            i64 s = 0;
            for (i64 x = 0; x < q; ++x) {
                i64 g = ((x * x * x - x * x - 10 * x - 20) % q + q) % q;
                s += legendre(4 * g + 1, q);
            }
            aq = -s;
        }
        std::vector<i64> pows{1, aq};
        i64 pk = q;
        std::size_t k = 1;
        while (pk <= n_max) {
            out.a[static_cast<std::size_t>(pk)] = pows[k];
            if (pk > n_max / q) break;
            pk *= q;
            ++k;
            i64 val = q == 11 ? pows[k - 1] * aq : aq * pows[k - 1] - q * pows[k - 2];
            pows.push_back(val);
        }
    }
    // multiplicative fill from prime powers
    for (i64 n = 2; n <= n_max; ++n) {
        i64 q = sieve.spf(n);
        i64 pk = 1, m = n;
        while (m % q == 0) {
            m /= q;
            pk *= q;
        }
        if (m > 1) out.a[static_cast<std::size_t>(n)] =
            out.a[static_cast<std::size_t>(pk)] * out.a[static_cast<std::size_t>(m)];
    }
    return out;
}

} // namespace oracle
