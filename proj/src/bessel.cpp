#include "paraspin/bessel.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "paraspin/errors.hpp"

namespace paraspin {

namespace {

constexpr int kMaxSeriesTerms = 96;

// 1/k and 1/(k(k+1)) to double-double accuracy, k = 1..kMaxSeriesTerms+1.
struct SeriesReciprocals {
    std::array<dd, kMaxSeriesTerms + 2> inv_k;
    std::array<dd, kMaxSeriesTerms + 2> inv_k_k1;
    SeriesReciprocals() {
        for (int k = 1; k <= kMaxSeriesTerms + 1; ++k) {
            inv_k[static_cast<std::size_t>(k)] = dd_div(dd(1.0), dd(static_cast<double>(k)));
            inv_k_k1[static_cast<std::size_t>(k)] =
                dd_div(dd(1.0), dd(static_cast<double>(k) * (k + 1)));
        }
    }
};

const SeriesReciprocals& recips() {
    static const SeriesReciprocals r;
    return r;
}

// Ascending series in t = x^2/4:
//   I0 = sum t^k/(k!)^2                   I1 = (x/2) sum t^k/(k!(k+1)!)
//   K0 = -(ln(x/2)+gamma) I0 + sum_{k>=1} H_k t^k/(k!)^2
//   K1 = 1/x + (ln(x/2)+gamma) I1 - (x/4) sum_{k>=0} (H_k+H_{k+1}) t^k/(k!(k+1)!)
dd series_k_dd(int nu, double x) {
    const auto& rc = recips();
    dd t = dd_detail::two_prod(x, x);
    t = dd(t.hi * 0.25, t.lo * 0.25);
    dd ell = dd_add(dd_log(dd(x * 0.5)), dd_euler()); // ln(x/2) + gamma

    if (nu == 0) {
        dd i0 = dd(1.0), sh = dd(0.0);
        dd term = dd(1.0), hk = dd(0.0);
        for (int k = 1; k <= kMaxSeriesTerms; ++k) {
            const dd& ik = rc.inv_k[static_cast<std::size_t>(k)];
            term = dd_mul(dd_mul(term, t), dd_mul(ik, ik));
            hk = dd_add(hk, ik);
            i0 = dd_add(i0, term);
            sh = dd_add(sh, dd_mul(term, hk));
            if (std::fabs(term.hi) < 1e-34 * std::fabs(i0.hi)) break;
        }
        return dd_add(dd_mul(dd_neg(ell), i0), sh);
    }

    // nu == 1
    dd s1 = dd(1.0);  // sum t^k/(k!(k+1)!)
    dd s1h = dd(1.0); // sum (H_k + H_{k+1}) t^k/(k!(k+1)!); the k=0 term is H_0+H_1 = 1
    dd term = dd(1.0);
    dd hsum = dd(1.0); // H_k + H_{k+1}
    for (int k = 1; k <= kMaxSeriesTerms; ++k) {
        term = dd_mul(dd_mul(term, t), rc.inv_k_k1[static_cast<std::size_t>(k)]);
        hsum = dd_add(hsum, dd_add(rc.inv_k[static_cast<std::size_t>(k)],
                                   rc.inv_k[static_cast<std::size_t>(k + 1)]));
        s1 = dd_add(s1, term);
        s1h = dd_add(s1h, dd_mul(term, hsum));
        if (std::fabs(term.hi) < 1e-34 * std::fabs(s1.hi)) break;
    }
    dd i1 = dd_mul(s1, x * 0.5);
    dd out = dd_div(dd(1.0), dd(x));
    out = dd_add(out, dd_mul(ell, i1));
    out = dd_sub(out, dd_mul(s1h, x * 0.25));
    return out;
}

// Asymptotic expansion, stopped at the smallest term:
//   K_nu(x) ~ sqrt(pi/(2x)) e^{-x} sum a_k,  a_k = a_{k-1} (4nu^2-(2k-1)^2)/(8kx).
double asymptotic_k(int nu, double x) {
    long double sum = 1.0L, a = 1.0L;
    long double fournu2 = 4.0L * nu * nu;
    for (int k = 1; k <= 40; ++k) {
        long double next = a * (fournu2 - (2.0L * k - 1) * (2.0L * k - 1)) / (8.0L * k * x);
        if (fabsl(next) >= fabsl(a)) break;
        a = next;
        sum += a;
        if (fabsl(a) < 1e-20L * fabsl(sum)) break;
    }
    long double lx = static_cast<long double>(x);
    if (lx > 11000.0L) return 0.0; // below the smallest positive long double after scaling
    long double pref = sqrtl(static_cast<long double>(std::numbers::pi) / (2.0L * lx)) * expl(-lx);
    return static_cast<double>(pref * sum);
}

} // namespace

dd bessel_k_dd(int nu, double x) {
    if (nu != 0 && nu != 1) throw InvalidInputError("bessel_k: nu must be 0 or 1");
    if (!(x > 0.0)) throw InvalidInputError("bessel_k: x must be positive");
    if (x >= bessel_series_cut)
        throw InternalCheckError("bessel_k_dd: argument beyond the series branch");
    return series_k_dd(nu, x);
}

double bessel_k(int nu, double x) {
    if (nu != 0 && nu != 1) throw InvalidInputError("bessel_k: nu must be 0 or 1");
    if (!(x > 0.0)) throw InvalidInputError("bessel_k: x must be positive");
    if (x < bessel_series_cut) return series_k_dd(nu, x).to_double();
    return asymptotic_k(nu, x);
}

} // namespace paraspin
