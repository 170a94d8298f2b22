#include "paraspin/dd.hpp"

#include <cmath>

#include "paraspin/errors.hpp"

namespace paraspin {

dd dd_exp(const dd& a) {
    // exp overflows double far beyond any argument the Bessel kernels feed
    // in; keep a hard wall so misuse fails loudly.
    if (a.hi > 700.0) throw InternalCheckError("dd_exp argument too large");
    if (a.hi < -745.0) return dd(0.0);

    const dd ln2 = dd_ln2();
    int k = static_cast<int>(std::llround(a.hi / ln2.hi));
    dd r = dd_sub(a, dd_mul(ln2, static_cast<double>(k)));

    // Taylor sum of exp(r) for |r| <= ln2/2; terms decay by >= 0.35 per step,
    // so ~60 terms reach 1e-35.
    dd sum = dd(1.0);
    dd term = dd(1.0);
    for (int n = 1; n < 80; ++n) {
        term = dd_div(dd_mul(term, r), static_cast<double>(n));
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    return dd(std::ldexp(sum.hi, k), std::ldexp(sum.lo, k));
}

dd dd_log(const dd& a) {
    if (!(a.hi > 0.0)) throw InvalidInputError("dd_log argument must be positive");
    dd y = dd(std::log(a.to_double()));
    // Newton on f(y) = exp(y) - a: y <- y + a*exp(-y) - 1.  Two rounds take
    // the double seed to full dd accuracy.
    for (int i = 0; i < 2; ++i) {
        dd e = dd_exp(dd_neg(y));
        y = dd_add(y, dd_sub(dd_mul(a, e), dd(1.0)));
    }
    return y;
}

} // namespace paraspin
