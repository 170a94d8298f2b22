#include "paraspin/lseries.hpp"

#include <cmath>
#include <numbers>

#include "paraspin/errors.hpp"
#include "paraspin/primes.hpp"

namespace paraspin {

EulerFactor good_euler_factor(i64 lambda_q, i64 lambda_q2, i64 q) {
    EulerFactor ef;
    ef.q = q;
    i64 c2 = checked_mul64(lambda_q, lambda_q) - lambda_q2 - 1;
    ef.coeffs = {1, -lambda_q, c2, -checked_mul64(lambda_q, q), checked_mul64(q, q)};
    return ef;
}

EulerFactor truncated_euler_factor(i64 lambda_q, i64 q) {
    return EulerFactor{q, {1, -lambda_q}};
}

EulerFactor bad_euler_factor(int al_sign, i64 lambda_p, i64 p) {
    if (al_sign != 1 && al_sign != -1)
        throw InvalidInputError("bad_euler_factor: sign must be +1 or -1");
    i64 e = al_sign;
    // (1 + eps X)(1 - lambda X + p X^2)
    return EulerFactor{p, {1, e - lambda_p, p - checked_mul64(e, lambda_p), checked_mul64(e, p)}};
}

LSeriesCoefficients dirichlet_expansion(const std::map<i64, EulerFactor>& factors, i64 n_max) {
    if (n_max < 1) throw InvalidInputError("dirichlet_expansion: n_max must be >= 1");
    SpfSieve sieve(n_max);

    LSeriesCoefficients out;
    out.n_max = n_max;
    out.a.assign(static_cast<std::size_t>(n_max) + 1, 0);
    out.a[1] = 1;

    // Prime-power values by the local recurrence
    //   a(q^j) = - sum_{i=1..deg} c_i a(q^{j-i}),
    // then a multiplicative fill driven by the smallest-prime-factor sieve.
    std::vector<i128> power_value(static_cast<std::size_t>(n_max) + 1, 0);
    for (i64 q = 2; q <= n_max; ++q) {
        if (!sieve.is_prime(q)) continue;
        auto it = factors.find(q);
        if (it == factors.end())
            throw InvalidInputError("dirichlet_expansion: no Euler factor supplied for prime " +
                                    std::to_string(q));
        const auto& c = it->second.coeffs;
        if (c.empty() || c[0] != 1)
            throw InvalidInputError("dirichlet_expansion: factor at " + std::to_string(q) +
                                    " must have constant term 1");
        std::vector<i128> ppow;
        ppow.push_back(1);
        for (i128 m = q; m <= n_max; m = checked_mul(m, q)) {
            std::size_t j = ppow.size();
            i128 acc = 0;
            for (std::size_t i = 1; i < c.size() && i <= j; ++i)
                acc = checked_sub(acc, checked_mul(i128(c[i]), ppow[j - i]));
            ppow.push_back(acc);
            i64 idx = narrow_to_i64(m);
            power_value[static_cast<std::size_t>(idx)] = acc;
            out.a[static_cast<std::size_t>(idx)] = acc;
            if (m > n_max / q) break;
        }
    }
    for (i64 n = 2; n <= n_max; ++n) {
        i64 q = sieve.spf(n);
        i64 m = n, qe = 1;
        while (m % q == 0) { m /= q; qe *= q; }
        if (m == 1) continue; // prime power, already set
        out.a[static_cast<std::size_t>(n)] =
            checked_mul(power_value[static_cast<std::size_t>(qe)], out.a[static_cast<std::size_t>(m)]);
    }
    return out;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 1) return true;
    if (d == 0) return false;
    auto squarefree = [](i64 n) {
        if (n < 0) n = -n;
        for (i64 k = 2; k * k <= n; ++k)
            if (n % (k * k) == 0) return false;
        return true;
    };
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r == 0) {
        i64 m = d / 4;
        i64 rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

namespace {

// Kronecker symbol (a|n) for arbitrary a and n >= 1, iterative with the
// quadratic-reciprocity sign applied before each swap.
int kron_general(i64 a, i64 n) {
    if (n <= 0) throw InvalidInputError("kronecker: n must be positive");
    int result = 1;
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        static const int table8[8] = {0, 1, 0, -1, 0, -1, 0, 1}; // (2|a) by a mod 8
        while (n % 2 == 0) {
            n /= 2;
            result *= table8[((a % 8) + 8) % 8];
        }
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        i64 t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? result : 0;
}

} // namespace

int kronecker_symbol(i64 d, i64 n) {
    if (!is_fundamental_discriminant(d))
        throw InvalidInputError("kronecker_symbol: " + std::to_string(d) +
                                " is not a fundamental discriminant");
    if (n < 1) throw InvalidInputError("kronecker_symbol: n must be >= 1");
    if (d == 1) return 1;
    // (D|n) for negative fundamental D: multiplicativity in n with
    // (D|2) from D mod 8 and sign handled by the general routine on |..|.
    if (n % 2 == 0 && d % 2 == 0) return 0;
    return kron_general(d, n);
}

std::vector<signed char> character_table(i64 d, i64 n_max) {
    SpfSieve sieve(n_max);
    std::vector<signed char> chi(static_cast<std::size_t>(n_max) + 1, 0);
    chi[1] = 1;
    std::vector<signed char> at_prime(static_cast<std::size_t>(n_max) + 1, 0);
    for (i64 n = 2; n <= n_max; ++n) {
        i64 q = sieve.spf(n);
        if (n == q) {
            at_prime[static_cast<std::size_t>(q)] =
                static_cast<signed char>(kronecker_symbol(d, q));
            chi[static_cast<std::size_t>(n)] = at_prime[static_cast<std::size_t>(q)];
        } else {
            chi[static_cast<std::size_t>(n)] =
                static_cast<signed char>(at_prime[static_cast<std::size_t>(q)] *
                                         chi[static_cast<std::size_t>(n / q)]);
        }
    }
    return chi;
}

LSeriesCoefficients twist(const LSeriesCoefficients& coeffs, i64 d) {
    if (!is_fundamental_discriminant(d))
        throw InvalidInputError("twist: discriminant must be fundamental");
    if (coeffs.level > 0 && d % coeffs.level == 0)
        throw InvalidInputError("twist: discriminant shares a factor with the level " +
                                std::to_string(coeffs.level) +
                                "; twists at the level are outside the verified range");
    LSeriesCoefficients out;
    out.level = coeffs.level;
    out.n_max = coeffs.n_max;
    out.a.assign(coeffs.a.size(), 0);
    auto chi = character_table(d, coeffs.n_max);
    for (i64 n = 1; n <= coeffs.n_max; ++n)
        out.a[static_cast<std::size_t>(n)] =
            chi[static_cast<std::size_t>(n)] * coeffs.a[static_cast<std::size_t>(n)];
    return out;
}

SelbergData selberg_data(i64 p, i64 d, int al_sign) {
    if (!is_prime_i64(p)) throw InvalidInputError("selberg_data: level must be prime");
    if (al_sign != 1 && al_sign != -1)
        throw InvalidInputError("selberg_data: sign must be +1 or -1");
    if (!is_fundamental_discriminant(d))
        throw InvalidInputError("selberg_data: discriminant must be fundamental");
    SelbergData sd;
    sd.gamma_kind = GammaKind::Degree4ParamodularWt2;
    const double pi = std::numbers::pi;
    if (d == 1) {
        sd.cond_q = std::sqrt(static_cast<double>(p)) / (4.0 * pi * pi);
        sd.sign = al_sign;
        return sd;
    }
    if (d % p == 0)
        throw InvalidInputError("selberg_data: discriminant divisible by the level is outside "
                                "the verified range");
    // The twisted completed function has conductor p D^4, so the
    // functional-equation scale is sqrt(p) * D^2 / (4 pi^2).
    double dd = static_cast<double>(d);
    sd.cond_q = std::sqrt(static_cast<double>(p)) * dd * dd / (4.0 * pi * pi);
    sd.sign = al_sign * kronecker_symbol(d, p);
    return sd;
}

SelbergData selberg_data_degree2(i64 conductor, i64 d, int sign) {
    if (conductor < 1) throw InvalidInputError("selberg_data_degree2: conductor must be positive");
    if (!is_fundamental_discriminant(d))
        throw InvalidInputError("selberg_data_degree2: discriminant must be fundamental");
    if (sign != 1 && sign != -1)
        throw InvalidInputError("selberg_data_degree2: sign must be +1 or -1");
    SelbergData sd;
    sd.gamma_kind = GammaKind::Degree2EllipticWt2;
    double add = std::abs(static_cast<double>(d));
    sd.cond_q = std::sqrt(static_cast<double>(conductor)) * add / (2.0 * std::numbers::pi);
    sd.sign = sign;
    return sd;
}

} // namespace paraspin
