#include "paraspin/primes.hpp"

#include "paraspin/errors.hpp"

namespace paraspin {

std::vector<i64> primes_upto(i64 bound) {
    std::vector<i64> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (i64 p = 2; p <= bound; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        out.push_back(p);
        for (i64 m = p * p; m <= bound; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    return out;
}

SpfSieve::SpfSieve(i64 bound) {
    if (bound < 1) throw InvalidInputError("sieve bound must be positive");
    if (bound > INT32_MAX) throw InvalidInputError("sieve bound too large for 32-bit spf table");
    spf_.assign(static_cast<std::size_t>(bound) + 1, 0);
    for (i64 i = 2; i <= bound; ++i) {
        if (spf_[static_cast<std::size_t>(i)] == 0) {
            for (i64 m = i; m <= bound; m += i) {
                if (spf_[static_cast<std::size_t>(m)] == 0)
                    spf_[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(i);
            }
        }
    }
    spf_[1] = 1;
}

std::vector<std::pair<i64, int>> SpfSieve::factor(i64 n) const {
    if (n < 1 || n > bound()) throw InvalidInputError("factor: argument outside sieve range");
    std::vector<std::pair<i64, int>> out;
    while (n > 1) {
        i64 q = spf(n);
        int e = 0;
        while (n % q == 0) { n /= q; ++e; }
        out.emplace_back(q, e);
    }
    return out;
}

i64 SpfSieve::d4(i64 n) const {
    i64 r = 1;
    for (const auto& [q, e] : factor(n)) {
        (void)q;
        r *= static_cast<i64>(e + 1) * (e + 2) * (e + 3) / 6;
    }
    return r;
}

bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace paraspin
