#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "paraspin/checked_int.hpp"

namespace paraspin {

// Primes up to and including `bound`, ascending.
std::vector<i64> primes_upto(i64 bound);

// Smallest-prime-factor sieve.  Drives multiplicative fills (Dirichlet
// coefficients, character tables) and integer factorization up to the sieve
// bound.
class SpfSieve {
  public:
    explicit SpfSieve(i64 bound);

    i64 bound() const { return static_cast<i64>(spf_.size()) - 1; }
    i64 spf(i64 n) const { return spf_[static_cast<std::size_t>(n)]; }
    bool is_prime(i64 n) const { return n >= 2 && spf_[static_cast<std::size_t>(n)] == n; }

    // Prime factorization (prime, exponent), primes ascending.  n must be in
    // [1, bound].
    std::vector<std::pair<i64, int>> factor(i64 n) const;

    // Number of ways to write n as an ordered product of four positive
    // integers; multiplicative with d4(q^e) = C(e+3,3).  Used by rigorous
    // tail bounds on degree-4 Dirichlet series.
    i64 d4(i64 n) const;

  private:
    std::vector<std::int32_t> spf_;
};

// Deterministic primality test for 64-bit inputs (trial division is enough
// for the sizes handled here; levels are < 1000 and sieve-free callers stay
// below 1e10).
bool is_prime_i64(i64 n);

} // namespace paraspin
