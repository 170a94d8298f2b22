#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "paraspin/checked_int.hpp"
#include "paraspin/lseries.hpp"
#include "paraspin/rational.hpp"

namespace paraspin {

// Fourier coefficients c(n, r) of a Jacobi form of weight 2 and index p,
// with the invariances c(n, r) = c(n, -r) and c depending on (n, r) only
// through r^2 - 4np.  Either backed by an explicit table (CSV fixture) or by
// a synthetic discriminant-indexed generator used to exercise the lift
// machinery end to end.
class JacobiCoefficientTable {
  public:
    static JacobiCoefficientTable from_entries(i64 index_p,
                                               std::map<std::pair<i64, i64>, i64> entries);
    // c(n, r) = gen(r^2 - 4np); consistent by construction.
    static JacobiCoefficientTable from_generator(i64 index_p, std::function<i64(i64)> gen);

    i64 index() const { return index_p_; }

    // c(n, r) for n >= 1; table mode errors on a key it cannot resolve.
    i64 coefficient(i64 n, i64 r) const;

    // c*(D) = c((r^2 - D)/(4p), r) for any residue r with r^2 = D mod 4p;
    // 0 when no such residue exists.
    i64 cstar(i64 d) const;

  private:
    i64 index_p_ = 0;
    std::map<std::pair<i64, i64>, i64> entries_; // keys normalized to r >= 0
    std::function<i64(i64)> generator_;
};

// CSV rows `n,r,c`; validates the discriminant-dependence invariant across
// all loaded entries.
JacobiCoefficientTable load_jacobi_csv(const std::string& path, i64 index_p);

// Constant generator c*(D) = value, and a deterministic pseudorandom one
// (splitmix-style hash of D and seed, values in [-9, 9], never 0).
JacobiCoefficientTable make_constant_cstar(i64 index_p, i64 value);
JacobiCoefficientTable make_pseudorandom_cstar(i64 index_p, std::uint64_t seed);

// Fourier coefficient of the lift at T = [[p m, r/2], [r/2, n]], weight k:
//   a(T) = sum over delta | gcd(n, r, m) of delta^{k-1} c(m n / delta^2, r / delta).
i64 lift_coefficient(const JacobiCoefficientTable& jt, i64 n, i64 r, i64 m, int k);

struct AverageIdentityResult {
    Rational lhs; // A(D) computed through the orbit machinery
    Rational rhs; // (h/w) * c*(D)
    bool equal = false;
};

// For lifts the coefficient average collapses classwise:
//   A(D) = (h(D)/w(D)) * c*(D).
// Computes both sides independently -- the left through gamma0p_orbits,
// lift_coefficient and the stabilizer weights, the right from the class
// number -- and compares exactly.
AverageIdentityResult verify_lift_average(const JacobiCoefficientTable& jt, i64 d, i64 p);

// Scalar prefactor L(0, chi_D) * L(1, chi_D) = 4 pi h^2 / (w^2 sqrt(|D|))
// appearing in the closed form of twisted lift central values.
double lift_prefactor(i64 d);

// Twisted central value of the degree-4 L-function of a lift, through its
// factorization into Dirichlet and degree-2 pieces:
//   L(lift, center, chi_D) = L(0, chi_D) * L(1, chi_D) * L(newform x chi_D, center).
// `newform` carries the Dirichlet coefficients of the weight-2 newform of
// conductor p underlying the lift; root_number is its functional-equation
// sign.  The twisted degree-2 sign is root_number * (D | -p).
double lift_central_value(const LSeriesCoefficients& newform, int root_number, i64 d, i64 p,
                          double tol = 1e-8);

} // namespace paraspin
