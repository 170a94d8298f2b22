#include "paraspin/gritsenko.hpp"
#include "paraspin/analytic.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/lseries.hpp"
#include "paraspin/quadforms.hpp"

#include "doctest.h"
#include "oracle_helpers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <utility>

using namespace paraspin;

TEST_CASE("jacobi tables resolve coefficients through the discriminant") {
    // c(n, r) depends on (n, r) only through r^2 - 4np.
    JacobiCoefficientTable jt = JacobiCoefficientTable::from_generator(
        11, [](i64 disc) { return disc % 7 - 3; });
    CHECK(jt.index() == 11);
    CHECK(jt.coefficient(1, 1) == jt.coefficient(1, -1));
    CHECK(jt.coefficient(1, 3) == (9 - 44) % 7 - 3);

    // table mode: exact keys plus discriminant-scan fallback
    std::map<std::pair<i64, i64>, i64> entries;
    entries[{1, 1}] = 5;  // disc 1 - 44 = -43
    entries[{1, 3}] = -2; // disc 9 - 44 = -35
    JacobiCoefficientTable table = JacobiCoefficientTable::from_entries(11, entries);
    CHECK(table.coefficient(1, 1) == 5);
    CHECK(table.coefficient(1, -1) == 5);  // r-sign invariance
    CHECK(table.coefficient(9, 19) == -2); // 361 - 396 = -35: resolved by disc scan
    CHECK_THROWS_AS(table.coefficient(3, 1), FixtureError); // disc -131 unknown

    // inconsistent entries on one discriminant must be rejected
    std::map<std::pair<i64, i64>, i64> bad;
    bad[{1, 1}] = 5;
    bad[{1, -1}] = 7; // same discriminant as (1, 1), different value
    CHECK_THROWS_AS(JacobiCoefficientTable::from_entries(11, bad), FixtureError);
    std::map<std::pair<i64, i64>, i64> neg;
    neg[{0, 1}] = 1; // n must be >= 1
    CHECK_THROWS_AS(JacobiCoefficientTable::from_entries(11, neg), InvalidInputError);
}

TEST_CASE("cstar picks the residue class of the discriminant") {
    JacobiCoefficientTable jt = make_constant_cstar(277, 5);
    CHECK(jt.cstar(-3) == 5);   // (-3|277) = +1: residues exist
    CHECK(jt.cstar(-4) == 5);
    CHECK(jt.cstar(-8) == 0);   // (-8|277) = -1: no residue
    CHECK(jt.cstar(-11) == 0);

    JacobiCoefficientTable r1 = make_pseudorandom_cstar(277, 42);
    JacobiCoefficientTable r2 = make_pseudorandom_cstar(277, 42);
    JacobiCoefficientTable r3 = make_pseudorandom_cstar(277, 43);
    bool differs = false;
    for (i64 d = -3; d >= -80; --d) {
        if (!is_fundamental_discriminant(d) || !solvable(d, 277)) continue;
        CHECK(r1.cstar(d) == r2.cstar(d)); // deterministic
        CHECK(r1.cstar(d) != 0);
        CHECK(std::abs(r1.cstar(d)) <= 9);
        if (r1.cstar(d) != r3.cstar(d)) differs = true;
    }
    CHECK(differs); // different seeds give different tables
}

TEST_CASE("lift coefficients sum over the divisor structure") {
    JacobiCoefficientTable one = make_constant_cstar(11, 1);
    // gcd(n, r, m) = 1: single term
    CHECK(lift_coefficient(one, 1, 1, 1, 2) == 1);
    // T with gcd 2: delta = 1 contributes c(4, 2), delta = 2 contributes
    // 2 * c(1, 1); the constant table gives 1 for both.
    CHECK(lift_coefficient(one, 2, 2, 2, 2) == 1 + 2 * 1);
    // weight enters as delta^{k-1}
    CHECK(lift_coefficient(one, 2, 2, 2, 4) == 1 + 8 * 1);

    CHECK_THROWS_AS(lift_coefficient(one, 0, 1, 1, 2), InvalidInputError);
    CHECK_THROWS_AS(lift_coefficient(one, 1, 7, 1, 2), InvalidInputError); // disc >= 0
}

TEST_CASE("lift averages collapse classwise") {
    for (i64 p : {277, 587}) {
        JacobiCoefficientTable con = make_constant_cstar(p, 3);
        JacobiCoefficientTable rnd = make_pseudorandom_cstar(p, 7);
        for (i64 d = -3; d >= -50; --d) {
            if (!is_fundamental_discriminant(d)) continue;
            CAPTURE(p);
            CAPTURE(d);
            AverageIdentityResult rc = verify_lift_average(con, d, p);
            CHECK(rc.equal);
            ClassData cd = class_data(d);
            if (solvable(d, p)) {
                CHECK(rc.rhs == Rational(cd.h, cd.w) * Rational(3));
            } else {
                CHECK(rc.rhs == Rational(0));
            }
            AverageIdentityResult rr = verify_lift_average(rnd, d, p);
            CHECK(rr.equal);
        }
    }
    JacobiCoefficientTable wrong = make_constant_cstar(13, 1);
    CHECK_THROWS_AS(verify_lift_average(wrong, -3, 277), InvalidInputError);
}

TEST_CASE("jacobi CSV round-trip and consistency validation") {
    const std::string path = "build/test_jacobi.csv";
    {
        std::ofstream out(path);
        out << "n,r,c\n";
        out << "1,1,5\n";
        out << "1,3,-2\n";
        out << "2,1,4\n";
    }
    JacobiCoefficientTable jt = load_jacobi_csv(path, 11);
    CHECK(jt.coefficient(1, 1) == 5);
    CHECK(jt.coefficient(1, -3) == -2);
    CHECK(jt.coefficient(2, 1) == 4);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "1,1,5\n";
        out << "1,-1,6\n"; // same discriminant, different value
    }
    CHECK_THROWS_AS(load_jacobi_csv(path, 11), FixtureError);
    std::remove(path.c_str());
}

TEST_CASE("lift central values factor through the degree-2 engine") {
    CHECK(lift_prefactor(-4) == doctest::Approx(M_PI / 8.0).epsilon(1e-14));
    for (i64 d : {-3, -7, -8, -20}) {
        auto [l0, l1] = dirichlet_class_number_values(d);
        CAPTURE(d);
        CHECK(lift_prefactor(d) == doctest::Approx(l0.to_double() * l1).epsilon(1e-14));
    }

    // Plumbing identity on a synthetic lift whose degree-2 part is the
    // conductor-11 newform: the value equals prefactor times the twisted
    // degree-2 central value with the composed sign.
    LSeriesCoefficients e11 = oracle::elliptic_11a1_coefficients(4000);
    const i64 d = -3; // (-3|11) = -1, root number +1, odd twist: sign +1
    double lifted = lift_central_value(e11, +1, d, 11, 1e-6);
    int sign = +1 * (-1) * kronecker_symbol(d, 11);
    CHECK(sign == +1);
    CentralValueResult direct =
        central_value(twist(e11, d), selberg_data_degree2(11, d, sign), 1e-6);
    CHECK(lifted == doctest::Approx(lift_prefactor(d) * direct.value).epsilon(1e-14));
    CHECK(lifted > 0.0); // rank-zero twist: positive central value

    // sign -1 twists vanish exactly
    CHECK(lift_central_value(e11, +1, -7, 11, 1e-6) == 0.0); // (-7|11) = +1: sign -1
    CHECK_THROWS_AS(lift_central_value(e11, +2, -3, 11, 1e-6), InvalidInputError);
    CHECK_THROWS_AS(lift_central_value(e11, +1, -3, 13, 1e-6), InvalidInputError); // level mismatch
}
