#include "paraspin/quadforms.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/lseries.hpp"

#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

using namespace paraspin;

TEST_CASE("class numbers and unit counts of small discriminants") {
    struct Known { i64 d, h, w; };
    const Known knowns[] = {
        {-3, 1, 6},  {-4, 1, 4},  {-7, 1, 2},   {-8, 1, 2},   {-11, 1, 2},
        {-15, 2, 2}, {-20, 2, 2}, {-23, 3, 2},  {-24, 2, 2},  {-47, 5, 2},
        {-84, 4, 2}, {-95, 8, 2}, {-163, 1, 2}, {-191, 13, 2}, {-199, 9, 2},
    };
    for (const Known& k : knowns) {
        ClassData cd = class_data(k.d);
        CAPTURE(k.d);
        CHECK(cd.h == k.h);
        CHECK(cd.w == k.w);
        CHECK(static_cast<i64>(reduced_forms(k.d).size()) == k.h);
    }
    CHECK_THROWS_AS(class_data(-6), InvalidInputError);  // not fundamental
    CHECK_THROWS_AS(class_data(-3 * 4), InvalidInputError);
}

TEST_CASE("reduced forms satisfy the reduction inequalities") {
    for (i64 d : {-3, -4, -23, -47, -191, -199}) {
        for (const auto& [a, b, c] : reduced_forms(d)) {
            CAPTURE(d);
            CHECK(b * b - 4 * a * c == d);
            CHECK(a >= 1);
            CHECK(std::abs(b) <= a);
            CHECK(a <= c);
            if (std::abs(b) == a || a == c) CHECK(b >= 0);
        }
    }
}

TEST_CASE("square-root classes mod 4p control solvability") {
    // (D|277) = +1 exactly for the listed discriminants; s is then 2 (the
    // two residues +-beta), and 0 on the complementary classes.
    for (i64 d : {-3, -4, -7, -19, -23, -40}) {
        CAPTURE(d);
        CHECK(kronecker_symbol(d, 277) == 1);
        CHECK(sqrt_class_count(d, 277) == 2);
        CHECK(solvable(d, 277));
    }
    for (i64 d : {-8, -11, -15, -20, -24}) {
        CAPTURE(d);
        CHECK(kronecker_symbol(d, 277) == -1);
        CHECK(sqrt_class_count(d, 277) == 0);
        CHECK_FALSE(solvable(d, 277));
    }
}

TEST_CASE("representation search is exhaustive") {
    auto sols = represent(1, 0, 1, 25); // x^2 + y^2 = 25
    CHECK(sols.size() == 12);
    auto none = represent(1, 0, 1, 3);
    CHECK(none.empty());
    auto one = represent(2, 1, 3, 2); // 2x^2 + xy + 3y^2 = 2: (x,y) = (+-1, 0)
    CHECK(one.size() == 2);
    CHECK_THROWS_AS(represent(1, 5, 1, 10), InvalidInputError); // indefinite
}

TEST_CASE("stabilizer orders and the weighted orbit count") {
    // level 7, D = -3: single orbit through (1, 5, 1) with the full
    // stabilizer of order 6 (the extended group sees all of it).
    OrbitDecomposition od = gamma0p_orbits(-3, 7);
    CHECK(od.h == 1);
    CHECK(od.w == 6);
    CHECK(od.s == 2);
    REQUIRE(od.reps.size() == 1);
    CHECK(od.reps[0].epsilon == 6);
    CHECK(od.stabilizer_sum() == Rational(1, 6));
    CHECK(epsilon_t(od.reps[0].form) == 6);

    // stabilizers always contain +-identity
    for (i64 d : {-15, -20, -23, -24}) {
        if (!solvable(d, 13)) continue;
        for (const auto& rep : gamma0p_orbits(d, 13).reps) {
            CAPTURE(d);
            CHECK(rep.epsilon % 2 == 0);
            CHECK(rep.form.disc() == d);
        }
    }
}

TEST_CASE("weighted orbit counts equal h/w across levels") {
    for (i64 p : {7, 13, 277}) {
        for (i64 d = -3; d >= -60; --d) {
            if (!is_fundamental_discriminant(d) || d % p == 0) continue;
            if (!solvable(d, p)) continue;
            OrbitDecomposition od = gamma0p_orbits(d, p);
            ClassData cd = class_data(d);
            CAPTURE(p);
            CAPTURE(d);
            CHECK(od.stabilizer_sum() == Rational(cd.h, cd.w));
        }
    }
}

TEST_CASE("orbit representatives are pairwise inequivalent") {
    OrbitDecomposition od = gamma0p_orbits(-23, 13); // h = 3: several orbits
    REQUIRE(od.reps.size() >= 2);
    for (std::size_t i = 0; i < od.reps.size(); ++i)
        for (std::size_t j = i + 1; j < od.reps.size(); ++j)
            CHECK_FALSE(is_equivalent(od.reps[i].form, od.reps[j].form).has_value());
    // an equivalence the search must find: a form and its b -> -b mirror
    BinaryForm t = od.reps[0].form;
    BinaryForm mirror{t.level, t.a0, -t.b, t.c};
    auto u = is_equivalent(t, mirror);
    REQUIRE(u.has_value());
    CHECK(std::abs(u->det()) == 1);
    CHECK(u->m10 % t.level == 0);
}

TEST_CASE("coefficient averages through synthetic orbit tables") {
    const i64 p = 277, d = -19;
    OrbitDecomposition od = gamma0p_orbits(d, p);
    REQUIRE(!od.reps.empty());

    // all mass on the first representative: A(D) = value / epsilon_0
    FourierCoefficientTable tbl;
    tbl.level = p;
    for (const auto& rep : od.reps) tbl.entries[rep.form.key()] = Rational(0);
    tbl.entries[od.reps[0].form.key()] = Rational(od.reps[0].epsilon * -2);
    CHECK(average_ad(tbl, d, p) == Rational(-2));

    // missing orbit: the error lists the representative that needs a value
    FourierCoefficientTable missing;
    missing.level = p;
    CHECK_THROWS_AS(average_ad(missing, d, p), InvalidInputError);

    // non-constant on an orbit: two equivalent keys with different values
    BinaryForm t0 = od.reps[0].form;
    BinaryForm mirror{p, t0.a0, -t0.b, t0.c};
    if (mirror.key() != t0.key()) {
        FourierCoefficientTable bad = tbl;
        bad.entries[mirror.key()] = Rational(12345);
        CHECK_THROWS_AS(average_ad(bad, d, p), InvalidInputError);
    }
}

TEST_CASE("twin antisymmetry forces vanishing averages") {
    // Synthetic minus-space table: values antisymmetric under the twin
    // involution (a0, b, c) -> (c, -b, a0).
    const i64 p = 11;
    for (i64 d : {-7, -19, -35, -40}) {
        if (!solvable(d, p)) continue;
        OrbitDecomposition od = gamma0p_orbits(d, p);
        FourierCoefficientTable tbl;
        tbl.level = p;
        TwinPairing twin;
        // assign orbit values so that a(twin(T)) = -a(T)
        std::vector<Rational> vals(od.reps.size());
        std::vector<bool> assigned(od.reps.size(), false);
        i64 fresh = 1;
        for (std::size_t i = 0; i < od.reps.size(); ++i) {
            if (assigned[i]) continue;
            const BinaryForm& t = od.reps[i].form;
            BinaryForm tw{p, t.c, -t.b, t.a0};
            bool self = is_equivalent(t, tw).has_value();
            if (self) {
                vals[i] = Rational(0);
                assigned[i] = true;
                continue;
            }
            for (std::size_t j = 0; j < od.reps.size(); ++j) {
                if (j == i || assigned[j]) continue;
                if (is_equivalent(od.reps[j].form, tw).has_value()) {
                    vals[i] = Rational(fresh);
                    vals[j] = Rational(-fresh);
                    assigned[i] = assigned[j] = true;
                    ++fresh;
                    break;
                }
            }
            REQUIRE(assigned[i]); // the twin orbit must appear somewhere
        }
        for (std::size_t i = 0; i < od.reps.size(); ++i) {
            const BinaryForm& t = od.reps[i].form;
            BinaryForm tw{p, t.c, -t.b, t.a0};
            tbl.entries[t.key()] = vals[i];
            tbl.entries[tw.key()] = -vals[i];
            twin[t.key()] = tw.key();
            twin[tw.key()] = t.key();
        }
        CAPTURE(d);
        CHECK(minus_space_vanishing_check(tbl, twin, d, p) == "");
        CHECK(average_ad(tbl, d, p) == Rational(0));

        // corrupt one value: the check must report (either a diagnostic or
        // an orbit-constancy error), never pass silently
        if (!od.reps.empty() && !vals[0].is_zero()) {
            FourierCoefficientTable bad = tbl;
            bad.entries[od.reps[0].form.key()] += Rational(1);
            bool detected = false;
            try {
                detected = !minus_space_vanishing_check(bad, twin, d, p).empty();
            } catch (const InvalidInputError&) {
                detected = true;
            }
            CHECK(detected);
        }
    }
}

TEST_CASE("coefficient and twin CSV loading") {
    const std::string cpath = "build/test_coeffs.csv";
    {
        std::ofstream out(cpath);
        out << "a0,b,c,value\n";
        out << "1,5,1,3\n";
        out << "1,-5,1,-5/2\n";
    }
    FourierCoefficientTable tbl = load_coefficient_csv(cpath, 7);
    CHECK(tbl.level == 7);
    REQUIRE(tbl.entries.size() == 2);
    CHECK(tbl.entries.at({1, 5, 1}) == Rational(3));
    CHECK(tbl.entries.at({1, -5, 1}) == Rational(-5, 2));
    std::remove(cpath.c_str());

    {
        std::ofstream out(cpath);
        out << "1,5,1,not-a-number\n";
    }
    CHECK_THROWS_AS(load_coefficient_csv(cpath, 7), InvalidInputError);
    std::remove(cpath.c_str());
    CHECK_THROWS_AS(load_coefficient_csv("build/missing.csv", 7), FixtureError);

    const std::string tpath = "build/test_twin.csv";
    {
        std::ofstream out(tpath);
        out << "a0,b,c,ta0,tb,tc\n";
        out << "1,5,1,1,-5,1\n";
    }
    TwinPairing twin = load_twin_csv(tpath);
    REQUIRE(twin.size() == 1);
    CHECK(twin.at({1, 5, 1}) == std::array<i64, 3>{1, -5, 1});
    std::remove(tpath.c_str());

    {
        std::ofstream out(tpath);
        out << "1,5,1,1,-5,1\n";
        out << "1,5,1,2,3,4\n"; // duplicate key
    }
    CHECK_THROWS_AS(load_twin_csv(tpath), InvalidInputError);
    std::remove(tpath.c_str());
}
