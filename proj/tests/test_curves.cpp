#include "paraspin/curves.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/fixtures.hpp"
#include "paraspin/primes.hpp"

#include "doctest.h"
#include "oracle_helpers.hpp"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace paraspin;

namespace {

const std::map<std::string, CurveSpec>& all_curves() {
    static const std::map<std::string, CurveSpec> curves = load_curves(resolve_fixtures_dir());
    return curves;
}

// The model actually counted: substituted at 2 when the stored equation is
// non-minimal there, exactly as the pipeline does.
CurveSpec working_model(const CurveSpec& curve) {
    if (!is_good_at(curve, 2)) {
        auto repaired = two_adic_repair(curve);
        if (repaired) return *repaired;
    }
    return curve;
}

} // namespace

TEST_CASE("model validation rejects broken equations") {
    CurveSpec c = all_curves().at("277");
    CHECK_NOTHROW(c.validate());

    CurveSpec bad = c;
    bad.level = 10; // not prime
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    bad = c;
    bad.al_sign = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    bad = c;
    bad.f.assign(8, 1); // degree 7
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    bad = c;
    bad.f = {0, 0, 0, 0, 0, 0, 1}; // 4f + h^2 = 4x^6 + ... fine; kill squarefreeness
    bad.h = {0, 0, 0, 1};          // 4x^6 + x^6 = 5x^6, repeated root at 0
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    bad = c;
    bad.f = {1, 1}; // degree too small for genus 2
    bad.h = {};
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("point counts match brute force over small fields") {
    for (const auto& [key, curve] : all_curves()) {
        CAPTURE(key);
        const CurveSpec model = working_model(curve);
        for (i64 q : primes_upto(61)) {
            if (!is_good_at(model, q)) continue;
            CAPTURE(q);
            CHECK(count_points(model, q, 1) == oracle::brute_count(model, q, 1));
        }
        for (i64 q : {2, 3, 5, 7, 11, 13}) {
            if (!is_good_at(model, q)) continue;
            CAPTURE(q);
            CHECK(count_points(model, q, 2) == oracle::brute_count(model, q, 2));
        }
    }
}

TEST_CASE("reduction quality detection") {
    const CurveSpec& c277 = all_curves().at("277");
    CHECK_FALSE(is_good_at(c277, 277));
    for (i64 q : {2, 3, 5, 7, 11, 101}) CHECK(is_good_at(c277, q));

    const CurveSpec& plus = all_curves().at("587+");
    CHECK_FALSE(is_good_at(plus, 2)); // the stored equation is non-minimal at 2
    CHECK_FALSE(is_good_at(plus, 3)); // genuinely singular: every model is
    CHECK_FALSE(is_good_at(plus, 587));
    CHECK(is_good_at(plus, 5));
}

TEST_CASE("two-adic model substitution repairs the plus-space level-587 equation") {
    const CurveSpec& plus = all_curves().at("587+");
    auto repaired = two_adic_repair(plus);
    REQUIRE(repaired.has_value());
    CHECK(is_good_at(*repaired, 2));
    CHECK_FALSE(is_good_at(*repaired, 3)); // substitution cannot create good reduction at 3
    CHECK(repaired->level == plus.level);
    CHECK(repaired->al_sign == plus.al_sign);
    CHECK(repaired->lambda_p == plus.lambda_p);

    // Away from 2 the substituted model is the same curve: its branch
    // polynomial is the original one divided by 4 exactly.
    std::vector<i64> orig = branch_polynomial(plus);
    std::vector<i64> subst = branch_polynomial(*repaired);
    REQUIRE(orig.size() == subst.size());
    for (std::size_t i = 0; i < orig.size(); ++i) CHECK(orig[i] == 4 * subst[i]);

    // Counts over F_2 and F_4 pin the full factor at 2.
    CHECK(count_points(*repaired, 2, 1) == 4);
    CHECK(count_points(*repaired, 2, 2) == 10);
    auto [l2, l4] = hecke_from_counts(PointCounts{2, 4, 10});
    CHECK(l2 == -1);
    CHECK(l4 == -3);

    // Models that are already good at 2 do not get substituted.
    CHECK_FALSE(two_adic_repair(all_curves().at("277")).has_value());
}

TEST_CASE("hecke eigenvalues from point counts") {
    // lambda_q = 1 + q - N1; lambda_{q^2} = a(q^2) - 1 with
    // a(q^2) = 1 + q + q^2 - (1+q) N1 + (N1^2 - N2)/2.
    auto [lq, lq2] = hecke_from_counts(PointCounts{3, 2, 14});
    CHECK(lq == 1 + 3 - 2);
    CHECK(lq2 == (1 + 3 + 9 - 4 * 2 + (4 - 14) / 2) - 1);

    CHECK_THROWS_AS(hecke_from_counts(PointCounts{3, 2, -1}), InvalidInputError);
    // odd N1^2 - N2 cannot come from a genuine count
    CHECK_THROWS_AS(hecke_from_counts(PointCounts{3, 2, 13}), InternalCheckError);
}

TEST_CASE("count_points input validation") {
    const CurveSpec& c = all_curves().at("277");
    CHECK_THROWS_AS(count_points(c, 6, 1), InvalidInputError);   // not prime
    CHECK_THROWS_AS(count_points(c, 277, 1), InvalidInputError); // bad reduction
    CHECK_THROWS_AS(count_points(c, 3, 3), InvalidInputError);   // ext out of range
}

TEST_CASE("count cache round-trip") {
    std::vector<PointCounts> counts{{2, 4, 10}, {3, 2, 14}, {5, 8, -1}};
    std::string path = "build/test_counts_cache.csv";
    std::remove(path.c_str());
    save_counts_csv(path, counts);
    auto back = load_counts_csv(path);
    REQUIRE(back.size() == counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        CHECK(back[i].q == counts[i].q);
        CHECK(back[i].n1 == counts[i].n1);
        CHECK(back[i].n2 == counts[i].n2);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_counts_csv("build/definitely_missing.csv"), InvalidInputError);
}
