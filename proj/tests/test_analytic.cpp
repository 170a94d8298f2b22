#include "paraspin/analytic.hpp"
#include "paraspin/bessel.hpp"
#include "paraspin/errors.hpp"
#include "paraspin/lseries.hpp"

#include "doctest.h"
#include "oracle_helpers.hpp"

#include <cmath>
#include <vector>

using namespace paraspin;

TEST_CASE("modified Bessel K against frozen high-precision references") {
    // 30-digit references computed independently; frozen here.
    struct Ref { double x, k0, k1; };
    const Ref refs[] = {
        {0.0001, 9.32627191345027492, 9999.99950868640496},
        {0.01, 4.72124473016109497, 99.9738941182962476},
        {0.5, 0.924419071227665862, 1.65644112000330089},
        {1, 0.421024438240708333, 0.601907230197234575},
        {2, 0.113893872749533436, 0.139865881816522427},
        {5, 0.00369109833404259427, 0.00404461344545216421},
        {12, 2.2008253973114914e-6, 2.29075746476718782e-6},
        {15.9, 3.8794110173203394e-8, 3.99959705100752082e-8},
        {16.1, 3.15669421741596267e-8, 3.25329233250083702e-8},
        {30, 2.13247749646305637e-14, 2.16773200189154942e-14},
        {100, 4.65662822917590202e-45, 4.67985373563690929e-45},
        {700, 4.66977643168537688e-306, 4.67311079670796611e-306},
    };
    for (const Ref& r : refs) {
        CAPTURE(r.x);
        CHECK(bessel_k(0, r.x) == doctest::Approx(r.k0).epsilon(1e-12));
        CHECK(bessel_k(1, r.x) == doctest::Approx(r.k1).epsilon(1e-12));
    }
    // continuity across the series/asymptotic switchover; the window must be
    // tiny because d(ln K)/dx is near -1, so K itself moves by ~2 eps
    double below = bessel_k(1, bessel_series_cut - 1e-12);
    double above = bessel_k(1, bessel_series_cut + 1e-12);
    CHECK(std::abs(below - above) / above < 1e-10);
    CHECK(bessel_k(0, 12000.0) == 0.0); // underflow cutoff
    CHECK_THROWS_AS(bessel_k(2, 1.0), InvalidInputError);
    CHECK_THROWS_AS(bessel_k(0, -1.0), InvalidInputError);
}

TEST_CASE("smoothing weight equals its inverse Mellin transform") {
    // degree-4 weight H(x) = 2 sqrt(x) K_1(2 sqrt(x)); the contour oracle
    // integrates Gamma(1+w)^2 x^{-w} / w numerically instead.
    for (double x : {0.01, 0.1, 1.0, 10.0, 30.0}) {
        double direct = afe_weight(GammaKind::Degree4ParamodularWt2, x);
        double contour = oracle::contour_weight(GammaKind::Degree4ParamodularWt2, x);
        CAPTURE(x);
        CHECK(direct == doctest::Approx(contour).epsilon(1e-9));
    }
    // degree-2 weight is exp(-x); this also validates the oracle itself.
    for (double x : {0.05, 0.7, 1.0, 4.0, 12.0}) {
        double direct = afe_weight(GammaKind::Degree2EllipticWt2, x);
        double contour = oracle::contour_weight(GammaKind::Degree2EllipticWt2, x);
        CAPTURE(x);
        CHECK(direct == doctest::Approx(std::exp(-x)).epsilon(1e-14));
        CHECK(direct == doctest::Approx(contour).epsilon(1e-9));
    }
    CHECK(afe_weight(GammaKind::Degree4ParamodularWt2, 1.0) ==
          doctest::Approx(0.279731763633044855).epsilon(1e-14)); // 2 K_1(2)
    CHECK_THROWS_AS(afe_weight(GammaKind::Degree4ParamodularWt2, 0.0), InvalidInputError);
    CHECK_THROWS_AS(afe_weight(GammaKind::DirichletOdd, 1.0), InvalidInputError);
}

TEST_CASE("degree-2 engine reproduces the conductor-11 central value") {
    LSeriesCoefficients e11 = oracle::elliptic_11a1_coefficients(2000);
    // spot values of the newform coefficients
    CHECK(static_cast<i64>(e11.a[2]) == -2);
    CHECK(static_cast<i64>(e11.a[3]) == -1);
    CHECK(static_cast<i64>(e11.a[5]) == 1);
    CHECK(static_cast<i64>(e11.a[11]) == 1);
    CHECK(static_cast<i64>(e11.a[13]) == 4);
    CHECK(static_cast<i64>(e11.a[121]) == 1);
    CHECK(static_cast<i64>(e11.a[12]) == static_cast<i64>(e11.a[4]) * static_cast<i64>(e11.a[3]));

    CentralValueResult cv = central_value(e11, selberg_data_degree2(11, 1, +1), 1e-8);
    CHECK(cv.sign == +1);
    CHECK(cv.value == doctest::Approx(0.25384186085591068434).epsilon(1e-10));
    CHECK(cv.tail_bound < 1e-8);
}

TEST_CASE("odd functional equation forces an exact zero") {
    LSeriesCoefficients e11 = oracle::elliptic_11a1_coefficients(100);
    CentralValueResult cv = central_value(e11, selberg_data_degree2(11, 1, -1), 1e-8);
    CHECK(cv.value == 0.0);
    CHECK(cv.terms_used == 0);
    CHECK(cv.sign == -1);
}

TEST_CASE("truncation-error estimate gates and plans expansion lengths") {
    double q_cond = 7000.0;
    GammaKind kind = GammaKind::Degree4ParamodularWt2;
    double t1 = tail_estimate(100000, q_cond, kind);
    double t2 = tail_estimate(200000, q_cond, kind);
    CHECK(t2 < t1); // monotone in the truncation point

    i64 need = required_n_max(q_cond, 1e-3, kind);
    CHECK(tail_estimate(need, q_cond, kind) < 1e-3);
    CHECK(tail_estimate(need / 2, q_cond, kind) >= 1e-3);

    // an expansion too short for the tolerance raises, carrying the plan
    LSeriesCoefficients e11 = oracle::elliptic_11a1_coefficients(40);
    SelbergData big = selberg_data_degree2(11, -187, +1);
    try {
        central_value(e11, big, 1e-10);
        FAIL("expected InsufficientPrecisionError");
    } catch (const InsufficientPrecisionError& e) {
        CHECK(e.required_n_max > 40);
        CHECK(e.tail_bound >= 1e-10);
    }
}

TEST_CASE("tail estimate tracks the observed truncation error on real data") {
    // Doubling the expansion length must move the value by less than the
    // estimate at the shorter length; the estimate must not be absurdly
    // loose either (factor 10^4 headroom allowed -- it is a random-sign
    // model, not a worst-case bound).
    LSeriesCoefficients e11 = oracle::elliptic_11a1_coefficients(4000);
    SelbergData sd = selberg_data_degree2(11, -120, +1); // Q ~ 63.3
    LSeriesCoefficients shorter = e11;
    shorter.n_max = 400;
    shorter.a.resize(401);
    CentralValueResult a = central_value(shorter, sd, 1e30);
    CentralValueResult b = central_value(e11, sd, 1e30);
    double observed = std::abs(a.value - b.value);
    CHECK(observed < a.tail_bound);
    CHECK(a.tail_bound < 1.0);
}

TEST_CASE("class-number values of odd quadratic characters") {
    auto [l0, l1] = dirichlet_class_number_values(-4);
    CHECK(l0 == Rational(1, 2));
    CHECK(l1 == doctest::Approx(M_PI / 4.0).epsilon(1e-12));

    // independent finite evaluation: L(1, chi_D) = -pi |D|^{-3/2} sum a chi(a)
    for (i64 d = -3; d >= -30; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        i64 s = 0;
        for (i64 a = 1; a < -d; ++a) s += a * kronecker_symbol(d, a);
        double direct = -M_PI * static_cast<double>(s) /
                        std::pow(static_cast<double>(-d), 1.5);
        CAPTURE(d);
        CHECK(dirichlet_class_number_values(d).second == doctest::Approx(direct).epsilon(1e-12));
    }
    CHECK_THROWS_AS(dirichlet_class_number_values(-6), InvalidInputError);
    CHECK_THROWS_AS(dirichlet_class_number_values(5), InvalidInputError);
}
