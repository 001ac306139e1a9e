#include "doctest.h"
#include "nonres/analytic.hpp"

#include <cmath>

using namespace nonres;

TEST_SUITE("analytic") {

TEST_CASE("phi sum correction values") {
    // direct evaluation of the three-term formula, 4 decimals
    CHECK(static_cast<double>(phi_sum_correction(10.0L, 3)) == doctest::Approx(-0.8107).epsilon(1e-4));
    CHECK(static_cast<double>(phi_sum_correction(100.0L, 89)) == doctest::Approx(0.7969).epsilon(1e-4));
    CHECK(phi_sum_correction(1e9L, 89) > 0.999L);  // tends to 1
    CHECK_THROWS_AS(phi_sum_correction(1.0L, 3), std::domain_error);
    CHECK_THROWS_AS(phi_sum_correction(10.0L, 4), std::domain_error);
}

TEST_CASE("phi sum correction monotone") {
    for (uint64_t u : {89ull, 97ull, 101ull}) {
        real prev = phi_sum_correction(14.0L, u);
        CHECK(prev > 0.0L);  // positive from X = 14 on
        for (int i = 1; i <= 200; ++i) {
            const real x = 14.0L * powl(1e6L / 14.0L, static_cast<real>(i) / 200.0L);
            const real cur = phi_sum_correction(x, u);
            REQUIRE(cur > prev);
            prev = cur;
        }
    }
    for (double x : {2.0, 16.0, 1000.0}) {
        CHECK(phi_sum_correction(x, 89) <= phi_sum_correction(x, 97));
        CHECK(phi_sum_correction(x, 97) <= phi_sum_correction(x, 101));
    }
}

TEST_CASE("leading constant") {
    const real k = leading_constant();
    CHECK(std::fabs(static_cast<double>(k) - 6.0385) < 5e-5);
    CHECK(static_cast<double>(k / (2.0L * expl(2.0L))) == doctest::Approx(0.4086).epsilon(1e-4));
    const real pi = 3.141592653589793238462643383279502884L;
    CHECK(std::fabs(static_cast<double>(k * k - pi * pi * expl(2.0L) / 2.0L)) < 1e-12);
}

TEST_CASE("main correction behaves") {
    CHECK(main_correction(1e7L) > main_correction(1e8L));
    CHECK(main_correction(1e8L) > main_correction(1e12L));
    CHECK(main_correction(1e12L) > main_correction(1e20L));
    CHECK(main_correction(1e20L) > 1.0L);
    CHECK(main_correction(1e40L) < 1.01L);
    CHECK(leading_constant() * main_correction(1e7L) < 12.0L);
    CHECK_THROWS_AS(main_correction(9.9e6L), std::domain_error);
}

TEST_CASE("run bound constant reproduces the reference rows") {
    CHECK(static_cast<double>(run_bound_constant(1e7L)) == doctest::Approx(11.0421).epsilon(2e-4));
    CHECK(static_cast<double>(run_bound_constant(1e13L)) == doctest::Approx(6.3033).epsilon(2e-4));
    CHECK(static_cast<double>(run_bound_constant(1e20L)) == doctest::Approx(6.1374).epsilon(2e-4));
    CHECK_THROWS_AS(run_bound_constant(1e6L), std::domain_error);
}

TEST_CASE("norton bound") {
    const double oracle = 4.7 * std::pow(10.0, 1.75) * std::log(1e7);
    CHECK(static_cast<double>(norton_bound(1e7L)) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(static_cast<double>(norton_bound(123456.0L, true) / norton_bound(123456.0L)) ==
          doctest::Approx(3.9 / 4.7).epsilon(1e-15));
    const real p = expl(4.0L);
    CHECK(static_cast<double>(norton_bound(p)) ==
          doctest::Approx(static_cast<double>(18.8L * expl(1.0L))).epsilon(1e-12));
}

TEST_CASE("secondary bound formulas") {
    const real lp = logl(1e20L);
    CHECK(static_cast<double>(q2_unconditional_bound(1e20L)) ==
          doctest::Approx(static_cast<double>(53.0L * 1e5L * lp * lp)).epsilon(1e-12));
    CHECK(static_cast<double>(q1q2_product_bound(1e18L)) ==
          doctest::Approx(static_cast<double>(24.0L * 1e9L * logl(1e18L) * logl(1e18L))).epsilon(1e-12));
    CHECK(static_cast<double>(consecutive_run_bound(1e8L)) ==
          doctest::Approx(static_cast<double>(7.1L * 100.0L * logl(1e8L))).epsilon(1e-12));
    // the constants behind the product bound
    CHECK(3.9 * 6.1536 < 24.0);
    CHECK(2.0 * std::exp(2.0) < 15.0);
}

TEST_CASE("pv bound comparison") {
    for (int i = 0; i <= 100; ++i) {
        const real m = 1e15L * powl(1e25L, static_cast<real>(i) / 100.0L);
        const auto pv = pv_q2_bound(m);
        REQUIRE(pv.raw <= pv.simplified);
    }
    // below the stated threshold the simplification can flip; raw still computes
    const auto pv_small = pv_q2_bound(1e6L);
    CHECK(pv_small.raw > 0.0L);
}

TEST_CASE("coprime sum decomposition examples") {
    const auto a = coprime_sum_decompose(10.5L, 3);
    CHECK(a.exact_sum == 37);  // 1+2+4+5+7+8+10
    CHECK(static_cast<double>(a.main_term) == doctest::Approx(36.75));
    CHECK(static_cast<double>(a.theta) == doctest::Approx(0.25 / 10.5).epsilon(1e-12));
    const auto b = coprime_sum_decompose(2.0L, 2);
    CHECK(b.exact_sum == 1);
    CHECK(static_cast<double>(b.main_term) == doctest::Approx(1.0));
    CHECK(std::fabs(static_cast<double>(b.theta)) < 1e-18);
    CHECK_THROWS_AS(coprime_sum_decompose(0.5L, 3), std::domain_error);
}

TEST_CASE("theta stays inside (-1,1) on a small grid") {
    uint64_t us[] = {2, 3, 5, 7, 11, 13, 89, 97};
    for (int i = 1; i <= 400; ++i) {
        const real x = 1.0L + static_cast<real>(i) * 0.37L;
        for (uint64_t u : us) {
            const auto d = coprime_sum_decompose(x, u);
            REQUIRE(fabsl(d.theta) < 1.0L);
        }
    }
}

TEST_CASE("phi sum bound examples") {
    const auto a = phi_sum_coprime(10.0L, 3);
    CHECK(a.exact_sum == 22);  // 1+1+2+4+6+4+4 over q = 1,2,4,5,7,8,10
    CHECK(a.lower_bound < 0.0L);
    const auto b = phi_sum_coprime(10000.0L, 89);
    CHECK(b.lower_bound > 0.0L);
    CHECK(static_cast<real>(b.exact_sum) >= b.lower_bound);
    const auto c = phi_sum_coprime(2.0L, 2);
    CHECK(c.exact_sum == 1);
    CHECK(c.lower_bound < 0.0L);
}

TEST_CASE("convexity examples") {
    const auto a = convexity_check(11, 1);
    CHECK(a.head_term == ImplicationStatus::pass);  // 0.0202 <= 0.0278
    CHECK(a.ok());
    const auto b = convexity_check(18, 1);
    CHECK(b.ratio_power == ImplicationStatus::pass);  // 1.125 < 7/6
    const auto c = convexity_check(1, 1);
    CHECK(c.head_term == ImplicationStatus::vacuous);
    CHECK(c.ratio_power == ImplicationStatus::vacuous);
    CHECK(c.tail_term == ImplicationStatus::pass);  // equality case 1 <= 1
    CHECK(static_cast<double>(c.min_margin) == doctest::Approx(0.0));
    CHECK_THROWS_AS(convexity_check(0, 1), std::domain_error);
}

TEST_CASE("convexity holds on a sample grid") {
    for (uint64_t r = 1; r <= 10; ++r)
        for (uint64_t h = 1; h <= 200; ++h) REQUIRE(convexity_check(h, r).ok());
}

TEST_CASE("main run bound") {
    for (int k = 7; k <= 20; ++k) {
        real p0 = 1.0L;
        for (int i = 0; i < k; ++i) p0 *= 10.0L;
        const real slack = run_bound_constant(p0) * powl(p0, 0.25L) * logl(p0);
        REQUIRE(main_run_bound(p0) < slack);
    }
    const real ratio = main_run_bound(1e40L) / (powl(1e40L, 0.25L) * logl(1e40L));
    CHECK(ratio / leading_constant() < 1.01L);
    CHECK(ratio / leading_constant() > 1.0L);
    CHECK(main_run_bound(1e7L) / (powl(1e7L, 0.25L) * logl(1e7L)) < 12.0L);
}

}  // TEST_SUITE
