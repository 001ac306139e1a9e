#include "doctest.h"
#include "nonres/burgess.hpp"
#include "nonres/nonresidue.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

using namespace nonres;

namespace {

// Oracle: the window power sum straight from its definition (m = 1..h).
long double definition_sum(const CharacterSpec& chi, uint64_t h, uint64_t r) {
    const uint64_t p = chi.p();
    long double total = 0.0L;
    for (uint64_t x = 0; x < p; ++x) {
        std::complex<long double> w{0.0L, 0.0L};
        for (uint64_t m = 1; m <= h; ++m) {
            const auto c = complex_value(chi(static_cast<int64_t>(x + m)));
            w += std::complex<long double>(c.real(), c.imag());
        }
        total += powl(std::norm(w), static_cast<long double>(r));
    }
    return total;
}

// The shifted variant m = 0..h-1 used inside the lower-bound argument.
long double shifted_sum(const CharacterSpec& chi, uint64_t h, uint64_t r) {
    const uint64_t p = chi.p();
    long double total = 0.0L;
    for (uint64_t x = 0; x < p; ++x) {
        std::complex<long double> w{0.0L, 0.0L};
        for (uint64_t m = 0; m < h; ++m) {
            const auto c = complex_value(chi(static_cast<int64_t>(x + m)));
            w += std::complex<long double>(c.real(), c.imag());
        }
        total += powl(std::norm(w), static_cast<long double>(r));
    }
    return total;
}

}  // namespace

TEST_SUITE("burgess") {

TEST_CASE("window sum examples mod 5") {
    const auto quad5 = CharacterSpec::quadratic(5);
    CHECK(burgess_sum(quad5, 1, 1) == 4.0L);  // |chi|^2 is 1 except at the zero
    CHECK(burgess_sum(quad5, 2, 1) == 6.0L);  // windows give 0+4+0+1+1
}

TEST_CASE("evaluator matches the definition") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        const uint64_t ps[] = {5, 7, 13, 31, 53};
        const uint64_t p = ps[rng() % 5];
        const auto chis = enumerate_characters(p);
        const auto& chi = chis[rng() % chis.size()];
        const uint64_t h = 1 + rng() % 9;
        const uint64_t r = 1 + rng() % 3;
        const long double expect = definition_sum(chi, h, r);
        const long double got = burgess_sum(chi, h, r);
        REQUIRE(std::fabs(static_cast<double>(got - expect)) <=
                1e-9 * std::max(1.0, static_cast<double>(expect)));
    }
}

TEST_CASE("shift invariance of the window sum") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 25; ++iter) {
        const uint64_t ps[] = {7, 11, 29, 71};
        const uint64_t p = ps[rng() % 4];
        const auto chis = enumerate_characters(p);
        const auto& chi = chis[rng() % chis.size()];
        const uint64_t h = 1 + rng() % 8;
        const uint64_t r = 1 + rng() % 2;
        const long double a = burgess_sum(chi, h, r);
        const long double b = shifted_sum(chi, h, r);
        REQUIRE(std::fabs(static_cast<double>(a - b)) <=
                1e-9 * std::max(1.0, static_cast<double>(a)));
    }
}

TEST_CASE("windows longer than the period reduce mod p") {
    const auto quad5 = CharacterSpec::quadratic(5);
    // full periods of a non-principal character sum to zero
    CHECK(burgess_sum(quad5, 12, 1) == burgess_sum(quad5, 2, 1));
    CHECK(burgess_sum(quad5, 12, 1) == definition_sum(quad5, 12, 1));
}

TEST_CASE("upper bound formula") {
    CHECK(static_cast<double>(burgess_upper_bound(5.0L, 2, 1)) ==
          doctest::Approx(10.0 + 4.0 * std::sqrt(5.0)).epsilon(1e-12));
    const real at_h1 = burgess_upper_bound(5.0L, 1, 1);
    CHECK(static_cast<double>(at_h1) == doctest::Approx(5.0 + std::sqrt(5.0)).epsilon(1e-12));
    CHECK(at_h1 > burgess_sum(CharacterSpec::quadratic(5), 1, 1));
    // doubling h scales the second term by 2^{2r}
    for (uint64_t r : {1ull, 2ull, 3ull}) {
        const real first_h = 0.25L * powl(4.0L * r, r) * 101.0L * powl(3.0L, r);
        const real first_2h = 0.25L * powl(4.0L * r, r) * 101.0L * powl(6.0L, r);
        const real tail_h = burgess_upper_bound(101.0L, 3, r) - first_h;
        const real tail_2h = burgess_upper_bound(101.0L, 6, r) - first_2h;
        CHECK(static_cast<double>(tail_2h / tail_h) ==
              doctest::Approx(std::pow(2.0, 2.0 * static_cast<double>(r))).epsilon(1e-10));
    }
}

TEST_CASE("upper bound holds across a small grid") {
    for (uint64_t p = 5; p <= 61; p = next_prime(p)) {
        for (const auto& chi : enumerate_characters(p)) {
            const BurgessEvaluator ev(chi);
            for (uint64_t h = 1; h <= 6; ++h)
                for (uint64_t r = 1; r <= 3; ++r)
                    REQUIRE(ev.sum(h, r) <=
                            burgess_upper_bound(static_cast<real>(p), h, r) * (1.0L + 1e-9L));
        }
    }
}

TEST_CASE("interval endpoints are exact") {
    const auto s = intervals(1, 0, 101, 10, 2);
    CHECK(s.i_lo == Rational(0, 1));
    CHECK(s.i_hi == Rational(10, 1));
    CHECK(s.istar_hi == Rational(8, 1));
    CHECK(s.j_lo == Rational(-10, 1));
    CHECK(s.j_hi == Rational(0, 1));
    CHECK(s.jstar_hi == Rational(-2, 1));
    CHECK_FALSE(s.starred_empty);
    CHECK(intervals(1, 0, 101, 10, 10).starred_empty);
    CHECK(intervals(3, 2, 101, 10, 4).starred_empty);  // h >= H/q
    const auto t = intervals(3, 2, 101, 10, 1);
    CHECK(t.i_lo == Rational(202, 3));
    CHECK(t.i_hi == Rational(212, 3));
    CHECK(t.istar_hi == Rational(209, 3));
    CHECK_THROWS_AS(intervals(3, 3, 101, 10, 1), std::domain_error);
}

TEST_CASE("interval disjointness") {
    const auto res = check_interval_disjoint(3.0L, 10, 101);
    CHECK(res.pass);
    CHECK(res.interval_count == 4);  // (1,0), (2,1), (3,1), (3,2)
    CHECK_THROWS_AS(check_interval_disjoint(1.2L, 10, 11), std::domain_error);  // X*H = 12 >= 11
    CHECK_THROWS_AS(check_interval_disjoint(0.5L, 10, 101), std::domain_error);
    // single interval when X < 2; X = 1.05, H = 10, p = 11 keeps X*H < p
    const auto one = check_interval_disjoint(1.05L, 10, 11);
    CHECK(one.pass);
    CHECK(one.interval_count == 1);
}

TEST_CASE("interval disjointness on a randomized grid") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 150; ++iter) {
        const uint64_t p = next_prime(50 + rng() % 20000);
        const uint64_t H = 1 + rng() % 50;
        const double x_cap = static_cast<double>(p) / static_cast<double>(H);
        if (x_cap <= 1.1) continue;
        const double X = 1.0 + (rng() % 1000) / 1000.0 * std::min(25.0, x_cap - 1.0 - 1e-9);
        if (!(X > 1.0) || X * static_cast<double>(H) >= static_cast<double>(p)) continue;
        REQUIRE(check_interval_disjoint(static_cast<real>(X), H, p).pass);
    }
}

TEST_CASE("almost constant windows are vacuous for h <= 2") {
    const auto quad7 = CharacterSpec::quadratic(7);
    // u = 3, H = n0(3)-1 = 4: chi is 1 at 1,2,4
    const auto r1 = check_almost_constant(quad7, 3, 4, 1, 1, 0);
    CHECK(r1.pass);
    const auto r2 = check_almost_constant(quad7, 3, 4, 2, 1, 0);
    CHECK(r2.pass);
}

TEST_CASE("almost constant rejects a broken hypothesis") {
    const auto quad7 = CharacterSpec::quadratic(7);
    // chi(3) != 1 and 3 is coprime to 5, so [1,5] fails
    CHECK_THROWS_AS(check_almost_constant(quad7, 5, 5, 2, 1, 0), hypothesis_error);
    CHECK_THROWS_AS(check_almost_constant(quad7, 4, 4, 2, 1, 0), std::domain_error);
    CHECK_THROWS_AS(check_almost_constant(quad7, 3, 4, 4, 1, 0), std::domain_error);
    CHECK_THROWS_AS(check_almost_constant(quad7, 3, 4, 2, 3, 1), std::domain_error);
}

TEST_CASE("lower bound machinery") {
    // degenerate h clamps to zero
    for (uint64_t h : {1ull, 2ull}) {
        const auto lb = burgess_lower_bound(101, h, 1, 3, 20);
        CHECK(lb.full == 0.0L);
        CHECK(lb.intermediate == 0);
    }
    // premise flags
    const auto bad = burgess_lower_bound(101, 5, 1, 3, 20);
    CHECK_FALSE(bad.premises.h_le_u);
    const auto good = burgess_lower_bound(331, 3, 1, 3, 10);
    CHECK(good.premises.all());
    CHECK(good.X == doctest::Approx(10.0 / 6.0));
    // X = 5/3: only q = 1 contributes, so the exact side is 2h(h-2)^{2r}
    CHECK(good.intermediate == 6);
}

TEST_CASE("instance finder agrees with a jacobi search") {
    // Oracle straight from Jacobi symbols for the quadratic scope.
    std::vector<std::tuple<uint64_t, uint64_t, uint64_t, uint64_t>> expect;  // p,u,H,h
    for (uint64_t p = 5; p <= 2000; p = next_prime(p)) {
        uint64_t q1 = 0, q2 = 0;
        for (uint64_t q = 2;; q = next_prime(q)) {
            if (q == p) continue;
            if (jacobi(static_cast<int64_t>(q), p) != 1) {
                if (q1 == 0) {
                    q1 = q;
                } else {
                    q2 = q;
                    break;
                }
            }
        }
        if (q1 < 3) continue;
        const uint64_t H = q2 - 1;
        if (H < 7) continue;
        for (uint64_t h = 3; h <= std::min(q1, (H - 1) / 2); ++h)
            if (H * H <= 2 * h * p) expect.emplace_back(p, q1, H, h);
    }
    REQUIRE(!expect.empty());

    const auto got = find_burgess_instances(2000, CharScope::quadratic);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].chi.p() == std::get<0>(expect[i]));
        CHECK(got[i].u == std::get<1>(expect[i]));
        CHECK(got[i].H == std::get<2>(expect[i]));
        CHECK(got[i].h == std::get<3>(expect[i]));
    }
    // no instance can come from q1 = 2
    for (const auto& inst : got) CHECK(inst.u >= 3);
}

TEST_CASE("emitted instances satisfy every premise and both bounds") {
    const auto instances = find_burgess_instances(2000, CharScope::quadratic);
    REQUIRE(!instances.empty());
    for (const auto& inst : instances) {
        for (uint64_t r : {1ull, 2ull}) {
            const auto chk = make_burgess_check(inst.chi, inst.h, r, inst.u, inst.H);
            REQUIRE(chk.premises.all());
            REQUIRE(chk.upper_margin > 0.0L);
            REQUIRE(chk.lower_intermediate_margin >= -1e-6L);
            REQUIRE(chk.lower_full_margin >= -1e-6L);
            // the phi-sum bound is exactly the gap between the two lower bounds
            REQUIRE(static_cast<real>(chk.lower_intermediate) >= chk.lower_full - 1e-9L);
        }
    }
}

TEST_CASE("almost constant holds exhaustively on instances") {
    const auto instances = find_burgess_instances(700, CharScope::quadratic);
    REQUIRE(!instances.empty());
    for (const auto& inst : instances) {
        const uint64_t q_max = inst.H / (2 * inst.h);
        for (uint64_t q = 1; q <= q_max; ++q) {
            if (std::gcd(q, inst.u) != 1) continue;
            for (uint64_t t = 0; t < q; ++t) {
                if (q > 1 && std::gcd(t, q) != 1) continue;
                if (q == 1 && t != 0) continue;
                if (t > 0 && std::gcd(q, t * inst.u) != 1) continue;
                const auto res = check_almost_constant(inst.chi, inst.u, inst.H, inst.h, q, t);
                REQUIRE(res.pass);
                if (res.z_count > 0) REQUIRE(res.min_magnitude >= static_cast<real>(inst.h) - 2.0L - 1e-9L);
            }
        }
    }
}

TEST_CASE("full-scope instances include non-quadratic characters") {
    const auto instances = find_burgess_instances(500, CharScope::all);
    REQUIRE(!instances.empty());
    bool saw_non_quadratic = false;
    for (const auto& inst : instances) {
        if (inst.chi.order() != 2) saw_non_quadratic = true;
        const auto lb = burgess_lower_bound(inst.chi.p(), inst.h, 1, inst.u, inst.H);
        REQUIRE(lb.premises.all());
    }
    CHECK(saw_non_quadratic);
}

TEST_CASE("rational helpers") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(5, 3) < Rational(7, 4));
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(6, 3).floor_strict_below() == 1);
    CHECK(Rational(6, 3).ceil_strict_above() == 3);
    CHECK(Rational(-6, 3).ceil() == -2);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(7, 2) == 3);
}

}  // TEST_SUITE
