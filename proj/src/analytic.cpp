#include "nonres/analytic.hpp"

#include <cmath>
#include <limits>

#include "nonres/arith.hpp"

namespace nonres {

namespace {

constexpr real kPi = 3.141592653589793238462643383279502884L;

real require_prime(uint64_t u, const char* who) {
    if (!is_prime64(u)) throw std::domain_error(std::string(who) + ": u must be prime");
    return static_cast<real>(u);
}

}  // namespace

real phi_sum_correction(real X, uint64_t u) {
    if (!(X > 1.0L)) throw std::domain_error("phi_sum_correction: requires X > 1");
    const real uu = require_prime(u, "phi_sum_correction");
    const real bracket =
        1.0L / (2.0L * X * X) + 1.0L / (2.0L * X) + (1.0L / (1.0L - 1.0L / uu)) * (1.0L + logl(X)) / X;
    return 1.0L - (kPi * kPi / 3.0L) * bracket;
}

real leading_constant() { return kPi * expl(1.0L) / sqrtl(2.0L); }

real main_correction(real p) {
    if (!(p >= 1e7L)) throw std::domain_error("main_correction: requires p >= 10^7");
    const real lp = logl(p);
    const real e2 = expl(2.0L);
    const real X = leading_constant() * powl(p, 0.25L) / (2.0L * e2);
    const real num = 1.0L + 4.0L / (3.0L * lp);
    const real den = (1.0L - 1.0L / (e2 * lp)) * phi_sum_correction(X, 89);
    return sqrtl(num / den);
}

real run_bound_constant(real p0) {
    const real raw = leading_constant() * main_correction(p0) + 1.0L / (powl(p0, 0.25L) * logl(p0));
    return ceill(raw * 10000.0L) / 10000.0L;
}

real norton_bound(real p, bool improved) {
    if (!(p >= 2.0L)) throw std::domain_error("norton_bound: requires p >= 2");
    return (improved ? 3.9L : 4.7L) * powl(p, 0.25L) * logl(p);
}

real q2_unconditional_bound(real p) {
    if (!(p >= 2.0L)) throw std::domain_error("q2_unconditional_bound: requires p >= 2");
    const real lp = logl(p);
    return 53.0L * powl(p, 0.25L) * lp * lp;
}

real q1q2_product_bound(real p) {
    if (!(p >= 2.0L)) throw std::domain_error("q1q2_product_bound: requires p >= 2");
    const real lp = logl(p);
    return 24.0L * sqrtl(p) * lp * lp;
}

real consecutive_run_bound(real p) {
    if (!(p >= 2.0L)) throw std::domain_error("consecutive_run_bound: requires p >= 2");
    return 7.1L * powl(p, 0.25L) * logl(p);
}

PvQ2Bound pv_q2_bound(real m) {
    if (!(m >= 2.0L)) throw std::domain_error("pv_q2_bound: requires m >= 2");
    const real rm = sqrtl(m);
    const real lm = logl(m);
    const real raw = 4.0L * (rm * lm / (3.0L * logl(3.0L)) + 6.5L * rm) + 2.0L;
    return {raw, 2.0L * rm * lm};
}

CoprimeSumDecomposition coprime_sum_decompose(real X, uint64_t u) {
    if (!(X > 1.0L)) throw std::domain_error("coprime_sum_decompose: requires X > 1");
    if (!(X <= 1e9L)) throw std::domain_error("coprime_sum_decompose: X too large to enumerate");
    require_prime(u, "coprime_sum_decompose");
    const uint64_t n_max = static_cast<uint64_t>(floorl(X));
    uint64_t exact = 0;
    for (uint64_t n = 1; n <= n_max; ++n)
        if (n % u != 0) exact += n;
    const real main = (1.0L - 1.0L / static_cast<real>(u)) / 2.0L * X * X;
    const real theta = (static_cast<real>(exact) - main) / X;
    return {exact, main, theta};
}

PhiSumBound phi_sum_coprime(real X, uint64_t u) {
    if (!(X > 1.0L)) throw std::domain_error("phi_sum_coprime: requires X > 1");
    if (!(X <= 1e8L)) throw std::domain_error("phi_sum_coprime: X too large to enumerate");
    const real uu = require_prime(u, "phi_sum_coprime");
    const uint32_t q_max = static_cast<uint32_t>(floorl(X));
    const auto phi = totient_table(q_max);
    uint64_t exact = 0;
    for (uint32_t q = 1; q <= q_max; ++q)
        if (q % u != 0) exact += phi[q];
    const real lower = 3.0L / (kPi * kPi) * (1.0L - 1.0L / uu) * X * X * phi_sum_correction(X, u);
    return {exact, lower};
}

ConvexityResult convexity_check(uint64_t h, uint64_t r) {
    if (h < 1 || r < 1) throw std::domain_error("convexity_check: requires h, r >= 1");
    const real hh = static_cast<real>(h);
    const real rr = static_cast<real>(r);
    ConvexityResult res{ImplicationStatus::vacuous, ImplicationStatus::vacuous, ImplicationStatus::vacuous,
                        std::numeric_limits<real>::infinity()};
    auto apply = [&res](ImplicationStatus& slot, real margin, bool strict = false) {
        slot = (strict ? margin > 0.0L : margin >= 0.0L) ? ImplicationStatus::pass : ImplicationStatus::fail;
        if (margin < res.min_margin) res.min_margin = margin;
    };
    if (h >= 6 * r + 5) {
        const real lhs = powl(4.0L * rr / (hh - 2.0L), rr) / (2.0L * hh);
        const real rhs = powl(4.0L * rr / (hh + 1.0L), rr) / (hh + 1.0L);
        apply(res.head_term, rhs - lhs);
    }
    if (h >= 16 * r + 2) {
        const real val = powl(hh / (hh - 2.0L), rr);
        apply(res.ratio_power, 7.0L / 6.0L - val, /*strict=*/true);
    }
    if (h >= 2 * r - 1) {
        apply(res.tail_term, 2.0L * rr / (hh + 1.0L) - (2.0L * rr - 1.0L) / hh);
    }
    return res;
}

real main_run_bound(real p) {
    return leading_constant() * main_correction(p) * powl(p, 0.25L) * logl(p);
}

}  // namespace nonres
