#include "nonres/burgess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nonres/nonresidue.hpp"

namespace nonres {

namespace {

int64_t checked_mul(uint64_t a, uint64_t b, const char* who) {
    const unsigned __int128 v = static_cast<unsigned __int128>(a) * b;
    if (v > static_cast<unsigned __int128>(INT64_MAX))
        throw std::domain_error(std::string(who) + ": endpoint product overflows");
    return static_cast<int64_t>(v);
}

}  // namespace

IntervalSpec intervals(uint64_t q, uint64_t t, uint64_t p, uint64_t H, uint64_t h) {
    if (q == 0 || t >= q) throw std::domain_error("intervals: requires 0 <= t < q");
    IntervalSpec s;
    s.q = q;
    s.t = t;
    s.p = p;
    s.H = H;
    s.h = h;
    const int64_t qq = static_cast<int64_t>(q);
    const int64_t pt = checked_mul(p, t, "intervals");
    const int64_t hq = checked_mul(h, q, "intervals");
    const int64_t Hpt = pt + static_cast<int64_t>(H);
    s.i_lo = Rational(pt, qq);
    s.i_hi = Rational(Hpt, qq);
    s.istar_hi = Rational(Hpt - hq, qq);
    s.j_lo = Rational(-Hpt, qq);
    s.j_hi = Rational(-pt, qq);
    s.jstar_hi = Rational(-(pt + hq), qq);
    s.starred_empty = static_cast<unsigned __int128>(h) * q >= H;
    return s;
}

DisjointnessResult check_interval_disjoint(real X, uint64_t H, uint64_t p) {
    if (!(X > 1.0L)) throw std::domain_error("check_interval_disjoint: requires X > 1");
    if (!(X * static_cast<real>(H) < static_cast<real>(p)))
        throw std::domain_error("check_interval_disjoint: requires X*H < p");
    const uint64_t q_max = static_cast<uint64_t>(floorl(X));

    struct Iv {
        Rational lo, hi;
    };
    std::vector<Iv> is, js;
    for (uint64_t q = 1; q <= q_max; ++q) {
        for (uint64_t t = 0; t < q; ++t) {
            if (std::gcd(t, q) != 1) continue;  // t = 0 only pairs with q = 1
            const auto s = intervals(q, t, p, H, 0);
            is.push_back({s.i_lo, s.i_hi});
            js.push_back({s.j_lo, s.j_hi});
        }
    }
    DisjointnessResult res;
    res.interval_count = is.size();
    // Half-open intervals of the same orientation intersect iff each lower
    // endpoint lies strictly below the other interval's upper endpoint.
    auto family_disjoint = [](const std::vector<Iv>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = i + 1; j < v.size(); ++j)
                if (v[i].lo < v[j].hi && v[j].lo < v[i].hi) return false;
        return true;
    };
    res.pass = family_disjoint(is) && family_disjoint(js);
    return res;
}

BurgessEvaluator::BurgessEvaluator(const CharacterSpec& chi, uint64_t table_limit) : p_(chi.p()) {
    if (p_ > table_limit)
        throw capacity_error("BurgessEvaluator: p exceeds the table limit");
    if (chi.order() == 2) {
        // The unique order-2 character is the Legendre symbol: mark squares.
        signs_.assign(p_, -1);
        signs_[0] = 0;
        for (uint64_t x = 1; x <= (p_ - 1) / 2; ++x) signs_[mul_mod(x, x, p_)] = 1;
        return;
    }
    const uint64_t m = p_ - 1;
    std::vector<std::complex<long double>> roots(m);
    const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
    for (uint64_t k = 0; k < m; ++k) {
        const long double a = two_pi * static_cast<long double>(k) / static_cast<long double>(m);
        roots[k] = {cosl(a), sinl(a)};
    }
    const auto& ind = chi.table()->ind;
    const uint64_t c = chi.index();
    vals_.assign(p_, {0.0L, 0.0L});
    for (uint64_t n = 1; n < p_; ++n) vals_[n] = roots[mul_mod(c, ind[n], m)];
}

std::vector<long double> BurgessEvaluator::sums(uint64_t h, std::span<const uint64_t> rs) const {
    if (h < 1) throw std::domain_error("BurgessEvaluator: requires h >= 1");
    for (uint64_t r : rs)
        if (r < 1) throw std::domain_error("BurgessEvaluator: requires r >= 1");
    std::vector<long double> acc(rs.size(), 0.0L);
    if (!signs_.empty()) {
        // Prefix sums P[k] = chi(1) + ... + chi(k); windows are differences.
        std::vector<int64_t> prefix(p_ + h + 1, 0);
        for (uint64_t k = 1; k <= p_ + h; ++k) prefix[k] = prefix[k - 1] + signs_[k % p_];
        for (uint64_t x = 0; x < p_; ++x) {
            const int64_t w = prefix[x + h] - prefix[x];
            const long double w2 = static_cast<long double>(w) * static_cast<long double>(w);
            for (size_t i = 0; i < rs.size(); ++i) {
                long double term = w2;
                for (uint64_t k = 1; k < rs[i]; ++k) term *= w2;
                acc[i] += term;
            }
        }
        return acc;
    }
    std::vector<std::complex<long double>> prefix(p_ + h + 1, {0.0L, 0.0L});
    for (uint64_t k = 1; k <= p_ + h; ++k) prefix[k] = prefix[k - 1] + vals_[k % p_];
    for (uint64_t x = 0; x < p_; ++x) {
        const std::complex<long double> w = prefix[x + h] - prefix[x];
        const long double w2 = w.real() * w.real() + w.imag() * w.imag();
        for (size_t i = 0; i < rs.size(); ++i) {
            long double term = w2;
            for (uint64_t k = 1; k < rs[i]; ++k) term *= w2;
            acc[i] += term;
        }
    }
    return acc;
}

long double BurgessEvaluator::sum(uint64_t h, uint64_t r) const {
    const uint64_t rs[1] = {r};
    return sums(h, rs)[0];
}

long double burgess_sum(const CharacterSpec& chi, uint64_t h, uint64_t r, uint64_t table_limit) {
    return BurgessEvaluator(chi, table_limit).sum(h, r);
}

real burgess_upper_bound(real p, uint64_t h, uint64_t r) {
    if (h < 1 || r < 1) throw std::domain_error("burgess_upper_bound: requires h, r >= 1");
    const real hh = static_cast<real>(h);
    const real rr = static_cast<real>(r);
    return 0.25L * powl(4.0L * rr, rr) * p * powl(hh, rr) +
           (2.0L * rr - 1.0L) * sqrtl(p) * powl(hh, 2.0L * rr);
}

BurgessLowerBound burgess_lower_bound(uint64_t p, uint64_t h, uint64_t r, uint64_t u, uint64_t H) {
    if (h < 1 || r < 1) throw std::domain_error("burgess_lower_bound: requires h, r >= 1");
    BurgessLowerBound lb;
    lb.premises.u_prime = is_prime64(u);
    lb.premises.h_le_u = h <= u;
    lb.premises.window = 2 * h < H;
    lb.premises.span = static_cast<unsigned __int128>(H) * H <= static_cast<unsigned __int128>(2) * h * p;
    lb.premises.p_ge_5 = p >= 5;
    lb.X = static_cast<real>(H) / (2.0L * static_cast<real>(h));
    if (h <= 2) return lb;  // (h-2)^{2r} clamped to 0

    const uint64_t q_max = H / (2 * h);  // q <= X for integers q
    unsigned __int128 phi_sum = 0;
    if (q_max >= 1) {
        const auto phi = totient_table(static_cast<uint32_t>(q_max));
        for (uint64_t q = 1; q <= q_max; ++q)
            if (u == 0 || q % u != 0) phi_sum += phi[q];
    }
    unsigned __int128 inter = 2 * static_cast<unsigned __int128>(h);
    for (uint64_t k = 0; k < 2 * r; ++k) {
        inter *= (h - 2);
        if (inter > (static_cast<unsigned __int128>(1) << 100))
            throw std::domain_error("burgess_lower_bound: intermediate bound overflows");
    }
    inter *= phi_sum;
    if (inter > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::domain_error("burgess_lower_bound: intermediate bound overflows");
    lb.intermediate = static_cast<uint64_t>(inter);

    if (lb.X > 1.0L && lb.premises.u_prime) {
        const real uu = static_cast<real>(u);
        const real kpi = 3.141592653589793238462643383279502884L;
        lb.full = 6.0L / (kpi * kpi) * (1.0L - 1.0L / uu) * static_cast<real>(h) *
                  powl(static_cast<real>(h - 2), 2.0L * static_cast<real>(r)) * lb.X * lb.X *
                  phi_sum_correction(lb.X, u);
    }
    return lb;
}

AlmostConstantResult check_almost_constant(const CharacterSpec& chi, uint64_t u, uint64_t H,
                                           uint64_t h, uint64_t q, uint64_t t) {
    if (!is_prime64(u)) throw std::domain_error("check_almost_constant: u must be prime");
    if (h < 1 || h > u) throw std::domain_error("check_almost_constant: requires 1 <= h <= u");
    if (std::gcd(q, u) != 1) throw std::domain_error("check_almost_constant: requires gcd(q,u) = 1");
    for (uint64_t n = 1; n <= H; ++n) {
        if (n % u == 0) continue;
        if (!chi(static_cast<int64_t>(n)).is_one())
            throw hypothesis_error("check_almost_constant: chi is not 1 on [1,H] coprime to u");
    }
    const auto s = intervals(q, t, chi.p(), H, h);
    AlmostConstantResult res;
    res.bound = static_cast<real>(h) - 2.0L;
    res.min_magnitude = std::numeric_limits<real>::infinity();
    auto scan = [&](int64_t z_lo, int64_t z_hi) {
        for (int64_t z = z_lo; z <= z_hi; ++z) {
            std::complex<long double> w{0.0L, 0.0L};
            for (uint64_t m = 0; m < h; ++m) {
                const auto v = chi(z + static_cast<int64_t>(m));
                const auto c = complex_value(v);
                w += std::complex<long double>(c.real(), c.imag());
            }
            const real mag = sqrtl(w.real() * w.real() + w.imag() * w.imag());
            res.min_magnitude = std::min(res.min_magnitude, mag);
            ++res.z_count;
        }
    };
    if (!s.starred_empty) {
        scan(s.i_lo.ceil_strict_above(), s.istar_hi.floor());
        scan(s.j_lo.ceil(), s.jstar_hi.floor_strict_below());
    }
    res.pass = res.z_count == 0 || res.min_magnitude >= res.bound - 1e-9L;
    return res;
}

std::vector<BurgessInstance> find_burgess_instances(uint64_t p_limit, CharScope scope,
                                                    uint64_t p_min, uint64_t table_limit) {
    std::vector<BurgessInstance> out;
    for (uint64_t p = 5; p <= p_limit; p = next_prime(p)) {
        if (p < std::max<uint64_t>(p_min, 5)) continue;
        std::vector<CharacterSpec> chis;
        if (scope == CharScope::quadratic) {
            chis.push_back(CharacterSpec::quadratic(p));
        } else {
            chis = enumerate_characters(p, table_limit);
        }
        for (const auto& chi : chis) {
            const uint64_t u = least_nonresidues(chi, 1)[0];
            if (u < 3) continue;  // h >= 3 needs h <= u
            const uint64_t H = restricted_nonresidue(chi, u) - 1;
            if (H < 7) continue;
            const uint64_t h_max = std::min(u, (H - 1) / 2);
            for (uint64_t h = 3; h <= h_max; ++h) {
                if (static_cast<unsigned __int128>(H) * H <= static_cast<unsigned __int128>(2) * h * p)
                    out.push_back({chi, u, H, h});
            }
        }
    }
    return out;
}

BurgessCheck make_burgess_check(const CharacterSpec& chi, uint64_t h, uint64_t r, uint64_t u,
                                uint64_t H, uint64_t table_limit) {
    BurgessCheck chk;
    chk.p = chi.p();
    chk.chi_id = chi.id();
    chk.h = h;
    chk.r = r;
    chk.u = u;
    chk.H = H;
    chk.s_exact = burgess_sum(chi, h, r, table_limit);
    chk.upper = burgess_upper_bound(static_cast<real>(chi.p()), h, r);
    const auto lb = burgess_lower_bound(chi.p(), h, r, u, H);
    chk.lower_full = lb.full;
    chk.lower_intermediate = lb.intermediate;
    chk.premises = lb.premises;
    chk.upper_margin = chk.upper - static_cast<real>(chk.s_exact);
    chk.lower_full_margin = static_cast<real>(chk.s_exact) - chk.lower_full;
    chk.lower_intermediate_margin =
        static_cast<real>(chk.s_exact) - static_cast<real>(chk.lower_intermediate);
    return chk;
}

}  // namespace nonres
