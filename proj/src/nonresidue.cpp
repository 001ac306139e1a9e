#include "nonres/nonresidue.hpp"

#include <algorithm>
#include <numeric>

namespace nonres {

std::vector<uint64_t> least_nonresidues(const CharacterSpec& chi, size_t k, uint64_t search_limit) {
    if (k < 1) throw std::domain_error("least_nonresidues: k must be >= 1");
    const uint64_t limit = search_limit ? search_limit : chi.p();
    std::vector<uint64_t> out;
    out.reserve(k);
    for (uint64_t q = 2; q <= limit; q = next_prime(q)) {
        if (q == chi.p()) continue;
        if (!chi(static_cast<int64_t>(q)).is_one()) {
            out.push_back(q);
            if (out.size() == k) return out;
        }
    }
    throw search_limit_error("least_nonresidues: fewer than k prime non-residues below the search limit");
}

uint64_t restricted_nonresidue(const CharacterSpec& chi, uint64_t u, uint64_t search_limit) {
    if (!is_prime64(u)) throw std::domain_error("restricted_nonresidue: u must be prime");
    const uint64_t limit = search_limit ? search_limit : chi.p();
    for (uint64_t n = 1; n <= limit; ++n) {
        if (n % u == 0) continue;
        if (!chi(static_cast<int64_t>(n)).is_one()) return n;
    }
    throw search_limit_error("restricted_nonresidue: no value below the search limit");
}

uint64_t max_constant_run(const CharacterSpec& chi, uint64_t table_limit) {
    const uint64_t p = chi.p();
    if (p < 3) return p >= 2 ? 1 : 0;
    if (chi.mode() == CharacterSpec::Mode::tabled) {
        // chi(n) = chi(n+1) iff ind[n+1] - ind[n] is divisible by the order.
        const auto& ind = chi.table()->ind;
        const uint64_t m = p - 1;
        const uint64_t d = chi.order();
        uint64_t best = 1, cur = 1;
        for (uint64_t n = 1; n + 1 <= m; ++n) {
            const uint64_t diff = (ind[n + 1] + m - ind[n]) % m;
            if (diff % d == 0) {
                ++cur;
                best = std::max(best, cur);
            } else {
                cur = 1;
            }
        }
        return best;
    }
    if (p > table_limit)
        throw capacity_error("max_constant_run: p exceeds the table limit for a full period scan");
    // Quadratic values by marking squares; no index table needed.
    std::vector<int8_t> sign(p, -1);
    sign[0] = 0;
    for (uint64_t x = 1; x <= (p - 1) / 2; ++x) sign[mul_mod(x, x, p)] = 1;
    uint64_t best = 1, cur = 1;
    for (uint64_t n = 2; n <= p - 1; ++n) {
        if (sign[n] == sign[n - 1]) {
            ++cur;
            best = std::max(best, cur);
        } else {
            cur = 1;
        }
    }
    return best;
}

HudsonResult hudson_check(const CharacterSpec& chi, uint64_t table_limit) {
    if (chi.p() < 5) throw std::domain_error("hudson_check: requires p >= 5");
    if (chi.principal()) throw std::domain_error("hudson_check: requires a non-principal character");
    const auto q = least_nonresidues(chi, 2);
    HudsonResult res;
    res.q1 = q[0];
    res.q2 = q[1];
    res.run = max_constant_run(chi, table_limit);
    res.margin = static_cast<int64_t>(res.run * res.q1 + 1) - static_cast<int64_t>(res.q2);
    res.vacuous = (res.q1 == 2 && res.q2 == 3);
    res.pass = res.vacuous || res.margin >= 0;
    return res;
}

NonResidueReport nonresidue_report(const CharacterSpec& chi, size_t k,
                                   const std::vector<uint64_t>& extra_u, uint64_t table_limit) {
    NonResidueReport rep;
    rep.p = chi.p();
    rep.chi_id = chi.id();
    rep.q = least_nonresidues(chi, k);
    try {
        rep.run = max_constant_run(chi, table_limit);
    } catch (const capacity_error&) {
        rep.run = 0;
    }
    std::vector<uint64_t> us = extra_u;
    us.push_back(rep.q[0]);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    for (uint64_t u : us) rep.n0[u] = restricted_nonresidue(chi, u);
    return rep;
}

}  // namespace nonres
