#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nonres/character.hpp"

namespace nonres {

// The k smallest primes q != p with chi(q) != 1, ascending.
// search_limit = 0 means "up to p", which always suffices for non-principal chi.
std::vector<uint64_t> least_nonresidues(const CharacterSpec& chi, size_t k, uint64_t search_limit = 0);

// Smallest n >= 1 with gcd(n, u) = 1 and chi(n) != 1 (n need not be prime).
uint64_t restricted_nonresidue(const CharacterSpec& chi, uint64_t u, uint64_t search_limit = 0);

// Longest run of consecutive integers in [1, p-1] on which chi is constant.
// Runs do not wrap through the zero at multiples of p.
uint64_t max_constant_run(const CharacterSpec& chi, uint64_t table_limit = kDefaultTableLimit);

struct HudsonResult {
    uint64_t q1 = 0;
    uint64_t q2 = 0;
    uint64_t run = 0;
    bool vacuous = false;  // excluded case q1 = 2, q2 = 3
    bool pass = false;
    int64_t margin = 0;  // run*q1 + 1 - q2
};

// Checks q2 <= run * q1 + 1 (vacuous when q1 = 2 and q2 = 3). Requires p >= 5.
HudsonResult hudson_check(const CharacterSpec& chi, uint64_t table_limit = kDefaultTableLimit);

struct NonResidueReport {
    uint64_t p = 0;
    std::string chi_id;
    std::vector<uint64_t> q;          // k smallest prime non-residues
    uint64_t run = 0;                 // 0 when the modulus is above the table limit
    std::map<uint64_t, uint64_t> n0;  // u -> restricted non-residue
};

// Report for one character: q1..qk, the run length when computable, and the
// restricted non-residue at u = q1 plus any extra u requested.
NonResidueReport nonresidue_report(const CharacterSpec& chi, size_t k = 2,
                                   const std::vector<uint64_t>& extra_u = {},
                                   uint64_t table_limit = kDefaultTableLimit);

}  // namespace nonres
