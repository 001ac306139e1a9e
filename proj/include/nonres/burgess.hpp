#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nonres/analytic.hpp"
#include "nonres/character.hpp"
#include "nonres/rational.hpp"

namespace nonres {

// The four interval families around the rationals pt/q, with exact endpoints:
//   I(q,t)  = (pt/q, (H+pt)/q],   I*(q,t) = (pt/q, (H+pt)/q - h],
//   J(q,t)  = [-(H+pt)/q, -pt/q), J*(q,t) = [-(H+pt)/q, -pt/q - h).
struct IntervalSpec {
    uint64_t q = 1, t = 0, p = 0, H = 0, h = 0;
    Rational i_lo, i_hi, istar_hi;
    Rational j_lo, j_hi, jstar_hi;
    bool starred_empty = false;  // iff h >= H/q
};

IntervalSpec intervals(uint64_t q, uint64_t t, uint64_t p, uint64_t H, uint64_t h);

struct DisjointnessResult {
    bool pass = false;
    uint64_t interval_count = 0;
};

// Pairwise disjointness of the I(q,t) family over 0 <= t < q <= X with
// gcd(t,q) = 1, and likewise for the J family. Requires X > 1 and X*H < p;
// all endpoint comparisons are exact rational.
DisjointnessResult check_interval_disjoint(real X, uint64_t H, uint64_t p);

// Window power sums of one character over a full period:
//   S(chi, h, r) = sum_{x=0}^{p-1} | sum_{m=1}^{h} chi(x+m) |^{2r}.
// Order-2 characters take an exact integer path (values are 0, +-1); the
// general path accumulates exact roots of unity in extended precision.
class BurgessEvaluator {
  public:
    explicit BurgessEvaluator(const CharacterSpec& chi, uint64_t table_limit = kDefaultTableLimit);

    long double sum(uint64_t h, uint64_t r) const;
    std::vector<long double> sums(uint64_t h, std::span<const uint64_t> rs) const;

    uint64_t p() const { return p_; }
    bool exact() const { return !signs_.empty(); }

  private:
    uint64_t p_ = 0;
    std::vector<int8_t> signs_;                     // order-2 path
    std::vector<std::complex<long double>> vals_;   // general path
};

long double burgess_sum(const CharacterSpec& chi, uint64_t h, uint64_t r,
                        uint64_t table_limit = kDefaultTableLimit);

// (1/4)(4r)^r p h^r + (2r-1) p^{1/2} h^{2r}; S(chi,h,r) stays below this for
// every non-principal character mod p.
real burgess_upper_bound(real p, uint64_t h, uint64_t r);

struct LowerBoundPremises {
    bool u_prime = false;
    bool h_le_u = false;
    bool window = false;  // 2h < H
    bool span = false;    // H^2 <= 2hp
    bool p_ge_5 = false;

    bool all() const { return u_prime && h_le_u && window && span && p_ge_5; }
};

// Lower bounds for S(chi,h,r) when chi(n) = 1 on [1,H] for all n coprime to u:
//   full:         (6/pi^2)(1-1/u) h (h-2)^{2r} X^2 phi_sum_correction(X,u),  X = H/(2h)
//   intermediate: 2h (h-2)^{2r} * sum of phi(q) over q <= X coprime to u  (exact integer)
// The factor (h-2)^{2r} is clamped to 0 for h <= 2. Premise violations set
// flags only; no assertion is made here.
struct BurgessLowerBound {
    real full = 0;
    uint64_t intermediate = 0;
    real X = 0;
    LowerBoundPremises premises;
};

BurgessLowerBound burgess_lower_bound(uint64_t p, uint64_t h, uint64_t r, uint64_t u, uint64_t H);

struct AlmostConstantResult {
    bool pass = false;
    uint64_t z_count = 0;
    real min_magnitude = 0;
    real bound = 0;  // h - 2
};

// For every integer z in I*(q,t) union J*(q,t), the window sum
// |sum_{m=0}^{h-1} chi(z+m)| is at least h-2. Throws hypothesis_error when
// chi fails to be 1 on [1,H] at arguments coprime to u.
AlmostConstantResult check_almost_constant(const CharacterSpec& chi, uint64_t u, uint64_t H,
                                           uint64_t h, uint64_t q, uint64_t t);

enum class CharScope { quadratic, all };

struct BurgessInstance {
    CharacterSpec chi;
    uint64_t u = 0;
    uint64_t H = 0;
    uint64_t h = 0;
};

// Instances realizing all lower-bound premises on real characters: u = q1,
// H = restricted_nonresidue(chi, u) - 1, and every h with
// 3 <= h <= min(u, (H-1)/2) and H^2 <= 2hp. Deterministic order (p, c, h).
std::vector<BurgessInstance> find_burgess_instances(uint64_t p_limit, CharScope scope,
                                                    uint64_t p_min = 5,
                                                    uint64_t table_limit = kDefaultTableLimit);

// One fully evaluated case: the exact sum against its upper and lower bounds.
struct BurgessCheck {
    uint64_t p = 0;
    std::string chi_id;
    uint64_t h = 0, r = 0, u = 0, H = 0;
    long double s_exact = 0;
    real upper = 0;
    real lower_full = 0;
    uint64_t lower_intermediate = 0;
    LowerBoundPremises premises;
    real upper_margin = 0;               // upper - S
    real lower_full_margin = 0;          // S - lower_full
    real lower_intermediate_margin = 0;  // S - lower_intermediate
};

BurgessCheck make_burgess_check(const CharacterSpec& chi, uint64_t h, uint64_t r, uint64_t u,
                                uint64_t H, uint64_t table_limit = kDefaultTableLimit);

}  // namespace nonres
