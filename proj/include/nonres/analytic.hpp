#pragma once

#include <cstdint>

#include "nonres/errors.hpp"

namespace nonres {

// Extended precision for every closed-form evaluation (64-bit mantissa on x86).
using real = long double;

// Correction factor in the coprime phi-sum lower bound:
//   1 - (pi^2/3) * ( 1/(2X^2) + 1/(2X) + (1/(1-1/u)) * (1+log X)/X ).
// May be negative for small X; tends to 1 as X grows. Requires X > 1, u prime.
real phi_sum_correction(real X, uint64_t u);

// pi * e / sqrt(2), the leading constant of the main run bound.
real leading_constant();

// Decreasing correction factor of the main run bound; requires p >= 10^7,
// where the inner phi_sum_correction argument stays in its valid region.
real main_correction(real p);

// Constant C for the bound n0 < C p^{1/4} log p valid for p >= p0:
// leading_constant()*main_correction(p0) + 1/(p0^{1/4} log p0), rounded UP
// at the fourth decimal place. Requires p0 >= 10^7.
real run_bound_constant(real p0);

// q1 < 4.7 p^{1/4} log p; the constant improves to 3.9 when the character
// order and (p-1)/2 share a factor.
real norton_bound(real p, bool improved = false);

// q2 < 53 p^{1/4} (log p)^2, stated for p >= 10^19.
real q2_unconditional_bound(real p);

// q1 q2 < 24 p^{1/2} (log p)^2 for odd-order characters, stated for p >= 10^18.
real q1q2_product_bound(real p);

// A character constant on (N, N+H] forces H < 7.1 p^{1/4} log p, stated for p >= 10^19.
real consecutive_run_bound(real p);

// Polya-Vinogradov route to q2: the raw bound 4((1/(3 log 3)) m^{1/2} log m
// + 6.5 m^{1/2}) + 2 and its simplification 2 m^{1/2} log m (valid m >= 10^15).
struct PvQ2Bound {
    real raw;
    real simplified;
};
PvQ2Bound pv_q2_bound(real m);

// Sum of n <= X coprime to u, split as ((1-1/u)/2) X^2 + theta*X with |theta| < 1.
// The exact sum is computed by integer enumeration.
struct CoprimeSumDecomposition {
    uint64_t exact_sum;
    real main_term;
    real theta;
};
CoprimeSumDecomposition coprime_sum_decompose(real X, uint64_t u);

// Sum of phi(q) over q <= X coprime to u, with the explicit lower bound
// (3/pi^2)(1-1/u) X^2 phi_sum_correction(X, u). Exact side by enumeration.
struct PhiSumBound {
    uint64_t exact_sum;
    real lower_bound;
};
PhiSumBound phi_sum_coprime(real X, uint64_t u);

enum class ImplicationStatus { pass, vacuous, fail };

// Three convexity implications used when balancing the window parameters:
//   h >= 6r+5  =>  (1/2h)(4r/(h-2))^r <= (1/(h+1))(4r/(h+1))^r
//   h >= 16r+2 =>  (h/(h-2))^r < 7/6
//   h >= 2r-1  =>  (2r-1)/h <= 2r/(h+1)
struct ConvexityResult {
    ImplicationStatus head_term, ratio_power, tail_term;
    real min_margin;  // over the non-vacuous implications; +inf if all vacuous

    bool ok() const {
        return head_term != ImplicationStatus::fail && ratio_power != ImplicationStatus::fail &&
               tail_term != ImplicationStatus::fail;
    }
};
ConvexityResult convexity_check(uint64_t h, uint64_t r);

// K * g(p) * p^{1/4} * log p, the main bound on the initial run length H.
real main_run_bound(real p);

}  // namespace nonres
