#pragma once

#include <cstdint>
#include <vector>

#include "nonres/errors.hpp"

namespace nonres {

inline constexpr uint64_t kDefaultTableLimit = 1'000'000;

// Primes and least prime factors up to a fixed limit.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint32_t> primes;           // ascending primes <= limit
    std::vector<uint32_t> smallest_factor;  // [n] = least prime factor of n, 2 <= n <= limit

    bool is_prime(uint64_t n) const {
        return n >= 2 && n <= limit && smallest_factor[n] == n;
    }
};

PrimeTable sieve(uint64_t limit);

int mobius(uint64_t n);
uint64_t euler_phi(uint64_t n);

// phi(n) for all n <= limit, sieve-built.
std::vector<uint32_t> totient_table(uint32_t limit);

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);

// Deterministic Miller-Rabin, valid for every 64-bit n.
bool is_prime64(uint64_t n);
uint64_t next_prime(uint64_t n);

// Smallest generator of (Z/pZ)*.
uint64_t primitive_root(uint64_t p);

// Discrete logs to the smallest primitive root: g^ind[n] = n (mod p),
// ind a bijection from {1..p-1} onto {0..p-2} with ind[1] = 0.
struct IndexTable {
    uint64_t p = 0;
    uint64_t g = 0;
    std::vector<uint32_t> ind;  // indexed by n in [1, p-1]
};

IndexTable build_index_table(uint64_t p, uint64_t table_limit = kDefaultTableLimit);

// Jacobi symbol (a/n) for odd n >= 1; equals the Legendre symbol when n is prime.
int jacobi(int64_t a, uint64_t n);

}  // namespace nonres
