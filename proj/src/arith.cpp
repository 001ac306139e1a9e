#include "nonres/arith.hpp"

#include <algorithm>

namespace nonres {

PrimeTable sieve(uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve: limit must be >= 2");
    if (limit > (uint64_t{1} << 31)) throw std::domain_error("sieve: limit above 2^31");
    PrimeTable t;
    t.limit = limit;
    t.smallest_factor.assign(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (t.smallest_factor[i] == 0) {
            t.smallest_factor[i] = static_cast<uint32_t>(i);
            t.primes.push_back(static_cast<uint32_t>(i));
            for (uint64_t j = i * i; j <= limit; j += i)
                if (t.smallest_factor[j] == 0) t.smallest_factor[j] = static_cast<uint32_t>(i);
        }
    }
    return t;
}

int mobius(uint64_t n) {
    if (n == 0) throw std::domain_error("mobius: n must be >= 1");
    int factors = 0;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

uint64_t euler_phi(uint64_t n) {
    if (n == 0) throw std::domain_error("euler_phi: n must be >= 1");
    uint64_t result = n;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            result -= result / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<uint32_t> totient_table(uint32_t limit) {
    std::vector<uint32_t> phi(static_cast<size_t>(limit) + 1);
    for (uint32_t i = 0; i <= limit; ++i) phi[i] = i;
    for (uint32_t i = 2; i <= limit; ++i) {
        if (phi[i] == i) {  // i prime
            for (uint64_t j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
        }
    }
    return phi;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return result;
}

bool is_prime64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sufficient witness set for all n < 3.3 * 10^24, hence for all 64-bit n.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t next_prime(uint64_t n) {
    if (n < 2) return 2;
    uint64_t c = n + 1 + (n & 1);  // next odd > n (or 3 when n = 2)
    if (n == 2) c = 3;
    while (!is_prime64(c)) c += 2;
    return c;
}

namespace {

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

uint64_t primitive_root(uint64_t p) {
    if (!is_prime64(p)) throw std::domain_error("primitive_root: p must be prime");
    if (p == 2) return 1;
    const uint64_t m = p - 1;
    const auto qs = distinct_prime_factors(m);
    for (uint64_t g = 2; g < p; ++g) {
        bool generates = true;
        for (uint64_t q : qs) {
            if (pow_mod(g, m / q, p) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw std::logic_error("primitive_root: no generator found");
}

IndexTable build_index_table(uint64_t p, uint64_t table_limit) {
    if (!is_prime64(p)) throw std::domain_error("build_index_table: p must be prime");
    if (p > table_limit)
        throw capacity_error("build_index_table: p exceeds the table limit; use the quadratic fast path");
    if (p > (uint64_t{1} << 31)) throw capacity_error("build_index_table: p above 2^31");
    IndexTable t;
    t.p = p;
    t.g = primitive_root(p);
    t.ind.assign(p, 0);
    uint64_t cur = 1;
    for (uint64_t k = 0; k + 1 < p; ++k) {
        t.ind[cur] = static_cast<uint32_t>(k);
        cur = mul_mod(cur, t.g, p);
    }
    return t;
}

int jacobi(int64_t a, uint64_t n) {
    if (n == 0 || n % 2 == 0) throw std::domain_error("jacobi: n must be odd and positive");
    // (a/n) depends only on a mod n for odd positive n.
    uint64_t x = static_cast<uint64_t>(((a % static_cast<int64_t>(n)) + static_cast<int64_t>(n))) % n;
    int sign = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            uint64_t r = n & 7;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
        x %= n;
    }
    return (n == 1) ? sign : 0;
}

}  // namespace nonres
