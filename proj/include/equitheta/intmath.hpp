#pragma once

// Small-integer helpers shared by the finite-field and group-ring code.
// Moduli stay below 2^62 so products fit in __int128.

#include <cstdint>
#include <tuple>
#include <vector>

namespace equitheta::intmath {

bool is_prime(long long n);

inline long long mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

inline long long mulmod(long long a, long long b, long long n) {
    return static_cast<long long>((static_cast<__int128>(a) * b) % n);
}

long long powmod(long long base, unsigned long long e, long long n);

/// Inverse of a modulo n; throws PreconditionError when gcd(a, n) != 1.
long long invmod(long long a, long long n);

/// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
std::tuple<long long, long long, long long> gcdex(long long a, long long b);

/// Largest v with p^v | a (a != 0).
int valuation(long long a, long long p);

/// p^e, throwing PreconditionError on overflow past 2^62.
long long ipow(long long p, int e);

/// Smith reduction of an integer relation matrix with column transforms.
/// For rows R (m x k, full column rank), finds unimodular Q with
/// R*Q = P^{-1}*diag(d_1..d_k), d_1 | d_2 | ... (positive).
struct SmithColumns {
    std::vector<long long> diagonal;
    std::vector<std::vector<long long>> col;          // Q
    std::vector<std::vector<long long>> col_inverse;  // Q^{-1}
};

SmithColumns smith_columns(std::vector<std::vector<long long>> rows, std::size_t k);

}  // namespace equitheta::intmath
