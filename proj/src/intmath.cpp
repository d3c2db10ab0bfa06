#include "equitheta/intmath.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "equitheta/errors.hpp"

namespace equitheta::intmath {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long powmod(long long base, unsigned long long e, long long n) {
    long long result = 1 % n;
    base = mod(base, n);
    while (e > 0) {
        if (e & 1ULL) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        e >>= 1ULL;
    }
    return result;
}

std::tuple<long long, long long, long long> gcdex(long long a, long long b) {
    long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long long qt = old_r / r;
        old_r = std::exchange(r, old_r - qt * r);
        old_s = std::exchange(s, old_s - qt * s);
        old_t = std::exchange(t, old_t - qt * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

long long invmod(long long a, long long n) {
    auto [g, s, t] = gcdex(mod(a, n), n);
    (void)t;
    if (g != 1)
        throw PreconditionError(std::to_string(a) + " is not invertible modulo " + std::to_string(n));
    return mod(s, n);
}

int valuation(long long a, long long p) {
    if (a == 0) throw PreconditionError("valuation of zero");
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

long long ipow(long long p, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (1LL << 62) / p) throw PreconditionError("integer power overflows 2^62");
        r *= p;
    }
    return r;
}

SmithColumns smith_columns(std::vector<std::vector<long long>> a, std::size_t k) {
    const std::size_t m = a.size();
    SmithColumns out;
    out.col.assign(k, std::vector<long long>(k, 0));
    out.col_inverse.assign(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) out.col[i][i] = out.col_inverse[i][i] = 1;

    auto col_sub = [&](std::size_t j, std::size_t t, long long f) {  // col_j -= f * col_t
        for (std::size_t i = 0; i < m; ++i) a[i][j] -= f * a[i][t];
        for (std::size_t i = 0; i < k; ++i) out.col[i][j] -= f * out.col[i][t];
        for (std::size_t i = 0; i < k; ++i) out.col_inverse[t][i] += f * out.col_inverse[j][i];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < k; ++i) std::swap(out.col[i][x], out.col[i][y]);
        std::swap(out.col_inverse[x], out.col_inverse[y]);
    };

    for (std::size_t t = 0; t < k; ++t) {
        while (true) {
            // smallest nonzero entry in the trailing block
            std::size_t bi = m, bj = k;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < k; ++j)
                    if (a[i][j] != 0 && (bi == m || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) throw PreconditionError("smith_columns: relation matrix is rank deficient");
            std::swap(a[t], a[bi]);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                const long long f = a[i][t] / a[t][t];
                if (f != 0)
                    for (std::size_t j = t; j < k; ++j) a[i][j] -= f * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                const long long f = a[t][j] / a[t][t];
                if (f != 0) col_sub(j, t, f);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition on the remaining block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < k; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            for (std::size_t j = t; j < k; ++j) a[t][j] += a[bad][j];
        }
        if (a[t][t] < 0) {
            // negate column t
            for (std::size_t i = 0; i < m; ++i) a[i][t] = -a[i][t];
            for (std::size_t i = 0; i < k; ++i) out.col[i][t] = -out.col[i][t];
            for (std::size_t i = 0; i < k; ++i) out.col_inverse[t][i] = -out.col_inverse[t][i];
        }
        out.diagonal.push_back(a[t][t]);
    }
    return out;
}

}  // namespace equitheta::intmath
