#include "equitheta/zmod.hpp"

#include <numeric>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::zmod {

using intmath::mod;
using intmath::mulmod;

namespace {

void axpy(Row& y, std::int64_t a, const Row& x, std::int64_t n) {  // y += a x
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] = mod(y[i] + mulmod(a, x[i], n), n);
}

bool is_zero(const Row& r) {
    for (auto x : r)
        if (x != 0) return false;
    return true;
}

// A unit u mod n with u * a == gcd(a, n) (mod n).
std::int64_t normalizing_unit(std::int64_t a, std::int64_t n) {
    const std::int64_t g = std::gcd(a, n);
    const std::int64_t h = a / g;
    const std::int64_t m = n / g;
    std::int64_t u = m == 1 ? 1 : intmath::invmod(h, m);
    while (std::gcd(u, n) != 1) u += m;
    return u % n;
}

}  // namespace

std::size_t pivot_col(const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) return i;
    return r.size();
}

Matrix howell_form(Matrix rows, std::int64_t n, std::size_t ncols) {
    if (n < 1) throw PreconditionError("howell_form: modulus must be positive");
    Matrix pending;
    for (auto& r : rows) {
        if (r.size() != ncols) throw PreconditionError("howell_form: ragged rows");
        for (auto& x : r) x = mod(x, n);
        if (!is_zero(r)) pending.push_back(std::move(r));
    }
    Matrix out;
    for (std::size_t c = 0; c < ncols && !pending.empty(); ++c) {
        // fold every row with a nonzero entry in column c into one pivot row
        int piv = -1;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (pending[i][c] == 0) continue;
            if (piv < 0) {
                piv = static_cast<int>(i);
                continue;
            }
            Row& p = pending[piv];
            Row& r = pending[i];
            auto [g, s, t] = intmath::gcdex(p[c], r[c]);
            const std::int64_t a = p[c] / g, b = r[c] / g;
            Row np(ncols), nr(ncols);
            for (std::size_t j = c; j < ncols; ++j) {
                np[j] = mod(mulmod(mod(s, n), p[j], n) + mulmod(mod(t, n), r[j], n), n);
                nr[j] = mod(mulmod(mod(-b, n), p[j], n) + mulmod(mod(a, n), r[j], n), n);
            }
            p = std::move(np);
            r = std::move(nr);
        }
        if (piv < 0) continue;
        Row p = std::move(pending[piv]);
        pending.erase(pending.begin() + piv);
        const std::int64_t u = normalizing_unit(p[c], n);
        for (auto& x : p) x = mulmod(x, u, n);
        const std::int64_t ann = n / p[c];
        if (ann != n) {
            Row extra = p;
            for (auto& x : extra) x = mulmod(x, ann, n);
            if (!is_zero(extra)) pending.push_back(std::move(extra));
        }
        std::erase_if(pending, is_zero);
        out.push_back(std::move(p));
    }
    // reduce above pivots
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t c = pivot_col(out[i]);
        const std::int64_t p = out[i][c];
        for (std::size_t j = 0; j < i; ++j) {
            const std::int64_t f = out[j][c] / p;
            if (f != 0) axpy(out[j], mod(-f, n), out[i], n);
        }
    }
    return out;
}

bool Reduction::member() const { return is_zero(remainder); }

Reduction reduce(const Matrix& howell, Row v, std::int64_t n) {
    Reduction red;
    red.coeffs.assign(howell.size(), 0);
    for (auto& x : v) x = mod(x, n);
    for (std::size_t i = 0; i < howell.size(); ++i) {
        const std::size_t c = pivot_col(howell[i]);
        const std::int64_t f = v[c] / howell[i][c];
        if (f != 0) {
            axpy(v, mod(-f, n), howell[i], n);
            red.coeffs[i] = f;
        }
    }
    red.remainder = std::move(v);
    return red;
}

bool in_span(const Matrix& howell, const Row& v, std::int64_t n) { return reduce(howell, v, n).member(); }

bool contains(const Matrix& b_howell, const Matrix& a, std::int64_t n) {
    for (const auto& r : a)
        if (!in_span(b_howell, r, n)) return false;
    return true;
}

std::uint64_t span_size(const Matrix& howell, std::int64_t n) {
    unsigned __int128 s = 1;
    for (const auto& r : howell) {
        s *= static_cast<unsigned __int128>(n / r[pivot_col(r)]);
        if (s > (static_cast<unsigned __int128>(1) << 62)) return std::uint64_t{1} << 62;
    }
    return static_cast<std::uint64_t>(s);
}

Matrix left_kernel(const Matrix& a, std::int64_t n, std::size_t ncols) {
    const std::size_t m = a.size();
    Matrix aug;
    aug.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Row r(ncols + m, 0);
        for (std::size_t j = 0; j < ncols; ++j) r[j] = a[i][j];
        r[ncols + i] = 1;
        aug.push_back(std::move(r));
    }
    Matrix h = howell_form(std::move(aug), n, ncols + m);
    Matrix out;
    for (const auto& r : h)
        if (pivot_col(r) >= ncols) out.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(ncols), r.end());
    return out;
}

Smith smith_prime_power(Matrix rows, std::int64_t ell, int k, std::size_t ncols) {
    const std::int64_t n = intmath::ipow(ell, k);
    const std::size_t m = rows.size();
    for (auto& r : rows)
        for (auto& x : r) x = mod(x, n);
    Smith out;
    out.v.assign(ncols, Row(ncols, 0));
    out.v_inverse.assign(ncols, Row(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i) out.v[i][i] = out.v_inverse[i][i] = 1;

    auto val = [&](std::int64_t x) { return x == 0 ? k : intmath::valuation(x, ell); };
    // col_j += f * col_t, mirrored on V and V^{-1}
    auto col_add = [&](std::size_t j, std::size_t t, std::int64_t f) {
        f = mod(f, n);
        if (f == 0) return;
        for (std::size_t i = 0; i < m; ++i) rows[i][j] = mod(rows[i][j] + mulmod(f, rows[i][t], n), n);
        for (std::size_t i = 0; i < ncols; ++i) out.v[i][j] = mod(out.v[i][j] + mulmod(f, out.v[i][t], n), n);
        axpy(out.v_inverse[t], mod(-f, n), out.v_inverse[j], n);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(rows[i][x], rows[i][y]);
        for (std::size_t i = 0; i < ncols; ++i) std::swap(out.v[i][x], out.v[i][y]);
        std::swap(out.v_inverse[x], out.v_inverse[y]);
    };
    auto col_scale = [&](std::size_t j, std::int64_t u) {  // u a unit
        const std::int64_t ui = intmath::invmod(u, n);
        for (std::size_t i = 0; i < m; ++i) rows[i][j] = mulmod(rows[i][j], u, n);
        for (std::size_t i = 0; i < ncols; ++i) out.v[i][j] = mulmod(out.v[i][j], u, n);
        for (auto& x : out.v_inverse[j]) x = mulmod(x, ui, n);
    };

    std::size_t t = 0;
    for (; t < ncols && t < m; ++t) {
        std::size_t bi = m, bj = ncols;
        int best = k;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < ncols; ++j)
                if (rows[i][j] != 0 && val(rows[i][j]) < best) {
                    best = val(rows[i][j]);
                    bi = i;
                    bj = j;
                }
        if (bi == m) break;
        std::swap(rows[t], rows[bi]);
        col_swap(t, bj);
        const std::int64_t d = intmath::ipow(ell, best);
        col_scale(t, intmath::invmod(rows[t][t] / d, n));
        for (std::size_t j = t + 1; j < ncols; ++j)
            if (rows[t][j] != 0) col_add(j, t, -(rows[t][j] / d));
        for (std::size_t i = t + 1; i < m; ++i)
            if (rows[i][t] != 0) axpy(rows[i], mod(-(rows[i][t] / d), n), rows[t], n);
        out.diagonal.push_back(d);
    }
    while (out.diagonal.size() < ncols) out.diagonal.push_back(n);
    return out;
}

}  // namespace equitheta::zmod
