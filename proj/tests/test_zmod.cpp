#include <doctest.h>

#include <random>

#include "equitheta/zmod.hpp"
#include "oracles.hpp"

using namespace equitheta;
using namespace equitheta::zmod;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::int64_t n) {
    std::uniform_int_distribution<std::int64_t> d(0, n - 1);
    Matrix m(rows, Row(cols));
    for (auto& r : m)
        for (auto& x : r) x = d(rng);
    return m;
}

std::set<std::uint64_t> span_of(const Matrix& m, std::int64_t n, std::size_t cols) {
    std::vector<oracle::Vec> g(m.begin(), m.end());
    return oracle::span_set(g, n, cols);
}

}  // namespace

TEST_CASE("Howell form spans the same module and is canonical") {
    std::mt19937 rng(11);
    for (std::int64_t n : {4, 8, 9, 12, 27}) {
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t cols = 1 + trial % 3;
            const auto a = random_matrix(rng, 1 + trial % 4, cols, n);
            const auto h = howell_form(a, n, cols);
            const auto s = span_of(a, n, cols);
            REQUIRE(span_of(h, n, cols) == s);
            CHECK(span_size(h, n) == s.size());
            // a different generating set of the same module: random combinations plus the originals
            Matrix b = random_matrix(rng, 3, a.size(), n);
            Matrix mixed;
            for (const auto& coeffs : b) {
                Row r(cols, 0);
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = 0; j < cols; ++j) r[j] = (r[j] + coeffs[i] * a[i][j]) % n;
                mixed.push_back(r);
            }
            for (auto it = a.rbegin(); it != a.rend(); ++it) {
                Row r = *it;
                for (auto& x : r) x = (x * (n - 1)) % n;  // negated copies
                mixed.push_back(r);
            }
            CHECK(howell_form(mixed, n, cols) == h);
            // membership against the enumerated span
            for (int t = 0; t < 20; ++t) {
                const auto v = random_matrix(rng, 1, cols, n)[0];
                CHECK(in_span(h, v, n) == (s.count(oracle::encode(v, n)) != 0));
                const auto red = reduce(h, v, n);
                Row back = red.remainder;
                for (std::size_t i = 0; i < h.size(); ++i)
                    for (std::size_t j = 0; j < cols; ++j) back[j] = (back[j] + red.coeffs[i] * h[i][j]) % n;
                CHECK(back == v);
            }
        }
    }
}

TEST_CASE("Howell form examples") {
    // <2> in Z/4 needs no extra rows; <(2,1)> in (Z/4)^2 gains (0,2)
    CHECK(howell_form({{2}}, 4, 1) == Matrix{{2}});
    CHECK(howell_form({{2, 1}}, 4, 2) == Matrix{{2, 1}, {0, 2}});
    CHECK(howell_form({{3, 0}, {0, 0}}, 9, 2) == Matrix{{3, 0}});
    CHECK(howell_form({{5}}, 9, 1) == Matrix{{1}});
    CHECK(howell_form({}, 9, 2).empty());
}

TEST_CASE("left kernels are exactly the annihilating combinations") {
    std::mt19937 rng(7);
    for (std::int64_t n : {4, 6, 9}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t m = 1 + trial % 3, c = 1 + (trial / 3) % 2;
            const auto a = random_matrix(rng, m, c, n);
            const auto k = left_kernel(a, n, c);
            // brute-force kernel
            std::set<std::uint64_t> brute;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(n);
            for (std::uint64_t code = 0; code < total; ++code) {
                oracle::Vec x(m);
                auto t = code;
                for (auto& e : x) {
                    e = static_cast<std::int64_t>(t % n);
                    t /= n;
                }
                bool zero = true;
                for (std::size_t j = 0; j < c; ++j) {
                    std::int64_t s = 0;
                    for (std::size_t i = 0; i < m; ++i) s = (s + x[i] * a[i][j]) % n;
                    zero = zero && s == 0;
                }
                if (zero) brute.insert(oracle::encode(x, n));
            }
            CHECK(span_of(k, n, m) == brute);
        }
    }
}

TEST_CASE("Smith form over Z/l^k") {
    std::mt19937 rng(13);
    for (auto [ell, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}}) {
        std::int64_t n = 1;
        for (int i = 0; i < k; ++i) n *= ell;
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t cols = 1 + trial % 3;
            const auto a = random_matrix(rng, 1 + trial % 4, cols, n);
            const auto s = smith_prime_power(a, ell, k, cols);
            REQUIRE(s.diagonal.size() == cols);
            // |(Z/N)^cols / span| = prod N / d_j
            std::uint64_t quotient = 1;
            for (auto d : s.diagonal) {
                CHECK(n % d == 0);
                quotient *= static_cast<std::uint64_t>(d);
            }
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < cols; ++i) total *= static_cast<std::uint64_t>(n);
            CHECK(quotient == total / span_of(a, n, cols).size());
            for (std::size_t i = 1; i < cols; ++i) CHECK(s.diagonal[i - 1] <= s.diagonal[i]);
            // V V^{-1} = I
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    std::int64_t acc = 0;
                    for (std::size_t t = 0; t < cols; ++t) acc = (acc + s.v[i][t] * s.v_inverse[t][j]) % n;
                    CHECK(acc == (i == j ? 1 % n : 0));
                }
        }
    }
}
