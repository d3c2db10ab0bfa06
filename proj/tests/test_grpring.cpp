#include <doctest.h>

#include <numeric>
#include <random>

#include "equitheta/grpring.hpp"

using namespace equitheta;
using namespace equitheta::grpring;

namespace {

std::vector<std::vector<int>> small_groups() {
    return {{1}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {2, 4}, {3, 3}, {8}, {2, 2, 2}, {12}, {2, 6}, {10}, {11}, {7}, {9}};
}

ModElem decode(const GroupPtr& g, std::int64_t n, int code) {
    std::vector<std::int64_t> c(g->order());
    for (auto& x : c) {
        x = code % n;
        code /= static_cast<int>(n);
    }
    return ModElem(g, ModularRing(n), c);
}

int encode(const ModElem& x) {
    int code = 0;
    for (int i = x.group_ref().order(); i-- > 0;) code = code * static_cast<int>(x.ring().modulus()) + static_cast<int>(x[i]);
    return code;
}

}  // namespace

TEST_CASE("group tables") {
    for (const auto& orders : small_groups()) {
        const FinAbGroup g(orders);
        CHECK(g.order() == std::accumulate(orders.begin(), orders.end(), 1, std::multiplies<>()));
        for (int a = 0; a < g.order(); ++a) {
            CHECK(g.mul(a, g.inv(a)) == 0);
            CHECK(g.index(g.exponents(a)) == a);
            CHECK(g.parse_label(g.label(a)) == a);
            CHECK(g.exponent() % g.element_order(a) == 0);
            CHECK(g.pow(a, g.element_order(a)) == 0);
            for (int b = 0; b < g.order(); ++b) CHECK(g.mul(a, b) == g.mul(b, a));
        }
    }
    const FinAbGroup c3({3});
    CHECK(c3.label(1) == "g");
    CHECK(c3.label(2) == "g^2");
    CHECK(c3.label(0) == "1");
}

TEST_CASE("ring axioms exhaustively over Z/4 for |G| <= 4") {
    for (const auto& orders : std::vector<std::vector<int>>{{1}, {2}, {3}, {4}, {2, 2}}) {
        CAPTURE(orders.size());
        const auto g = make_group(orders);
        int size = 1;
        for (int i = 0; i < g->order(); ++i) size *= 4;
        std::vector<ModElem> elems;
        for (int c = 0; c < size; ++c) elems.push_back(decode(g, 4, c));
        // multiplication and addition tables, then axioms by table lookup
        std::vector<int> mul(static_cast<std::size_t>(size) * size), add(static_cast<std::size_t>(size) * size);
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) {
                mul[static_cast<std::size_t>(a) * size + b] = encode(elems[a] * elems[b]);
                add[static_cast<std::size_t>(a) * size + b] = encode(elems[a] + elems[b]);
            }
        const int one = encode(ModElem::one(g, ModularRing(4)));
        bool ok = true;
        for (int a = 0; a < size && ok; ++a) {
            ok = ok && mul[static_cast<std::size_t>(a) * size + one] == a;
            for (int b = 0; b < size && ok; ++b) {
                const auto ab = mul[static_cast<std::size_t>(a) * size + b];
                ok = ok && ab == mul[static_cast<std::size_t>(b) * size + a];
                ok = ok && encode(iota(elems[ab])) == encode(iota(elems[a]) * iota(elems[b]));
                for (int c = 0; c < size && ok; ++c) {
                    const auto bc = mul[static_cast<std::size_t>(b) * size + c];
                    ok = ok && mul[static_cast<std::size_t>(ab) * size + c] == mul[static_cast<std::size_t>(a) * size + bc];
                    const auto b_plus_c = add[static_cast<std::size_t>(b) * size + c];
                    const auto ac = mul[static_cast<std::size_t>(a) * size + c];
                    ok = ok && mul[static_cast<std::size_t>(a) * size + b_plus_c] == add[static_cast<std::size_t>(ab) * size + ac];
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("iota is an involution and translate matches basis multiplication") {
    const auto g = make_group({2, 4});
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        IntElem x(g);
        for (int h = 0; h < g->order(); ++h) x.set(h, coeff(rng));
        CHECK(iota(iota(x)) == x);
        CHECK(x.augmentation() == iota(x).augmentation());
        for (int h = 0; h < g->order(); ++h) CHECK(translate(x, h) == IntElem::basis(g, h) * x);
    }
}

TEST_CASE("characters are homomorphisms and orthogonal for every group of order <= 12") {
    for (const auto& orders : small_groups()) {
        const auto g = make_group(orders);
        if (g->order() > 12) continue;
        const auto chars = characters(g);
        REQUIRE(static_cast<int>(chars.size()) == g->order());
        CHECK(chars[0].is_trivial());
        const int n = g->exponent();
        for (const auto& chi : chars) {
            for (int a = 0; a < g->order(); ++a) {
                CHECK(chi.value(g->inv(a)) * chi.value(a) == CyclotomicInt::from_int(n, 1));
                for (int b = 0; b < g->order(); ++b) CHECK(chi.value(g->mul(a, b)) == chi.value(a) * chi.value(b));
            }
            // orthogonality: sum_g chi(g) psi(g^{-1}) = |G| [chi = psi]; implies injectivity of the transform
            for (const auto& psi : chars) {
                CyclotomicInt s(n);
                for (int a = 0; a < g->order(); ++a) s += chi.value(a) * psi.value(g->inv(a));
                CHECK(s == CyclotomicInt::from_int(n, chi == psi ? g->order() : 0));
            }
        }
    }
}

TEST_CASE("char_eval is a ring homomorphism on polynomials") {
    const auto g = make_group({6});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_poly = [&](int deg) {
        std::vector<IntElem> c;
        for (int i = 0; i <= deg; ++i) {
            IntElem x(g);
            for (int h = 0; h < g->order(); ++h) x.set(h, coeff(rng));
            c.push_back(x);
        }
        return IntPoly(g, {}, c);
    };
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_poly(2), h = random_poly(3);
        for (const auto& chi : characters(g)) {
            auto lhs = char_eval(f * h, chi);
            auto rhs = poly_mul(char_eval(f, chi), char_eval(h, chi));
            trim(lhs);
            trim(rhs);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("eval_poly examples") {
    const auto g = make_group({2});
    const auto one = IntElem::one(g), gen = IntElem::basis(g, 1);
    // 1 - (2 - g) u at u = 3 is -5 + 3g
    const IntPoly f(g, {}, {one, gen - one.scaled(2)});
    const auto v = eval_poly(f, 3);
    CHECK(v[0] == -5);
    CHECK(v[1] == 3);
    const auto w = eval_poly(f, mpq_class(1, 3));
    CHECK(w[0] == mpq_class(1, 3));
    CHECK(w[1] == mpq_class(1, 3));
}

TEST_CASE("norm and inverse") {
    const auto g = make_group({2});
    IntElem x(g);
    x.set(0, -5);
    x.set(1, 3);
    CHECK(norm(x) == (-5 + 3) * (-5 - 3));
    const auto inv = inverse(to_rational(x));
    CHECK(inv * to_rational(x) == RatElem::one(g));
    IntElem zd(g);
    zd.set(0, 1);
    zd.set(1, 1);
    CHECK(norm(zd) == 0);
    CHECK_THROWS_AS(inverse(to_rational(zd)), PreconditionError);
}

TEST_CASE("cyclotomic arithmetic") {
    const auto z = CyclotomicInt::root_power(6, 1);
    auto p = CyclotomicInt::from_int(6, 1);
    for (int i = 0; i < 6; ++i) p *= z;
    CHECK(p == CyclotomicInt::from_int(6, 1));
    CHECK((z * z * z) == CyclotomicInt::from_int(6, -1));
    CHECK(std::abs(z.to_complex() - std::polar(1.0, 2 * M_PI / 6)) < 1e-12);
    auto d = CyclotomicInt::from_int(4, 6);
    d.divexact(3);
    CHECK(d == CyclotomicInt::from_int(4, 2));
    auto bad = CyclotomicInt::from_int(4, 5);
    CHECK_THROWS_AS(bad.divexact(3), ConsistencyError);
}

TEST_CASE("decomposition census") {
    // Z_3[C6]: Delta = C2, two rational characters, Sylow part C3
    const FinAbGroup c6({6});
    const auto d = decomposition_census(c6, 3);
    CHECK(d.delta_order == 2);
    CHECK(d.sylow_order == 3);
    CHECK(d.classes.size() == 2);
    CHECK(d.consistent());
    // Z_2[C5]: characters of order 5 form one Frobenius orbit of size 4
    const auto e = decomposition_census(FinAbGroup({5}), 2);
    CHECK(e.classes.size() == 2);
    CHECK(e.degrees == std::vector<int>{1, 4});
    CHECK(e.consistent());
    // Z_5[C4]: 5 = 1 mod 4, all characters rational over Q_5
    const auto f = decomposition_census(FinAbGroup({4}), 5);
    CHECK(f.classes.size() == 4);
    CHECK(f.consistent());
    // Z_2[C2 x C2] is local
    const auto l = decomposition_census(FinAbGroup({2, 2}), 2);
    CHECK(l.classes.size() == 1);
    CHECK(l.sylow_order == 4);
}
