#include <doctest.h>

#include <map>
#include <set>

#include "equitheta/errors.hpp"
#include "equitheta/ffq.hpp"

using namespace equitheta;
using namespace equitheta::ffq;

TEST_CASE("field axioms hold exhaustively for q <= 16") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        CAPTURE(q);
        const auto f = field(q);
        CHECK(f->q() == q);
        for (int a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                if (a != 0 && b != 0) CHECK(f->mul(a, b) != 0);
                for (int c = 0; c < q; ++c) {
                    REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                    REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                }
            }
        }
        // characteristic p
        int s = 0;
        for (int i = 0; i < f->p(); ++i) s = f->add(s, 1);
        CHECK(s == 0);
    }
}

TEST_CASE("prime power parsing rejects bad q") {
    CHECK(PrimePower::of(8).p == 2);
    CHECK(PrimePower::of(8).e == 3);
    CHECK(PrimePower::of(49).p == 7);
    CHECK_THROWS_AS(PrimePower::of(6), PreconditionError);
    CHECK_THROWS_AS(PrimePower::of(1), PreconditionError);
    CHECK_THROWS_AS(PrimePower::of(128), PreconditionError);
}

TEST_CASE("polynomial arithmetic and parsing") {
    const PolyRing r(3);
    const auto a = r.parse("t^2+2t+1");
    CHECK(a == FqPoly({1, 2, 1}));
    CHECK(r.to_string(a) == "t^2+2t+1");
    CHECK(r.parse(r.to_string(a)) == a);
    const auto b = r.parse("t+1");
    CHECK(r.mul(b, b) == a);
    const auto [qq, rr] = r.divmod(a, b);
    CHECK(qq == b);
    CHECK(rr.is_zero());
    CHECK(r.gcd(a, r.parse("t+2")).degree() == 0);
    CHECK(r.gcd(a, r.mul(b, r.t())) == b);
    CHECK(r.powmod(r.t(), 9, r.parse("t^3+2t+1")) == r.mod(r.parse("t^9"), r.parse("t^3+2t+1")));
}

TEST_CASE("monic enumeration") {
    CHECK(monic_polys(3, 0).size() == 1);
    CHECK(monic_polys(3, 2).size() == 9);
    CHECK(monic_polys(4, 3).size() == 64);
    std::set<FqPoly> seen;
    for (const auto& f : monic_polys(5, 2)) {
        CHECK(f.is_monic());
        CHECK(f.degree() == 2);
        seen.insert(f);
    }
    CHECK(seen.size() == 25);
    CHECK(monic_polys(2, 3) == monic_polys(2, 3));  // deterministic order
    CHECK_THROWS_AS(monic_polys(2, -1), PreconditionError);
    int count = 0;
    for_each_monic(3, 3, [&](const FqPoly&) { ++count; });
    CHECK(count == 27);
}

TEST_CASE("irreducibility agrees with a product sieve") {
    for (int q : {2, 3, 4, 5}) {
        const PolyRing r(q);
        for (int d = 1; d <= (q <= 3 ? 6 : 4); ++d) {
            // reducible = products of two monics of positive degree
            std::set<FqPoly> reducible;
            for (int i = 1; i <= d / 2; ++i)
                for (const auto& a : monic_polys(q, i))
                    for (const auto& b : monic_polys(q, d - i)) reducible.insert(r.mul(a, b));
            std::uint64_t irreducible = 0;
            for (const auto& f : monic_polys(q, d)) {
                const bool irr = !reducible.count(f);
                REQUIRE(r.is_irreducible(f) == irr);
                irreducible += irr;
            }
            CHECK(irreducible == necklace_count(q, d));
            CHECK(places_of_degree(q, d).size() == irreducible);
        }
    }
}

TEST_CASE("necklace counts and Mobius") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(7) == -1);
    CHECK(necklace_count(2, 1) == 2);
    CHECK(necklace_count(2, 4) == 3);
    CHECK(necklace_count(3, 2) == 3);
    CHECK(necklace_count(4, 3) == 20);
}

TEST_CASE("places") {
    const PolyRing r(2);
    const auto ps = places_up_to(2, 3);
    REQUIRE(ps.size() == 1 + 2 + 1 + 2);
    CHECK(ps[0].is_infinite());
    CHECK(ps[0].degree() == 1);
    CHECK(ps[1].poly() == r.parse("t"));
    CHECK(ps[3].poly() == r.parse("t^2+t+1"));
    CHECK(r.parse("t^3+t+1") == ps[4].poly());
    CHECK_THROWS_AS(Place::finite(r, r.parse("t^2+1")), PreconditionError);
    CHECK_THROWS_AS(Place::finite(PolyRing(3), FqPoly({1, 2})), PreconditionError);  // 2t + 1, not monic
    CHECK(parse_place(r, "inf").is_infinite());
    CHECK(parse_place(r, "t+1").poly() == r.parse("t+1"));
    CHECK(to_string(r, parse_place(r, "t^2+t+1")) == "t^2+t+1");
}

namespace {

/// Units of F_q[t]/m counted by brute-force gcd.
std::size_t coprime_count(const PolyRing& r, const FqPoly& m) {
    std::size_t n = 0;
    for (int d = 0; d < m.degree(); ++d)
        for (const auto& a : monic_polys(r.q(), d))
            if (r.gcd(a, m).degree() == 0) n += r.q() - 1;  // all scalar multiples
    return n;
}

}  // namespace

TEST_CASE("unit groups of residue rings") {
    for (int q : {2, 3, 4, 5}) {
        const PolyRing r(q);
        for (int d = 1; d <= (q <= 3 ? 3 : 2); ++d)
            for (const auto& m : monic_polys(q, d)) {
                CAPTURE(q);
                CAPTURE(r.to_string(m));
                const auto ug = unit_group(q, m);
                REQUIRE(ug.order() == coprime_count(r, m));
                int prod = 1;
                for (std::size_t i = 0; i < ug.structure.size(); ++i) {
                    prod *= ug.structure[i].second;
                    if (i > 0) CHECK(ug.structure[i].second % ug.structure[i - 1].second == 0);
                }
                CHECK(static_cast<std::size_t>(prod) == ug.order());
                // exponent vectors reproduce every element from the generators
                for (std::size_t e = 0; e < ug.order(); ++e) {
                    FqPoly x = r.constant(1);
                    for (std::size_t i = 0; i < ug.structure.size(); ++i)
                        x = r.mod(r.mul(x, r.powmod(ug.structure[i].first, ug.exponents[e][i], m)), m);
                    if (m.degree() == 0) continue;
                    REQUIRE(x == r.mod(ug.elements[e], m));
                }
            }
    }
    const PolyRing r3(3);
    CHECK(unit_group(3, r3.parse("t")).order() == 2);
    CHECK(unit_group(3, r3.parse("t^2")).order() == 6);
    CHECK(unit_group(3, r3.parse("t^2+t")).order() == 4);
    CHECK(unit_group(3, r3.parse("t^2+1")).order() == 8);
    CHECK_FALSE(unit_group(3, r3.parse("t^2")).exponents_of(r3, r3.parse("t^3")).has_value());
}

TEST_CASE("enumeration cap") {
    const auto old = enumeration_cap();
    set_enumeration_cap(1000);
    CHECK_THROWS_AS(checked_power(2, 20), CapExceeded);
    CHECK(checked_power(3, 6) == 729);
    set_enumeration_cap(old);
}
