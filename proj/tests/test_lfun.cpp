#include <doctest.h>

#include "equitheta/errors.hpp"
#include "equitheta/lfun.hpp"
#include "oracles.hpp"

using namespace equitheta;
using namespace equitheta::lfun;
using grpring::IntElem;

namespace {

ModelPtr carlitz(int q, const std::string& m) {
    return std::make_shared<const ExtensionModel>(ExtensionModel::carlitz(q, ffq::PolyRing(q).parse(m)));
}
ModelPtr constant_field(int q, int r) {
    return std::make_shared<const ExtensionModel>(ExtensionModel::constant_field(q, r));
}
Place place(const ModelPtr& m, const std::string& s) { return ffq::parse_place(m->ring(), s); }
std::vector<Place> places(const ModelPtr& m, std::initializer_list<const char*> ss) {
    std::vector<Place> out;
    for (const char* s : ss) out.push_back(place(m, s));
    return out;
}
LDataRequest req(const ModelPtr& m, std::vector<Place> s0, std::vector<Place> t0) {
    LDataRequest r;
    r.model = m;
    r.s0 = std::move(s0);
    r.t0 = std::move(t0);
    return r;
}

IntElem ie(const GroupPtr& g, std::vector<long> c) {
    IntElem x(g);
    for (std::size_t i = 0; i < c.size(); ++i) x.set(static_cast<int>(i), c[i]);
    return x;
}

void check_against_oracle(const LDataRequest& r) {
    const auto th = theta(r);
    for (const auto& chi : grpring::characters(r.model->group())) {
        auto lhs = grpring::char_eval(th.poly, chi);
        auto rhs = oracle::character_series(r, chi, th.dmax);
        grpring::trim(lhs);
        grpring::trim(rhs);
        CHECK(lhs == rhs);
    }
}

}  // namespace

TEST_CASE("worked Carlitz example") {
    const auto m = carlitz(3, "t");
    const auto r = req(m, places(m, {"inf", "t"}), places(m, {"t+1"}));
    const auto th = theta(r);
    const auto& g = m->group();
    CHECK(th.poly == IntPoly(g, {}, {ie(g, {1, 0}), ie(g, {-2, 1})}));
    check_against_oracle(r);
    const auto v = theta_special(th, 2);
    CHECK(v == grpring::to_rational(ie(g, {-5, 3})));
    CHECK(twist_project(th, 2) == v);
    CHECK(twist_project(th, 1) == grpring::eval_poly(th.poly, 1));
}

TEST_CASE("constant field example telescopes to 1") {
    const auto m = constant_field(2, 2);
    const auto r = req(m, places(m, {"inf"}), places(m, {"t"}));
    const auto th = theta(r);
    CHECK(th.poly == IntPoly(m->group(), {}, {IntElem::one(m->group())}));
    check_against_oracle(r);
    for (int n = 2; n <= 5; ++n) CHECK(theta_special(th, n) == grpring::RatElem::one(m->group()));
}

TEST_CASE("character compatibility across models") {
    for (const auto& [m, t0] : std::vector<std::pair<ModelPtr, const char*>>{{carlitz(3, "t^2"), "t+1"},
                                                                            {carlitz(2, "t^2+t"), "t^2+t+1"},
                                                                            {carlitz(4, "t"), "t+1"},
                                                                            {carlitz(5, "t"), "t+2"},
                                                                            {constant_field(3, 3), "t"},
                                                                            {constant_field(4, 2), "t^2+t+2"}}) {
        CAPTURE(m->describe());
        std::vector<Place> s0{Place::infinity()};
        for (const auto& v : m->ramified())
            if (!v.is_infinite()) s0.push_back(v);
        check_against_oracle(req(m, s0, places(m, {t0})));
    }
}

TEST_CASE("T0 empty gives per-character rational functions") {
    // trivial group on F_3(t): 1 / (1 - 3u)
    const auto m = constant_field(3, 1);
    const auto th = theta(req(m, places(m, {"inf"}), {}));
    REQUIRE(th.is_rational());
    REQUIRE(th.components.size() == 1);
    auto num = th.components[0].numerator, den = th.components[0].denominator;
    grpring::trim(num);
    grpring::trim(den);
    CHECK(num == grpring::CyclotomicPoly{grpring::CyclotomicInt::from_int(1, 1)});
    CHECK(den == grpring::CyclotomicPoly{grpring::CyclotomicInt::from_int(1, 1), grpring::CyclotomicInt::from_int(1, -3)});
    CHECK(theta_special(th, 2) == grpring::RatElem::scalar(m->group(), mpq_class(-1, 8)));

    // Carlitz q=3 m=t: trivial character (1 - u)/(1 - 3u), value 1/4 at u = 3
    const auto c = carlitz(3, "t");
    const auto tc = theta(req(c, places(c, {"inf", "t"}), {}));
    const auto& triv = tc.components[0];
    CHECK(triv.chi.is_trivial());
    const auto v = theta_special(tc, 2);
    // the trivial-character image of the value: sum of coefficients
    CHECK(v[0] + v[1] == mpq_class(1, 4));
    // nontrivial character: L = 1, so chi(value) = v[0] - v[1] = 1
    CHECK(v[0] - v[1] == 1);
}

TEST_CASE("delta_t examples") {
    const auto m = carlitz(3, "t");
    const auto& g = m->group();
    CHECK(delta_t(*m, places(m, {"t+1"}), 2) == ie(g, {-8, 0}));
    CHECK(delta_t(*m, places(m, {"t+2"}), 2) == ie(g, {1, -9}));
    CHECK(delta_t(*m, places(m, {"t+2"}), 0) == ie(g, {1, -1}));
    CHECK(delta_t(*m, places(m, {"t+1", "t+2"}), 1) == ie(g, {-2, 0}) * ie(g, {1, -3}));
}

TEST_CASE("Lvalues identity and mod-p units") {
    for (const auto& [m, t0] : std::vector<std::pair<ModelPtr, const char*>>{
             {carlitz(3, "t"), "t+1"}, {carlitz(3, "t^2"), "t+2"}, {constant_field(4, 2), "t"},
             {constant_field(4, 3), "t+1"}, {constant_field(2, 2), "t^2+t+1"}, {carlitz(2, "t^3"), "t+1"}}) {
        CAPTURE(m->describe());
        std::vector<Place> s0{Place::infinity()};
        for (const auto& v : m->ramified())
            if (!v.is_infinite()) s0.push_back(v);
        const auto th = theta(req(m, s0, places(m, {t0})));
        for (int n = 2; n <= 5; ++n) {
            CHECK(twist_project(th, n) == theta_special(th, n));
            const auto u = unit_mod_p_check(th, n, 4);
            CHECK(u.integral_form);
            CHECK(u.congruent);
            CHECK(u.invertible);
        }
    }
}

TEST_CASE("explicit inverse modulo p^k") {
    const auto g = grpring::make_group({2});
    const auto x = ie(g, {-5, 3});
    for (int k = 1; k <= 4; ++k) {
        const auto inv = unit_inverse_mod(x, 3, k);
        CHECK(inv * grpring::reduce(x, inv.ring().modulus()) == grpring::ModElem::one(g, inv.ring()));
    }
}

TEST_CASE("twist_project on a constant-field model with nontrivial constant degrees") {
    const auto m = constant_field(2, 3);
    const auto th = theta(req(m, places(m, {"inf"}), places(m, {"t"})));
    for (int n = 1; n <= 5; ++n) CHECK(twist_project(th, n) == theta_special(th, n));
}

TEST_CASE("Euler factors") {
    const auto m = carlitz(3, "t");
    CHECK(euler_factor_check(req(m, places(m, {"inf", "t"}), places(m, {"t+1"})), place(m, "t+2")).pass);
    const auto c = constant_field(2, 2);
    CHECK(euler_factor_check(req(c, places(c, {"inf"}), places(c, {"t^2+t+1"})), place(c, "t")).pass);
    const auto big = carlitz(3, "t^2");
    for (const auto& v : ffq::places_up_to(3, 2)) {
        if (v.is_infinite() || v == place(big, "t") || v == place(big, "t+1")) continue;
        CHECK(euler_factor_check(req(big, places(big, {"inf", "t"}), places(big, {"t+1"})), v).pass);
    }
    // corrupted Frobenius breaks the identity
    auto bad = ExtensionModel::carlitz(3, ffq::PolyRing(3).parse("t"));
    bad.corrupt_frobenius(place(m, "t+2"), 0);
    const auto badp = std::make_shared<const ExtensionModel>(bad);
    CHECK_FALSE(euler_factor_check(req(badp, places(badp, {"inf", "t"}), places(badp, {"t+1"})), place(badp, "t+2")).pass);
}

TEST_CASE("Weil bound") {
    const auto m = carlitz(3, "t");
    const auto chars = grpring::characters(m->group());
    const auto w = weil_check(req(m, places(m, {"inf", "t"}), {}), chars[1]);
    CHECK(w.pass);
    CHECK(w.moduli.empty());
    const auto m2 = carlitz(3, "t^2");
    int nonempty = 0;
    for (const auto& chi : grpring::characters(m2->group())) {
        if (chi.is_trivial()) {
            CHECK_THROWS_AS(weil_check(req(m2, places(m2, {"inf", "t"}), {}), chi), PreconditionError);
            continue;
        }
        const auto r = weil_check(req(m2, places(m2, {"inf", "t"}), {}), chi);
        CHECK(r.pass);
        for (double x : r.moduli) CHECK((std::abs(x - 1.0) < 1e-6 || std::abs(x - std::sqrt(3.0)) < 1e-6));
        nonempty += !r.moduli.empty();
    }
    CHECK(nonempty > 0);
    // an extra S0 place contributes modulus-one roots
    const auto r = weil_check(req(m2, places(m2, {"inf", "t", "t+1"}), {}), grpring::characters(m2->group())[1]);
    CHECK(r.pass);
    CHECK(std::count_if(r.moduli.begin(), r.moduli.end(), [](double x) { return std::abs(x - 1.0) < 1e-6; }) >= 1);
}

TEST_CASE("T0 independence") {
    const auto m = carlitz(3, "t");
    const auto base = req(m, places(m, {"inf", "t"}), {});
    CHECK(t0_independence_check(base, places(m, {"t+1"}), places(m, {"t+2"}), 2));
    CHECK(t0_independence_check(base, places(m, {"t+1"}), places(m, {"t+1"}), 3));
    const auto c = constant_field(2, 3);
    CHECK(t0_independence_check(req(c, places(c, {"inf"}), {}), places(c, {"t"}), places(c, {"t^2+t+1"}), 2));
}

TEST_CASE("Frobenius multiplicativity") {
    for (const auto& m : {carlitz(3, "t^2"), carlitz(2, "t^3"), carlitz(3, "t^2+t")}) {
        const auto& ring = m->ring();
        const auto& g = *m->group();
        std::vector<ffq::FqPoly> monics;
        for (int d = 0; d <= 3; ++d)
            for (const auto& a : ffq::monic_polys(m->q(), d))
                if (ring.gcd(a, m->modulus()).degree() == 0) monics.push_back(a);
        for (const auto& a : monics)
            for (const auto& b : monics) {
                if (a.degree() + b.degree() > 3 || ring.gcd(a, b).degree() > 0) continue;
                REQUIRE(m->sigma(ring.mul(a, b)) == g.mul(m->sigma(a), m->sigma(b)));
            }
        for (const auto& v : ffq::places_up_to(m->q(), 2))
            if (!v.is_infinite() && !m->is_ramified(v)) CHECK(m->frobenius(v) == m->sigma(v.poly()));
    }
    const auto c = constant_field(3, 4);
    for (const auto& v : ffq::places_up_to(3, 3))
        if (!v.is_infinite()) CHECK(c->frobenius(v) == c->group()->pow(c->group()->generator(0), v.degree()));
}

TEST_CASE("stabilization") {
    const auto m = carlitz(3, "t^2");
    auto r = req(m, places(m, {"inf", "t"}), places(m, {"t+1"}));
    const auto a = theta(r);
    r.dmax = a.dmax + 4;
    const auto b = theta(r);
    CHECK(a.poly == b.poly);
    // the window (dmax - guard, dmax] now meets nonzero coefficients; the first one is reported
    r.dmax = a.stabilization_degree + 1;
    const int lo = std::max(0, r.dmax - r.guard + 1);
    int first = lo;
    while (a.poly.coeff(first).is_zero()) ++first;
    try {
        theta(r);
        FAIL("expected StabilizationFailure");
    } catch (const StabilizationFailure& e) {
        CHECK(e.failing_degree() == first);
    }
}

TEST_CASE("request validation") {
    const auto m = carlitz(3, "t");
    CHECK_THROWS_AS(validate(req(m, places(m, {"t"}), places(m, {"t+1"}))), PreconditionError);      // no infinity
    CHECK_THROWS_AS(validate(req(m, places(m, {"inf"}), places(m, {"t+1"}))), PreconditionError);    // ramified t
    CHECK_THROWS_AS(validate(req(m, places(m, {"inf", "t"}), places(m, {"t"}))), PreconditionError);  // overlap
    CHECK_THROWS_AS(validate(req(m, places(m, {"inf", "t", "t"}), {})), PreconditionError);          // duplicate
    auto g = req(m, places(m, {"inf", "t"}), {});
    g.guard = 0;
    CHECK_THROWS_AS(validate(g), PreconditionError);
    CHECK(degree_bound(req(m, places(m, {"inf", "t"}), places(m, {"t+1"}))) == 1 + 1 + 1);
}

TEST_CASE("monic census counts all coprime monics") {
    const auto m = carlitz(3, "t^2+1");
    const auto census = monic_census(*m, {}, 4);
    for (int d = 0; d <= 4; ++d) {
        std::int64_t total = 0;
        for (auto c : census[d]) total += c;
        std::int64_t brute = 0;
        for (const auto& a : ffq::monic_polys(3, d)) brute += m->ring().gcd(a, m->modulus()).degree() == 0;
        CHECK(total == brute);
    }
}
