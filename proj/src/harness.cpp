#include "equitheta/harness.hpp"

#include <functional>
#include <map>
#include <numeric>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"
#include "equitheta/serialize.hpp"

namespace equitheta::harness {

using fitting::Elem;
using fitting::ElemMatrix;
using fitting::ElemRow;
using fitting::IdealFG;
using fitting::PresentedModule;
using fitting::RingPtr;
using grpring::IntElem;
using IntMatrix = std::vector<std::vector<IntElem>>;

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string ideal_text(const IdealFG& i) { return i.to_string(); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, const grpring::GroupPtr& g) {
    IntMatrix c(a.size(), std::vector<IntElem>(b[0].size(), IntElem(g)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j)
            for (std::size_t t = 0; t < b.size(); ++t) c[i][j] += a[i][t] * b[t][j];
    return c;
}

IntMatrix adjugate2(const IntMatrix& f) {
    if (f.size() == 1) return {{IntElem::one(f[0][0].group())}};
    return {{f[1][1], -f[0][1]}, {-f[1][0], f[0][0]}};
}

serialize::json int_matrix_json(const IntMatrix& a) {
    serialize::json out = serialize::json::array();
    for (const auto& row : a) {
        serialize::json r = serialize::json::array();
        for (const auto& e : row) r.push_back(serialize::to_json(e));
        out.push_back(r);
    }
    return out;
}

serialize::json ring_header(const fitting::FinGroupRing& r) {
    return {{"group", r.group()->orders()}, {"ell", r.ell()}, {"k", r.k()}};
}

RingPtr pick_ring(Rng& rng, const Config& cfg) {
    const auto& orders = cfg.groups[uniform(rng, 0, static_cast<int>(cfg.groups.size()) - 1)];
    const auto [ell, k] = cfg.moduli[uniform(rng, 0, static_cast<int>(cfg.moduli.size()) - 1)];
    return fitting::make_ring(grpring::make_group(orders), ell, k);
}

Record make_record(const std::string& prop, const Config& cfg, int index, serialize::json instance, std::string lhs,
                   std::string rhs, bool pass) {
    return {prop, cfg.seed, index, instance.dump(), std::move(lhs), std::move(rhs), pass};
}

using PropertyFn = std::function<Record(Rng&, const Config&, int)>;

Record prop_fit_in_ann(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto m = random_module(rng, r);
    const auto f = fitting::fit(m);
    const auto a = fitting::ann(m);
    return make_record("fit_in_ann", cfg, index, serialize::to_json(m), ideal_text(f), ideal_text(a), a.contains(f));
}

Record prop_fit_cyclic(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    std::vector<Elem> gens;
    const int n = uniform(rng, 1, 3);
    for (int i = 0; i < n; ++i) gens.push_back(random_elem(rng, r));
    const auto m = PresentedModule::cyclic(r, gens);
    const auto f = fitting::fit(m);
    const IdealFG i(r, gens);
    return make_record("fit_cyclic", cfg, index, serialize::to_json(m), ideal_text(f), ideal_text(i), f == i);
}

Record prop_direct_sum(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto a = random_module(rng, r, 2);
    const auto b = random_module(rng, r, 2);
    const auto lhs = fitting::fit(fitting::direct_sum(a, b));
    const auto rhs = fitting::ideal_mul(fitting::fit(a), fitting::fit(b));
    return make_record("direct_sum", cfg, index, {{"M", serialize::to_json(a)}, {"N", serialize::to_json(b)}},
                       ideal_text(lhs), ideal_text(rhs), lhs == rhs);
}

Record prop_base_change(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto m = random_module(rng, r);
    const auto f = fitting::fit(m);
    std::string lhs, rhs;
    bool pass = true;
    if (r->k() > 1) {
        auto low = fitting::make_ring(r->group(), r->ell(), uniform(rng, 1, r->k() - 1));
        const auto a = fitting::fit(fitting::change_level(m, low));
        const auto b = fitting::change_level(f, low);
        pass = pass && a == b;
        lhs += "level " + std::to_string(low->k()) + ": " + ideal_text(a) + "; ";
        rhs += "level " + std::to_string(low->k()) + ": " + ideal_text(b) + "; ";
    }
    auto triv = fitting::make_ring(grpring::make_group({1}), r->ell(), r->k());
    const std::vector<int> aug(r->group_order(), 0);
    const auto a = fitting::fit(fitting::map_group(m, triv, aug));
    const auto b = fitting::map_group(f, triv, aug);
    pass = pass && a == b;
    lhs += "augmentation: " + ideal_text(a);
    rhs += "augmentation: " + ideal_text(b);
    return make_record("base_change", cfg, index, serialize::to_json(m), lhs, rhs, pass);
}

// M = R / <h - psi(h), l^a>: cyclic as an abelian group.
Record prop_cyclic_group_lemma(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto psi = random_character(rng, *r);
    const int a = uniform(rng, 1, r->k());
    const auto& g = *r->group();
    std::vector<Elem> gens;
    for (int i = 0; i < g.rank(); ++i) gens.push_back(r->basis(g.generator(i)) - r->scalar(psi[g.generator(i)]));
    gens.push_back(r->scalar(intmath::ipow(r->ell(), a)));
    const auto m = PresentedModule::cyclic(r, gens);
    const auto md = fitting::dual_wedge(m);
    const auto f = fitting::fit(m), an = fitting::ann(m), and_ = fitting::ann(md), fd = fitting::fit(md);
    const bool pass = f == an && an == and_ && and_ == fd;
    return make_record("cyclic_group_lemma", cfg, index, serialize::to_json(m),
                       ideal_text(f) + " = " + ideal_text(an), ideal_text(and_) + " = " + ideal_text(fd), pass);
}

Record prop_iota_duality(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    IntMatrix x;
    const int size = uniform(rng, 1, 2);
    if (!random_nzd_matrix(rng, r->group(), r->ell(), r->k(), size, x))
        return make_record("iota_duality", cfg, index, ring_header(*r), "", "", false);
    const PresentedModule m(r, size, reduce_matrix(r, x));
    const auto f = fitting::fit(m);
    const auto fv = fitting::fit(fitting::dual_vee(m));
    const auto det = IdealFG::principal(r, r->from_integral(fitting::determinant(x)));
    const auto rhs = fitting::iota(f);
    serialize::json inst = ring_header(*r);
    inst["matrix"] = int_matrix_json(x);
    return make_record("iota_duality", cfg, index, inst, ideal_text(fv), ideal_text(rhs), fv == rhs && f == det);
}

Record prop_twist(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto m = random_module(rng, r);
    const auto c = random_character(rng, *r);
    const int t = uniform(rng, -3, 3);
    const auto lhs = fitting::fit(fitting::twist_presentation(m, t, c));
    const auto rhs = fitting::twist_ideal(fitting::fit(m), t, c);
    serialize::json inst = serialize::to_json(m);
    inst["twist"] = t;
    inst["c"] = c;
    return make_record("twist", cfg, index, inst, ideal_text(lhs), ideal_text(rhs), lhs == rhs);
}

Record prop_double_dual(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto m = random_module(rng, r, 2);
    const auto dd = fitting::dual_wedge(fitting::dual_wedge(m));
    const auto a = fitting::fit(m), b = fitting::fit(dd);
    const bool pass = a == b && m.order() == dd.order();
    return make_record("double_dual", cfg, index, serialize::to_json(m),
                       ideal_text(a) + " |M|=" + m.order().get_str(), ideal_text(b) + " |M|=" + dd.order().get_str(),
                       pass);
}

Record prop_four_term(Rng& rng, const Config& cfg, int index) {
    auto r = pick_ring(rng, cfg);
    const auto inst = random_four_term(rng, r, uniform(rng, 1, 2));
    const auto res = fitting::four_term_check(inst.b, inst.c, inst.phi);
    serialize::json phi = serialize::json::array();
    for (const auto& row : inst.phi) {
        serialize::json rr = serialize::json::array();
        for (const auto& e : row) rr.push_back(serialize::to_json(e));
        phi.push_back(rr);
    }
    serialize::json j = {{"B", serialize::to_json(inst.b)}, {"C", serialize::to_json(inst.c)}, {"phi", phi},
                         {"order_A", res.order_a.get_str()}, {"order_D", res.order_d.get_str()}};
    return make_record("four_term", cfg, index, j, ideal_text(res.lhs), ideal_text(res.rhs), res.pass);
}

const std::map<std::string, PropertyFn>& registry() {
    static const std::map<std::string, PropertyFn> r = {
        {"fit_in_ann", prop_fit_in_ann},
        {"fit_cyclic", prop_fit_cyclic},
        {"direct_sum", prop_direct_sum},
        {"base_change", prop_base_change},
        {"cyclic_group_lemma", prop_cyclic_group_lemma},
        {"iota_duality", prop_iota_duality},
        {"twist", prop_twist},
        {"double_dual", prop_double_dual},
        {"four_term", prop_four_term},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names = {"fit_in_ann",         "fit_cyclic",   "direct_sum",
                                                   "base_change",        "cyclic_group_lemma", "iota_duality",
                                                   "twist",              "double_dual",  "four_term"};
    return names;
}

std::vector<Record> run(const std::string& property, const Config& cfg) {
    const auto it = registry().find(property);
    if (it == registry().end()) throw PreconditionError("unknown harness property: " + property);
    if (cfg.count < 0) throw PreconditionError("instance count must be >= 0");
    if (cfg.groups.empty() || cfg.moduli.empty()) throw PreconditionError("harness needs groups and moduli");
    std::vector<Record> out;
    for (int i = 0; i < cfg.count; ++i) {
        Rng rng = instance_rng(cfg.seed, property, i);
        out.push_back(it->second(rng, cfg, i));
    }
    return out;
}

Rng instance_rng(std::uint64_t seed, const std::string& property, int index) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : property) h = (h ^ c) * 1099511628211ULL;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index)};
    return Rng(seq);
}

Elem random_elem(Rng& rng, const RingPtr& r, double density) {
    Elem x = r->zero();
    std::uniform_int_distribution<std::int64_t> coeff(0, r->modulus() - 1);
    for (int h = 0; h < r->group_order(); ++h)
        if (coin(rng, density)) x.set(h, coeff(rng));
    return x;
}

IntElem random_int_elem(Rng& rng, const grpring::GroupPtr& g, int bound, double density) {
    IntElem x(g);
    for (int h = 0; h < g->order(); ++h)
        if (coin(rng, density)) x.set(h, uniform(rng, -bound, bound));
    return x;
}

PresentedModule random_module(Rng& rng, const RingPtr& r, int max_gens) {
    const int g = uniform(rng, 1, max_gens);
    const int rows = uniform(rng, std::max(0, g - 1), g + 2);
    ElemMatrix rel;
    for (int i = 0; i < rows; ++i) {
        ElemRow row;
        for (int j = 0; j < g; ++j) row.push_back(random_elem(rng, r, 0.4));
        rel.push_back(std::move(row));
    }
    return PresentedModule(r, g, std::move(rel));
}

std::vector<std::int64_t> random_character(Rng& rng, const fitting::FinGroupRing& r) {
    const auto& g = *r.group();
    const auto n = r.modulus();
    std::vector<std::int64_t> image;
    for (int i = 0; i < g.rank(); ++i) {
        const int ord = g.orders()[i];
        std::vector<std::int64_t> cands;
        for (std::int64_t u = 1; u < n; ++u)
            if (std::gcd(u, n) == 1 && intmath::powmod(u, static_cast<unsigned long long>(ord), n) == 1)
                cands.push_back(u);
        image.push_back(cands[uniform(rng, 0, static_cast<int>(cands.size()) - 1)]);
    }
    std::vector<std::int64_t> c(g.order());
    for (int h = 0; h < g.order(); ++h) {
        const auto ex = g.exponents(h);
        std::int64_t v = 1 % n;
        for (int i = 0; i < g.rank(); ++i) v = intmath::mulmod(v, intmath::powmod(image[i], ex[i], n), n);
        c[h] = v;
    }
    return c;
}

bool killed_at(const grpring::GroupPtr& g, int ell, int k, const IntMatrix& rel) {
    auto r = fitting::make_ring(g, ell, k + 1);
    const int gens = rel.empty() ? 0 : static_cast<int>(rel[0].size());
    return PresentedModule(r, gens, reduce_matrix(r, rel)).killed_by(intmath::ipow(ell, k));
}

ElemMatrix reduce_matrix(const RingPtr& r, const IntMatrix& a) {
    ElemMatrix out;
    for (const auto& row : a) {
        ElemRow x;
        for (const auto& e : row) x.push_back(r->from_integral(e));
        out.push_back(std::move(x));
    }
    return out;
}

bool random_nzd_matrix(Rng& rng, const grpring::GroupPtr& g, int ell, int k, int size, IntMatrix& out) {
    for (int attempt = 0; attempt < 4000; ++attempt) {
        IntMatrix a(size, std::vector<IntElem>(size, IntElem(g)));
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) a[i][j] = random_int_elem(rng, g, 2, i == j ? 0.7 : 0.35);
        if (!fitting::is_non_zero_divisor(fitting::determinant(a))) continue;
        if (!killed_at(g, ell, k, a)) continue;
        out = std::move(a);
        return true;
    }
    return false;
}

FourTermInstance random_four_term(Rng& rng, const RingPtr& r, int size) {
    const auto& g = r->group();
    for (int attempt = 0; attempt < 4000; ++attempt) {
        IntMatrix y;
        if (!random_nzd_matrix(rng, g, r->ell(), r->k(), size, y)) break;
        IntMatrix f(size, std::vector<IntElem>(size, IntElem(g)));
        IntMatrix z(size, std::vector<IntElem>(size, IntElem(g)));
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                f[i][j] = random_int_elem(rng, g, 2, 0.5);
                z[i][j] = i == j ? IntElem::one(g) : IntElem(g);
                if (coin(rng, 0.5)) z[i][j] += random_int_elem(rng, g, 1, 0.3);
            }
        const IntMatrix x = mat_mul(mat_mul(z, y, g), adjugate2(f), g);
        if (!fitting::is_non_zero_divisor(fitting::determinant(x))) continue;
        if (!killed_at(g, r->ell(), r->k(), x)) continue;
        return {PresentedModule(r, size, reduce_matrix(r, x)), PresentedModule(r, size, reduce_matrix(r, y)),
                reduce_matrix(r, f)};
    }
    throw CapExceeded("random_four_term: no admissible instance found");
}

}  // namespace equitheta::harness
