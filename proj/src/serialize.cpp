#include "equitheta/serialize.hpp"

#include "equitheta/errors.hpp"

namespace equitheta::serialize {

namespace {

json integer(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

json rational(const mpq_class& x) {
    if (x.get_den() == 1) return integer(x.get_num());
    return x.get_str();
}

mpz_class integer_from(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw PreconditionError("expected an integer, got " + j.dump());
}

template <class E, class F>
json elem_map(const E& x, F coeff) {
    json out = json::object();
    const auto& g = x.group_ref();
    for (int i = 0; i < g.order(); ++i)
        if (!x.ring().is_zero(x[i])) out[g.label(i)] = coeff(x[i]);
    return out;
}

json ring_json(const fitting::FinGroupRing& r) {
    return {{"group", r.group()->orders()}, {"ell", r.ell()}, {"k", r.k()}, {"modulus", r.modulus()}};
}

}  // namespace

json to_json(const grpring::IntElem& x) { return elem_map(x, integer); }
json to_json(const grpring::RatElem& x) { return elem_map(x, rational); }
json to_json(const grpring::ModElem& x) {
    return elem_map(x, [](std::int64_t c) { return json(c); });
}

json to_json(const grpring::IntPoly& f) {
    json out = json::array();
    for (const auto& c : f.coeffs()) out.push_back(to_json(c));
    return out;
}

json to_json(const grpring::CyclotomicPoly& f) {
    json out = json::array();
    for (const auto& c : f) {
        json cs = json::array();
        for (const auto& z : c.coeffs()) cs.push_back(integer(z));
        out.push_back(cs);
    }
    return out;
}

json to_json(const ffq::FqPoly& f) { return f.coeffs; }

json to_json(const ffq::Place& v) {
    if (v.is_infinite()) return "inf";
    return to_json(v.poly());
}

json to_json(const std::vector<ffq::Place>& s) {
    json out = json::array();
    for (const auto& v : s) out.push_back(to_json(v));
    return out;
}

json to_json(const fitting::IdealFG& i) {
    json gens = json::array();
    for (const auto& x : i.basis()) gens.push_back(to_json(x));
    return {{"ring", ring_json(*i.ring())},
            {"text", i.to_string()},
            {"canonical", i.canonical()},
            {"basis", gens},
            {"unit", i.is_unit()},
            {"size", i.size().get_str()}};
}

json to_json(const fitting::PresentedModule& m) {
    json rel = json::array();
    for (const auto& row : m.relations()) {
        json r = json::array();
        for (const auto& e : row) r.push_back(to_json(e));
        rel.push_back(r);
    }
    return {{"ring", ring_json(*m.ring())}, {"generators", m.gens()}, {"relations", rel}};
}

json to_json(const lfun::LDataRequest& req) {
    json j;
    const auto& m = *req.model;
    if (m.kind() == lfun::ModelKind::Carlitz) {
        j["kind"] = "carlitz";
        j["q"] = m.q();
        j["m"] = to_json(m.modulus());
    } else {
        j["kind"] = "constant_field";
        j["q"] = m.q();
        j["r"] = m.r();
    }
    j["S0"] = to_json(req.s0);
    j["T0"] = to_json(req.t0);
    j["Dmax"] = req.dmax;
    j["guard"] = req.guard;
    return j;
}

json to_json(const lfun::ThetaPoly& th) {
    const auto& g = *th.request.model->group();
    json j;
    j["request"] = to_json(th.request);
    j["model"] = th.request.model->describe();
    std::vector<std::string> labels;
    for (int i = 0; i < g.order(); ++i) labels.push_back(g.label(i));
    j["group"] = {{"orders", g.orders()}, {"elements", labels}};
    j["dmax"] = th.dmax;
    j["stabilization_degree"] = th.stabilization_degree;
    if (!th.is_rational()) {
        j["poly"] = to_json(th.poly);
        // per group element: coefficient list in u
        json table = json::object();
        for (int h = 0; h < g.order(); ++h) {
            json col = json::array();
            bool any = false;
            for (const auto& c : th.poly.coeffs()) {
                col.push_back(integer(c[h]));
                any = any || c[h] != 0;
            }
            if (any) table[g.label(h)] = col;
        }
        j["by_element"] = table;
    } else {
        j["numerator"] = to_json(th.numerator);
        j["denominator"] = to_json(th.denominator);
        json comps = json::array();
        for (const auto& c : th.components)
            comps.push_back({{"character", c.chi.label()},
                             {"root_order", c.chi.value_order()},
                             {"numerator", to_json(c.numerator)},
                             {"denominator", to_json(c.denominator)}});
        j["components"] = comps;
    }
    return j;
}

json to_json(const cohom::CohomologyPrediction& p) {
    json ws = json::array();
    for (const auto& w : p.witnesses)
        ws.push_back({{"T0", to_json(w.t0)},
                      {"theta_T", to_json(w.theta_t)},
                      {"delta", to_json(w.delta)},
                      {"fitH2", to_json(w.fit_h2)}});
    return {{"model", p.model->describe()},
            {"S0", to_json(p.s0)},
            {"n", p.n},
            {"ell", p.ell},
            {"k", p.k},
            {"fitH1", to_json(p.fit_h1)},
            {"theta", {{"numerator", to_json(p.theta_numerator)}, {"denominator", integer(p.theta_denominator)}}},
            {"fitH2", to_json(p.fit_h2)},
            {"witnesses", ws},
            {"checks",
             {{"witnesses_agree", p.witnesses_agree},
              {"integral", p.integral},
              {"fitH1_theta_eq_delta_fitH2", p.cross_check}}},
            {"status", "prediction"}};
}

json to_json(const cohom::CsReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"ell", e.ell}, {"n", e.n}, {"fitH1", e.fit_h1}, {"fitH2", e.fit_h2}, {"unit", e.unit}});
    json p = json::array();
    for (const auto& [n, ok] : r.p_side)
        p.push_back({{"n", n},
                     {"p", r.p},
                     {"entry", ok ? "unit" : "not verified"},
                     {"note", "both sides unit ideal, Theta a p-adic unit"}});
    return {{"model", r.model}, {"label", r.label}, {"ell_entries", entries}, {"p_entries", p}};
}

grpring::IntElem int_elem_from_json(const grpring::GroupPtr& g, const json& j) {
    grpring::IntElem x(g);
    for (const auto& [label, c] : j.items()) {
        const int i = g->parse_label(label);
        x.set(i, x[i] + integer_from(c));
    }
    return x;
}

ffq::FqPoly poly_from_json(const ffq::PolyRing& ring, const json& j) {
    if (j.is_string()) return ring.parse(j.get<std::string>());
    if (!j.is_array()) throw PreconditionError("polynomial must be a coefficient array or a string");
    std::vector<int> c;
    for (const auto& x : j) {
        const int v = x.get<int>();
        if (v < 0 || v >= ring.q()) throw PreconditionError("polynomial coefficient outside F_q: " + x.dump());
        c.push_back(v);
    }
    return ffq::FqPoly(std::move(c));
}

ffq::Place place_from_json(const ffq::PolyRing& ring, const json& j) {
    if (j.is_string()) return ffq::parse_place(ring, j.get<std::string>());
    return ffq::Place::finite(ring, poly_from_json(ring, j));
}

lfun::LDataRequest request_from_json(const json& j) {
    const std::string kind = j.value("kind", std::string("carlitz"));
    if (!j.contains("q")) throw PreconditionError("config field 'q' is required");
    const int q = j.at("q").get<int>();
    lfun::LDataRequest req;
    if (kind == "carlitz") {
        if (!j.contains("m")) throw PreconditionError("config field 'm' is required for kind carlitz");
        const ffq::PolyRing ring(q);
        req.model = std::make_shared<const lfun::ExtensionModel>(
            lfun::ExtensionModel::carlitz(q, poly_from_json(ring, j.at("m"))));
    } else if (kind == "constant_field") {
        if (!j.contains("r")) throw PreconditionError("config field 'r' is required for kind constant_field");
        req.model = std::make_shared<const lfun::ExtensionModel>(
            lfun::ExtensionModel::constant_field(q, j.at("r").get<int>()));
    } else {
        throw PreconditionError("config field 'kind' must be carlitz or constant_field, got " + kind);
    }
    const auto& ring = req.model->ring();
    if (j.contains("S0"))
        for (const auto& v : j.at("S0")) req.s0.push_back(place_from_json(ring, v));
    if (j.contains("T0"))
        for (const auto& v : j.at("T0")) req.t0.push_back(place_from_json(ring, v));
    req.dmax = j.value("Dmax", 0);
    req.guard = j.value("guard", 3);
    return req;
}

}  // namespace equitheta::serialize
