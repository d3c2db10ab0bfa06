#include "equitheta/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "equitheta/cohomcheck.hpp"
#include "equitheta/errors.hpp"
#include "equitheta/harness.hpp"
#include "equitheta/lfun.hpp"
#include "equitheta/serialize.hpp"

namespace equitheta::cli {

namespace {

using serialize::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

int to_int(const std::string& field, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw PreconditionError("field " + field + ": expected an integer, got '" + s + "'");
    }
}

// "2..4", "2,3,5" or "3"
std::vector<int> parse_int_list(const std::string& field, const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(field, part));
            continue;
        }
        const int lo = to_int(field, part.substr(0, dots)), hi = to_int(field, part.substr(dots + 2));
        if (hi < lo) throw PreconditionError("field " + field + ": empty range " + part);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw PreconditionError("field " + field + " is empty");
    return out;
}

std::vector<int> json_int_list(const std::string& field, const json& j) {
    if (j.is_number_integer()) return {j.get<int>()};
    if (j.is_string()) return parse_int_list(field, j.get<std::string>());
    if (j.is_array()) {
        std::vector<int> out;
        for (const auto& x : j) out.push_back(x.get<int>());
        return out;
    }
    throw PreconditionError("field " + field + " must be an integer, list or range string");
}

// Raw textual options; the config file supplies defaults, flags win.
struct Options {
    std::string config_path;
    std::string kind, q, m, r, s0, t0, n, ell, k, dmax, guard, seed, out, format, count, group, properties,
        corrupt, kmax;
};

struct RunConfig {
    std::string command;
    lfun::LDataRequest base;  // model, S0, Dmax, guard
    std::vector<std::vector<ffq::Place>> witnesses;
    std::vector<int> n{2, 3, 4};
    std::vector<int> ell;
    int k = 3;
    int kmax = 4;
    std::uint64_t seed = 42;
    int count = 100;
    std::vector<std::vector<int>> groups;
    std::vector<std::string> properties;
    std::optional<ffq::Place> corrupt;
    std::string out;
    std::string format = "json";
    json echo;  // merged configuration as used
};

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read config file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw PreconditionError("config file " + path + " is not valid JSON: " + e.what());
    }
}

std::vector<ffq::Place> parse_places(const ffq::PolyRing& ring, const json& j, const std::string& field) {
    std::vector<ffq::Place> out;
    try {
        if (j.is_string())
            for (const auto& s : split(j.get<std::string>(), ',')) out.push_back(ffq::parse_place(ring, s));
        else
            for (const auto& v : j) out.push_back(serialize::place_from_json(ring, v));
    } catch (const PreconditionError& e) {
        throw PreconditionError("field " + field + ": " + e.what());
    }
    return out;
}

RunConfig resolve(const std::string& command, const Options& o) {
    json cfg = o.config_path.empty() ? json::object() : load_config_file(o.config_path);
    if (!cfg.is_object()) throw PreconditionError("config file must hold a JSON object");
    auto set = [&](const char* key, const std::string& v) {
        if (!v.empty()) cfg[key] = v;
    };
    set("kind", o.kind);
    if (!o.q.empty()) cfg["q"] = to_int("q", o.q);
    set("m", o.m);
    if (!o.r.empty()) cfg["r"] = to_int("r", o.r);
    set("S0", o.s0);
    set("T0", o.t0);
    set("n", o.n);
    set("ell", o.ell);
    if (!o.k.empty()) cfg["k"] = to_int("k", o.k);
    if (!o.dmax.empty()) cfg["Dmax"] = to_int("Dmax", o.dmax);
    if (!o.guard.empty()) cfg["guard"] = to_int("guard", o.guard);
    if (!o.seed.empty()) cfg["seed"] = to_int("seed", o.seed);
    if (!o.count.empty()) cfg["count"] = to_int("count", o.count);
    set("group", o.group);
    set("properties", o.properties);
    set("corrupt_frobenius", o.corrupt);
    if (!o.kmax.empty()) cfg["kmax"] = to_int("kmax", o.kmax);
    set("format", o.format);

    RunConfig rc;
    rc.command = command;
    rc.out = o.out;
    rc.format = cfg.value("format", std::string("json"));
    if (rc.format != "json" && rc.format != "text") throw PreconditionError("field format must be json or text");
    if (cfg.contains("n")) rc.n = json_int_list("n", cfg["n"]);
    for (int n : rc.n)
        if (n < 2) throw PreconditionError("field n: values must be >= 2");
    if (cfg.contains("ell")) rc.ell = json_int_list("ell", cfg["ell"]);
    rc.k = cfg.value("k", 3);
    if (rc.k < 1) throw PreconditionError("field k must be >= 1");
    rc.kmax = cfg.value("kmax", 4);
    rc.seed = cfg.value("seed", 42ULL);
    rc.count = cfg.value("count", 100);
    if (rc.count < 0) throw PreconditionError("field count must be >= 0");
    if (cfg.contains("group")) {
        const auto& g = cfg["group"];
        if (g.is_string())
            for (const auto& part : split(g.get<std::string>(), ';')) rc.groups.push_back(parse_int_list("group", part));
        else if (g.is_array() && !g.empty() && g[0].is_array())
            for (const auto& x : g) rc.groups.push_back(x.get<std::vector<int>>());
        else
            rc.groups.push_back(json_int_list("group", g));
    }
    if (cfg.contains("properties")) {
        const auto& p = cfg["properties"];
        rc.properties = p.is_string() ? split(p.get<std::string>(), ',') : p.get<std::vector<std::string>>();
    }

    if (command != "fitlab") {
        std::string kind = cfg.value("kind", std::string());
        if (kind.empty()) kind = cfg.contains("r") && !cfg.contains("m") ? "constant_field" : "carlitz";
        cfg["kind"] = kind;
        json model = {{"kind", kind}};
        if (!cfg.contains("q")) throw PreconditionError("field q is required");
        model["q"] = cfg["q"];
        if (kind == "carlitz") {
            if (!cfg.contains("m")) throw PreconditionError("field m is required for a carlitz model");
            model["m"] = cfg["m"];
        } else if (cfg.contains("r")) {
            model["r"] = cfg["r"];
        } else {
            throw PreconditionError("field r is required for a constant_field model");
        }
        try {
            rc.base = serialize::request_from_json(model);
        } catch (const json::exception& e) {
            throw PreconditionError(std::string("model fields: ") + e.what());
        }
        const auto& ring = rc.base.model->ring();
        if (cfg.contains("S0")) {
            rc.base.s0 = parse_places(ring, cfg["S0"], "S0");
        } else {
            rc.base.s0 = rc.base.model->ramified();
            if (rc.base.s0.empty() || !rc.base.s0.front().is_infinite())
                rc.base.s0.insert(rc.base.s0.begin(), ffq::Place::infinity());
        }
        if (cfg.contains("T0")) {
            const auto& t = cfg["T0"];
            if (t.is_string()) {
                for (const auto& w : split(t.get<std::string>(), ';')) rc.witnesses.push_back(parse_places(ring, w, "T0"));
            } else if (t.is_array() && !t.empty() && t[0].is_array() && !t[0].empty() &&
                       (t[0][0].is_array() || t[0][0].is_string())) {
                for (const auto& w : t) rc.witnesses.push_back(parse_places(ring, w, "T0"));
            } else {
                rc.witnesses.push_back(parse_places(ring, t, "T0"));
            }
        }
        rc.base.dmax = cfg.value("Dmax", 0);
        rc.base.guard = cfg.value("guard", 3);
        if (cfg.contains("corrupt_frobenius"))
            rc.corrupt = ffq::parse_place(ring, cfg["corrupt_frobenius"].get<std::string>());
        lfun::LDataRequest probe = rc.base;
        probe.t0 = rc.witnesses.empty() ? std::vector<ffq::Place>{} : rc.witnesses.front();
        lfun::validate(probe);
        for (const auto& w : rc.witnesses) {
            probe.t0 = w;
            lfun::validate(probe);
        }
        cfg["S0"] = serialize::to_json(rc.base.s0);
        json ws = json::array();
        for (const auto& w : rc.witnesses) ws.push_back(serialize::to_json(w));
        cfg["T0"] = ws;
    }
    rc.echo = cfg;
    return rc;
}

void write_report(const RunConfig& rc, const std::string& text, std::ostream& out) {
    if (rc.out.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(rc.out);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw PreconditionError("cannot write " + tmp.string());
        f << text;
        if (!f.flush()) throw PreconditionError("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string render(const RunConfig& rc, const json& report, const std::string& text) {
    if (rc.format == "text") return text;
    return report.dump(2) + "\n";
}

// ---- theta ---------------------------------------------------------------------------------

std::string theta_table(const lfun::ThetaPoly& th) {
    std::ostringstream os;
    const auto& g = *th.request.model->group();
    os << "Theta(u) for " << th.request.model->describe() << ", stabilized at degree " << th.stabilization_degree
       << " (Dmax " << th.dmax << ")\n";
    const auto& p = th.is_rational() ? th.numerator : th.poly;
    if (th.is_rational()) os << "T0 empty: numerator shown; denominator |H| - q u lambda^-1 sum(H)\n";
    os << std::left << std::setw(12) << "element";
    for (int d = 0; d <= std::max(p.degree(), 0); ++d) os << std::setw(10) << ("u^" + std::to_string(d));
    os << "\n";
    for (int h = 0; h < g.order(); ++h) {
        bool any = false;
        for (const auto& c : p.coeffs()) any = any || c[h] != 0;
        if (!any) continue;
        os << std::setw(12) << g.label(h);
        for (const auto& c : p.coeffs()) os << std::setw(10) << c[h].get_str();
        os << "\n";
    }
    return os.str();
}

int cmd_theta(const RunConfig& rc, std::ostream& out) {
    lfun::LDataRequest req = rc.base;
    if (rc.witnesses.size() > 1) throw PreconditionError("theta takes a single T0 set");
    if (!rc.witnesses.empty()) req.t0 = rc.witnesses.front();
    const auto th = lfun::theta(req);
    json report = {{"command", "theta"}, {"config", rc.echo}, {"theta", serialize::to_json(th)}};
    write_report(rc, render(rc, report, theta_table(th)), out);
    return Pass;
}

// ---- verify --------------------------------------------------------------------------------

struct Check {
    std::string name;
    json params;
    bool pass;
    std::string detail;
};

std::vector<std::vector<ffq::Place>> default_witnesses(const lfun::LDataRequest& base, int want) {
    std::vector<std::vector<ffq::Place>> out;
    for (const auto& v : ffq::places_up_to(base.model->q(), 2)) {
        if (v.is_infinite() || base.model->is_ramified(v)) continue;
        if (std::find(base.s0.begin(), base.s0.end(), v) != base.s0.end()) continue;
        out.push_back({v});
        if (static_cast<int>(out.size()) == want) break;
    }
    return out;
}

int cmd_verify(RunConfig rc, std::ostream& out, std::ostream& err) {
    if (rc.corrupt) {
        auto model = *rc.base.model;
        const auto& g = *model.group();
        if (g.order() == 1) throw PreconditionError("corrupt_frobenius needs a nontrivial group");
        model.corrupt_frobenius(*rc.corrupt, g.mul(model.frobenius(*rc.corrupt), g.generator(0)));
        rc.base.model = std::make_shared<const lfun::ExtensionModel>(std::move(model));
    }
    const auto& model = *rc.base.model;
    auto witnesses = rc.witnesses.empty() ? default_witnesses(rc.base, 3) : rc.witnesses;
    if (witnesses.empty()) throw PreconditionError("no T0 witness available; pass --t0");

    std::vector<Check> checks;
    std::vector<lfun::ThetaPoly> thetas;
    for (const auto& w : witnesses) {
        lfun::LDataRequest req = rc.base;
        req.t0 = w;
        thetas.push_back(lfun::theta(req));
    }
    const int p = model.ring().base().p();
    for (const auto& th : thetas) {
        const json t0 = serialize::to_json(th.request.t0);
        bool integral = !th.poly.is_zero() && th.poly.coeffs()[0] == grpring::IntElem::one(model.group());
        checks.push_back({"integrality", {{"T0", t0}}, integral, "theta in 1 + u Z[G][u]"});
        for (int n : rc.n) {
            const bool lv = lfun::twist_project(th, n) == lfun::theta_special(th, n);
            checks.push_back({"lvalues", {{"T0", t0}, {"n", n}}, lv, "twist_project = theta_special"});
            const auto u = lfun::unit_mod_p_check(th, n, rc.kmax);
            std::string detail = "p=" + std::to_string(p) + ":";
            detail += u.integral_form ? "" : " (a) failed";
            detail += u.congruent ? "" : " (b) failed";
            detail += u.invertible ? "" : " (c) failed";
            if (u.pass()) detail += " ok";
            checks.push_back({"unit_mod_p", {{"T0", t0}, {"n", n}, {"kmax", rc.kmax}}, u.pass(), detail});
        }
    }
    // Euler factors at unramified places of degree <= 2 outside S0 and the first T0
    std::vector<ffq::Place> euler_places;
    const auto& t0 = witnesses.front();
    auto outside = [&](const ffq::Place& v) {
        return !v.is_infinite() && !model.is_ramified(v) &&
               std::find(rc.base.s0.begin(), rc.base.s0.end(), v) == rc.base.s0.end() &&
               std::find(t0.begin(), t0.end(), v) == t0.end();
    };
    for (const auto& v : ffq::places_up_to(model.q(), 2))
        if (outside(v)) euler_places.push_back(v);
    if (rc.corrupt && outside(*rc.corrupt) &&
        std::find(euler_places.begin(), euler_places.end(), *rc.corrupt) == euler_places.end())
        euler_places.push_back(*rc.corrupt);
    for (const auto& v : euler_places) {
        lfun::LDataRequest req = rc.base;
        req.t0 = t0;
        const auto e = lfun::euler_factor_check(req, v);
        checks.push_back({"euler_factor", {{"T0", serialize::to_json(t0)}, {"v", serialize::to_json(v)}}, e.pass, ""});
    }
    for (std::size_t i = 0; i < witnesses.size(); ++i)
        for (std::size_t j = i + 1; j < witnesses.size(); ++j)
            for (int n : rc.n) {
                const bool ok = lfun::t0_independence_check(rc.base, witnesses[i], witnesses[j], n);
                checks.push_back({"t0_independence",
                                  {{"T0a", serialize::to_json(witnesses[i])},
                                   {"T0b", serialize::to_json(witnesses[j])},
                                   {"n", n}},
                                  ok,
                                  ""});
            }
    for (const auto& chi : grpring::characters(model.group())) {
        if (chi.is_trivial()) continue;
        try {
            const auto w = lfun::weil_check(rc.base, chi);
            std::ostringstream moduli;
            for (double m : w.moduli) moduli << std::setprecision(10) << m << " ";
            checks.push_back({"weil", {{"character", chi.label()}}, w.pass, "moduli: " + moduli.str()});
        } catch (const NumericFailure& e) {
            checks.push_back({"weil", {{"character", chi.label()}}, false, std::string("numeric failure: ") + e.what()});
        }
    }

    bool all = true;
    json jc = json::array();
    std::ostringstream text;
    text << "verify " << model.describe() << "\n";
    for (const auto& c : checks) {
        all = all && c.pass;
        jc.push_back({{"check", c.name}, {"params", c.params}, {"pass", c.pass}, {"detail", c.detail}});
        text << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.params.dump() << " " << c.detail << "\n";
    }
    text << (all ? "all checks passed" : "some checks FAILED") << "\n";
    json report = {{"command", "verify"}, {"config", rc.echo}, {"checks", jc}, {"pass", all}};
    write_report(rc, render(rc, report, text.str()), out);
    if (!all) err << "verify: some checks failed\n";
    return all ? Pass : PropertyFailure;
}

// ---- fitlab --------------------------------------------------------------------------------

int cmd_fitlab(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    harness::Config hc;
    hc.seed = rc.seed;
    hc.count = rc.count;
    if (!rc.groups.empty()) hc.groups = rc.groups;
    if (!rc.ell.empty()) {
        hc.moduli.clear();
        for (int l : rc.ell) hc.moduli.emplace_back(l, rc.k);
    }
    auto props = rc.properties.empty() ? harness::property_names() : rc.properties;
    if (rc.count == 0) err << "fitlab: warning: no instances requested, vacuous pass\n";

    std::vector<std::future<std::vector<harness::Record>>> jobs;
    for (const auto& p : props) jobs.push_back(std::async(std::launch::async, harness::run, p, hc));
    json summary = json::object(), failures = json::array();
    std::ostringstream text;
    bool all = true;
    for (std::size_t i = 0; i < props.size(); ++i) {
        const auto recs = jobs[i].get();
        int ok = 0;
        for (const auto& r : recs) {
            if (r.pass) {
                ++ok;
                continue;
            }
            failures.push_back({{"property", r.property},
                                {"seed", r.seed},
                                {"index", r.index},
                                {"instance", json::parse(r.instance)},
                                {"lhs", r.lhs},
                                {"rhs", r.rhs},
                                {"pass", false}});
        }
        all = all && ok == static_cast<int>(recs.size());
        summary[props[i]] = {{"pass", ok}, {"total", recs.size()}};
        text << props[i] << ": " << ok << "/" << recs.size() << "\n";
    }
    json report = {{"command", "fitlab"}, {"config", rc.echo}, {"summary", summary}, {"failures", failures},
                   {"pass", all}};
    write_report(rc, render(rc, report, text.str()), out);
    return all ? Pass : PropertyFailure;
}

// ---- cs-report -----------------------------------------------------------------------------

int cmd_cs_report(const RunConfig& rc, std::ostream& out) {
    if (rc.witnesses.size() < 2) throw PreconditionError("cs-report needs at least two T0 witnesses (--t0 'A;B')");
    const auto& model = *rc.base.model;
    const int p = model.ring().base().p();
    std::vector<int> ells = rc.ell;
    if (ells.empty())
        for (int l : {2, 3, 5})
            if (l != p) ells.push_back(l);
    for (int l : ells)
        if (l == p) throw PreconditionError("field ell: l must differ from p = " + std::to_string(p));

    std::vector<std::pair<int, int>> grid;
    for (int n : rc.n)
        for (int l : ells) grid.emplace_back(n, l);
    std::vector<std::future<cohom::CohomologyPrediction>> jobs;
    for (const auto& [n, l] : grid)
        jobs.push_back(std::async(std::launch::async, cohom::predict_h2, rc.base, n, l, rc.k, rc.witnesses));
    std::vector<cohom::CohomologyPrediction> preds;
    for (auto& j : jobs) preds.push_back(j.get());

    lfun::LDataRequest req = rc.base;
    req.t0 = rc.witnesses.front();
    const auto th = lfun::theta(req);
    std::vector<std::pair<int, lfun::UnitModPResult>> units;
    for (int n : rc.n) units.emplace_back(n, lfun::unit_mod_p_check(th, n, rc.kmax));
    const auto rep = cohom::cs_k_theory_restate(preds, units);

    json jp = json::array();
    for (const auto& pr : preds) jp.push_back(serialize::to_json(pr));
    bool ok = true;
    for (const auto& pr : preds) ok = ok && pr.cross_check && pr.witnesses_agree && pr.integral;
    for (const auto& u : units) ok = ok && u.second.pass();
    json report = {{"command", "cs-report"}, {"config", rc.echo}, {"predictions", jp},
                   {"report", serialize::to_json(rep)}, {"pass", ok}};
    std::ostringstream text;
    text << rep.model << "\n" << rep.label << "\n";
    for (const auto& e : rep.entries)
        text << "n=" << e.n << " l=" << e.ell << "  Fit(H1)=" << e.fit_h1 << "  predicted Fit(H2)=" << e.fit_h2
             << (e.unit ? " (unit ideal)" : "") << "\n";
    for (const auto& [n, u] : rep.p_side) text << "n=" << n << " p=" << rep.p << "  " << (u ? "unit" : "NOT a unit") << "\n";
    write_report(rc, render(rc, report, text.str()), out);
    return ok ? Pass : PropertyFailure;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "JSON config file (flags override it)");
    sub->add_option("--kind", o.kind, "carlitz or constant_field");
    sub->add_option("--q", o.q, "field size");
    sub->add_option("--m", o.m, "Carlitz modulus, e.g. t^2+1");
    sub->add_option("--r", o.r, "constant field degree");
    sub->add_option("--s0", o.s0, "places of S0, comma separated (inf,t)");
    sub->add_option("--t0", o.t0, "places of T0; ';' separates witnesses");
    sub->add_option("--n", o.n, "twist range, e.g. 2..4");
    sub->add_option("--ell", o.ell, "primes l, comma separated");
    sub->add_option("--k", o.k, "working precision l^k");
    sub->add_option("--dmax", o.dmax, "truncation degree (default: bound + guard)");
    sub->add_option("--guard", o.guard, "degrees that must vanish");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "report path (written atomically)");
    sub->add_option("--format", o.format, "json or text");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivariant L-functions of abelian extensions of F_q(t) and Fitting ideals"};
    app.require_subcommand(1);
    Options o;
    auto* theta = app.add_subcommand("theta", "compute Theta_{S0,T0}(u)");
    auto* verify = app.add_subcommand("verify", "run the L-function identity suite");
    auto* fitlab = app.add_subcommand("fitlab", "random Fitting-ideal property harness");
    auto* cs = app.add_subcommand("cs-report", "predicted Fitting ideals of H^2 and the K-theory restatement");
    for (auto* s : {theta, verify, fitlab, cs}) add_common(s, o);
    verify->add_option("--corrupt-frobenius", o.corrupt, "test hook: perturb sigma_v at this place");
    verify->add_option("--kmax", o.kmax, "largest k for the mod p^k unit check");
    cs->add_option("--kmax", o.kmax, "largest k for the mod p^k unit check");
    fitlab->add_option("--count", o.count, "instances per property");
    fitlab->add_option("--group", o.group, "cyclic orders of G, e.g. 2,2; ';' separates groups");
    fitlab->add_option("--properties", o.properties, "comma separated subset of properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ConfigError;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        const RunConfig rc = resolve(name, o);
        if (name == "theta") return cmd_theta(rc, out);
        if (name == "verify") return cmd_verify(rc, out, err);
        if (name == "fitlab") return cmd_fitlab(rc, out, err);
        return cmd_cs_report(rc, out);
    } catch (const StabilizationFailure& e) {
        err << "stabilization failure: " << e.what() << "\n";
        return Stabilization;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return Inconsistent;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return PropertyFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ConfigError;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return ConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return ConfigError;
    }
}

}  // namespace equitheta::cli
