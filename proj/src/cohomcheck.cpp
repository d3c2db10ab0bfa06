#include "equitheta/cohomcheck.hpp"

#include <algorithm>
#include <tuple>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::cohom {

using fitting::Elem;
using fitting::ElemMatrix;
using fitting::make_ring;
using grpring::IntElem;
using grpring::RatElem;

namespace {

int mpz_valuation(mpz_class x, int ell) {
    if (x == 0) throw PreconditionError("valuation of zero");
    int v = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(ell)) != 0) {
        x /= ell;
        ++v;
    }
    return v;
}

mpz_class mpz_pow(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

void check_ell(const lfun::ExtensionModel& model, int ell) {
    if (!intmath::is_prime(ell)) throw PreconditionError("l must be prime");
    if (ell == model.ring().base().p()) throw PreconditionError("l must differ from the characteristic p");
}

// 1 - q^{n d_v} sigma_v over Z[G]
IntElem divisor_relation(const lfun::ExtensionModel& model, const ffq::Place& v, int n) {
    IntElem x = IntElem::one(model.group());
    const int s = model.frobenius(v);
    x.set(s, x[s] - mpz_pow(model.q(), static_cast<unsigned long>(n) * v.degree()));
    return x;
}

}  // namespace

// ---- fractional ideals --------------------------------------------------------------

int FracIdeal::shift() const { return mpz_valuation(denominator, numerator.ring()->ell()); }

bool FracIdeal::integral() const {
    const std::int64_t la = intmath::ipow(numerator.ring()->ell(), shift());
    for (const auto& row : numerator.canonical())
        for (auto x : row)
            if (x % la != 0) return false;
    return true;
}

IdealFG FracIdeal::reduce() const {
    if (!integral()) throw ConsistencyError("predicted Fit(H^2) is not integral");
    const auto& src = *numerator.ring();
    const int a = shift();
    if (src.k() != k + a) throw PreconditionError("FracIdeal numerator must live at level k + v_l(D)");
    const std::int64_t la = intmath::ipow(src.ell(), a);
    auto target = make_ring(src.group(), src.ell(), k);
    std::vector<Elem> gens;
    for (const auto& row : numerator.canonical()) {
        zmod::Row r(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) r[i] = row[i] / la;
        gens.push_back(target->from_row(r));
    }
    // the unit part of D does not change the ideal
    return IdealFG(target, std::move(gens));
}

// ---- H^1 --------------------------------------------------------------------------

PresentedModule h1_module(const lfun::ExtensionModel& model, int n, int ell, int k) {
    check_ell(model, ell);
    if (n < 2) throw PreconditionError("h1_module needs n >= 2");
    auto r = make_ring(model.group(), ell, k);
    const std::int64_t N = r->modulus();
    const std::int64_t qinv = intmath::invmod(intmath::mod(model.q(), N), N);
    auto qpow = [&](long long e) { return intmath::powmod(qinv, static_cast<unsigned long long>(e), N); };
    std::vector<Elem> gens;
    const auto& g = *model.group();
    for (int i = 0; i < g.rank(); ++i) {
        const int gi = g.generator(i);
        gens.push_back(r->basis(gi) - r->scalar(qpow(static_cast<long long>(n) * model.constant_degree(gi))));
    }
    gens.push_back(r->one() - r->scalar(qpow(static_cast<long long>(n) * model.rtilde())));
    return PresentedModule::cyclic(r, gens);
}

IdealFG fit_h1(const lfun::ExtensionModel& model, int n, int ell, int k) {
    check_ell(model, ell);
    // the coinvariants are killed by 1 - q^{-n rtilde}, hence by its l-part
    const int v = mpz_valuation(mpz_pow(model.q(), static_cast<unsigned long>(n) * model.rtilde()) - 1, ell);
    const int level = std::max(k, v);
    const IdealFG f = fitting::fit(fitting::dual_vee(h1_module(model, n, ell, level)));
    return fitting::change_level(f, make_ring(model.group(), ell, k));
}

// ---- divisor modules ------------------------------------------------------------------

PresentedModule divisor_module(const lfun::ExtensionModel& model, const std::vector<ffq::Place>& t0, int n, int ell,
                               int k) {
    check_ell(model, ell);
    if (t0.empty()) throw PreconditionError("divisor module needs T0 nonempty");
    auto r = make_ring(model.group(), ell, k);
    const int g = static_cast<int>(t0.size());
    ElemMatrix rel(g, fitting::ElemRow(g, r->zero()));
    for (int i = 0; i < g; ++i) rel[i][i] = r->from_integral(divisor_relation(model, t0[i], n));
    return PresentedModule(r, g, std::move(rel));
}

DivisorCheck divisor_fit_check(const lfun::ExtensionModel& model, const std::vector<ffq::Place>& t0, int n, int ell,
                               int k) {
    check_ell(model, ell);
    auto r = make_ring(model.group(), ell, k);
    bool nzd = true;
    int level = k;
    IntElem product = IntElem::one(model.group());
    for (const auto& v : t0) {
        const IntElem x = divisor_relation(model, v, n);
        if (!fitting::is_non_zero_divisor(x)) {
            nzd = false;
            continue;
        }
        product = product * x;
        level = std::max(level, fitting::faithful_level(model.group(), ell, {{x}}, k));
    }
    if (!nzd) {
        auto z = IdealFG::zero(r);
        return {false, false, false, z, z, z, z};
    }
    const IdealFG f = fitting::fit(divisor_module(model, t0, n, ell, k));
    const IdealFG fd = fitting::change_level(fitting::fit(fitting::dual_vee(divisor_module(model, t0, n, ell, level))), r);
    const IdealFG exp_prod = IdealFG::principal(r, r->from_integral(product));
    const IdealFG exp_delta = IdealFG::principal(r, r->from_integral(lfun::delta_t(model, t0, n)));
    return {true, f == exp_prod, fd == exp_delta, f, fd, exp_prod, exp_delta};
}

// ---- H^2 prediction ---------------------------------------------------------------------

CohomologyPrediction predict_h2(const lfun::LDataRequest& base, int n, int ell, int k,
                                const std::vector<std::vector<ffq::Place>>& witnesses) {
    const auto& model = *base.model;
    check_ell(model, ell);
    if (n < 2) throw PreconditionError("predict_h2 needs n >= 2");
    if (k < 1) throw PreconditionError("k must be >= 1");
    if (witnesses.empty()) throw PreconditionError("predict_h2 needs at least one T0 witness");
    auto rk = make_ring(model.group(), ell, k);
    const IdealFG h1 = fit_h1(model, n, ell, k);

    std::vector<WitnessRecord> records;
    std::vector<FracIdeal> fracs;
    std::vector<RatElem> theta_s0;
    bool cross = true;
    for (const auto& w : witnesses) {
        if (w.empty()) throw PreconditionError("T0 witnesses must be nonempty");
        lfun::LDataRequest req = base;
        req.t0 = w;
        const IntElem theta_t = grpring::to_integer(lfun::theta_special(lfun::theta(req), n));
        const IntElem delta = lfun::delta_t(model, w, n);
        const RatElem dinv = grpring::inverse(grpring::to_rational(delta));
        mpz_class d = 1;
        for (const auto& c : dinv.coeffs()) d = lcm(d, mpz_class(c.get_den()));
        const IntElem d_dinv = grpring::to_integer(dinv.scaled(mpq_class(d)));
        const int a = mpz_valuation(d, ell);

        auto rka = make_ring(model.group(), ell, k + a);
        const IdealFG h1a = fit_h1(model, n, ell, k + a);
        FracIdeal frac{fitting::ideal_mul(h1a, IdealFG::principal(rka, rka->from_integral(theta_t * d_dinv))), d, k};
        if (!frac.integral()) throw ConsistencyError("predicted Fit(H^2) is not integral for T0 witness");
        const IdealFG h2 = frac.reduce();

        // Fit(H^1) * Theta_{S0,T0} = delta * Fit(H^2) in R_k
        const IdealFG lhs = fitting::ideal_mul(h1, IdealFG::principal(rk, rk->from_integral(theta_t)));
        const IdealFG rhs = fitting::ideal_mul(IdealFG::principal(rk, rk->from_integral(delta)), h2);
        cross = cross && lhs == rhs;

        theta_s0.push_back(grpring::to_rational(theta_t) * dinv);
        records.push_back({w, theta_t, delta, h2});
        fracs.push_back(std::move(frac));
    }

    bool agree = true;
    for (std::size_t i = 1; i < records.size(); ++i)
        agree = agree && records[i].fit_h2 == records[0].fit_h2 && theta_s0[i] == theta_s0[0];
    if (!agree) throw ConsistencyError("T0 witnesses give different predictions for Fit(H^2)");

    mpz_class den = 1;
    for (const auto& c : theta_s0[0].coeffs()) den = lcm(den, mpz_class(c.get_den()));
    const IntElem num = grpring::to_integer(theta_s0[0].scaled(mpq_class(den)));

    return CohomologyPrediction{base.model, base.s0,  n,     ell,  k,    h1,   num,
                                den,        fracs[0], records[0].fit_h2, records, true, true, cross};
}

CsReport cs_k_theory_restate(const std::vector<CohomologyPrediction>& predictions,
                             const std::vector<std::pair<int, lfun::UnitModPResult>>& unit_checks) {
    CsReport rep;
    rep.label =
        "prediction: Fitting ideals of K-groups inferred from the cohomological prediction via the "
        "Quillen-Lichtenbaum comparison; no K-group is computed";
    if (!predictions.empty()) {
        rep.model = predictions[0].model->describe();
        rep.p = predictions[0].model->ring().base().p();
    }
    for (const auto& pr : predictions)
        rep.entries.push_back({pr.ell, pr.n, pr.fit_h1.to_string(), pr.fit_h2.to_string(), pr.fit_h2.is_unit()});
    std::sort(rep.entries.begin(), rep.entries.end(),
              [](const CsEntry& a, const CsEntry& b) { return std::tie(a.n, a.ell) < std::tie(b.n, b.ell); });
    for (const auto& [n, u] : unit_checks) rep.p_side.emplace_back(n, u.pass());
    std::sort(rep.p_side.begin(), rep.p_side.end());
    return rep;
}

}  // namespace equitheta::cohom
