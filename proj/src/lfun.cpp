#include "equitheta/lfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::lfun {

using grpring::CyclotomicInt;
using grpring::CyclotomicPoly;

// ---- models -------------------------------------------------------------------------

ExtensionModel ExtensionModel::carlitz(int q, const FqPoly& m) {
    ExtensionModel model(ModelKind::Carlitz, q);
    if (m.degree() < 1 || !m.is_monic()) throw PreconditionError("Carlitz modulus must be monic of degree >= 1");
    model.m_ = m;
    const auto units = ffq::unit_group(q, m);
    std::vector<int> orders;
    for (const auto& [gen, ord] : units.structure) orders.push_back(ord);
    model.group_ = grpring::make_group(orders);
    model.key_to_group_.assign(units.index_of_key.size(), -1);
    for (std::size_t key = 0; key < units.index_of_key.size(); ++key) {
        const int i = units.index_of_key[key];
        if (i >= 0) model.key_to_group_[key] = model.group_->index(units.exponents[i]);
    }
    model.ramified_.push_back(Place::infinity());
    for (const auto& v : ffq::places_up_to(q, m.degree()))
        if (!v.is_infinite() && model.ring_.mod(m, v.poly()).is_zero()) model.ramified_.push_back(v);
    return model;
}

ExtensionModel ExtensionModel::constant_field(int q, int r) {
    ExtensionModel model(ModelKind::ConstantField, q);
    if (r < 1) throw PreconditionError("constant field degree r must be >= 1");
    model.r_ = r;
    model.group_ = grpring::make_group({r});
    return model;
}

int ExtensionModel::constant_degree(int g) const {
    if (kind_ == ModelKind::Carlitz) return 0;
    return group_->exponents(g)[0];
}

int ExtensionModel::lambda() const { return kind_ == ModelKind::Carlitz ? 0 : group_->generator(0); }

bool ExtensionModel::is_ramified(const Place& v) const {
    return std::find(ramified_.begin(), ramified_.end(), v) != ramified_.end();
}

int ExtensionModel::frobenius(const Place& v) const {
    for (const auto& [p, g] : overrides_)
        if (p == v) return g;
    if (is_ramified(v)) throw PreconditionError("Frobenius requested at the ramified place " + to_string(ring_, v));
    if (kind_ == ModelKind::ConstantField) return group_->pow(group_->generator(0), v.degree());
    return sigma(v.poly());
}

int ExtensionModel::sigma(const FqPoly& a) const {
    if (kind_ == ModelKind::ConstantField) return group_->pow(group_->generator(0), a.degree());
    const auto res = ring_.mod(a, m_);
    const int g = key_to_group_[ring_.encode_residue(res, m_.degree())];
    if (g < 0) throw PreconditionError("sigma_a requested for a not prime to m");
    return g;
}

void ExtensionModel::corrupt_frobenius(const Place& v, int g) {
    if (g < 0 || g >= group_->order()) throw PreconditionError("corrupt_frobenius: group index out of range");
    overrides_.emplace_back(v, g);
}

std::string ExtensionModel::describe() const {
    std::ostringstream os;
    if (kind_ == ModelKind::Carlitz)
        os << "carlitz(q=" << q() << ", m=" << ring_.to_string(m_) << ")";
    else
        os << "constant_field(q=" << q() << ", r=" << r_ << ")";
    return os.str();
}

// ---- requests -------------------------------------------------------------------------

void validate(const LDataRequest& req) {
    if (!req.model) throw PreconditionError("request has no model");
    const auto& model = *req.model;
    auto has = [](const std::vector<Place>& s, const Place& v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    if (!has(req.s0, Place::infinity())) throw PreconditionError("S0 must contain the infinite place");
    for (const auto& v : model.ramified())
        if (!has(req.s0, v))
            throw PreconditionError("S0 must contain the ramified place " + to_string(model.ring(), v));
    for (const auto& v : req.t0)
        if (has(req.s0, v)) throw PreconditionError("S0 and T0 must be disjoint (" + to_string(model.ring(), v) + ")");
    std::set<Place> seen;
    for (const auto* s : {&req.s0, &req.t0})
        for (const auto& v : *s) {
            if (!seen.insert(v).second) throw PreconditionError("place listed twice: " + to_string(model.ring(), v));
            if (!v.is_infinite())
                for (int c : v.poly().coeffs)
                    if (c < 0 || c >= model.q()) throw PreconditionError("place coefficients outside F_q");
        }
    if (req.dmax < 0) throw PreconditionError("Dmax must be >= 0");
    if (req.guard < 1) throw PreconditionError("guard must be >= 1");
}

int degree_bound(const LDataRequest& req) {
    int b = req.model->kind() == ModelKind::Carlitz ? req.model->modulus().degree() : 0;
    for (const auto& v : req.s0)
        if (!v.is_infinite()) b += v.degree();
    for (const auto& v : req.t0) b += v.degree();
    return b;
}

// ---- the Dirichlet series --------------------------------------------------------------

namespace {

struct ResidueTables {
    int e;                                 // degree of the modulus
    std::vector<std::vector<int>> powers;  // t^i mod M, i <= dmax
};

ResidueTables residue_tables(const ffq::Field& f, const FqPoly& m, int dmax) {
    ResidueTables t;
    t.e = m.degree();
    std::vector<int> cur(t.e, 0);
    cur[0] = 1;
    if (t.e == 0) throw PreconditionError("residue modulus must be non-constant");
    for (int i = 0; i <= dmax; ++i) {
        t.powers.push_back(cur);
        // multiply by t and reduce by the monic m
        const int top = cur[t.e - 1];
        std::vector<int> next(t.e, 0);
        for (int j = t.e - 1; j >= 1; --j) next[j] = cur[j - 1];
        if (top != 0)
            for (int j = 0; j < t.e; ++j) next[j] = f.sub(next[j], f.mul(top, m.coeff(j)));
        cur = std::move(next);
    }
    return t;
}

std::vector<std::int64_t> census_degree(const ExtensionModel& model, const std::vector<ResidueTables>& tabs,
                                        bool first_is_carlitz, int d) {
    const auto& f = model.ring().base();
    const int q = f.q();
    const auto& g = *model.group();
    std::vector<std::int64_t> counts(g.order(), 0);
    std::vector<std::vector<int>> res;
    for (const auto& t : tabs) res.push_back(t.powers[d]);
    std::vector<int> digits(d, 0);
    const int const_sigma = g.pow(model.lambda(), d);
    while (true) {
        bool coprime = true;
        for (std::size_t j = first_is_carlitz ? 1 : 0; j < res.size() && coprime; ++j) {
            bool zero = true;
            for (int x : res[j])
                if (x != 0) {
                    zero = false;
                    break;
                }
            coprime = !zero;
        }
        if (coprime) {
            int sigma = const_sigma;
            if (first_is_carlitz) {
                std::uint64_t key = 0;
                for (int j = tabs[0].e - 1; j >= 0; --j) key = key * q + static_cast<std::uint64_t>(res[0][j]);
                sigma = model.group_of_key(key);
            }
            if (sigma >= 0) ++counts[sigma];
        }
        // odometer on the low coefficients, updating residues incrementally
        int i = 0;
        for (; i < d; ++i) {
            const int old = digits[i];
            const int nxt = (old + 1) % q;
            const int delta = f.sub(nxt, old);
            for (std::size_t j = 0; j < res.size(); ++j) {
                const auto& p = tabs[j].powers[i];
                for (int s = 0; s < tabs[j].e; ++s)
                    if (p[s] != 0) res[j][s] = f.add(res[j][s], f.mul(delta, p[s]));
            }
            digits[i] = nxt;
            if (nxt != 0) break;
        }
        if (i == d) break;
    }
    return counts;
}

}  // namespace

std::vector<std::vector<std::int64_t>> monic_census(const ExtensionModel& model, const std::vector<FqPoly>& excluded,
                                                    int dmax) {
    ffq::checked_power(model.q(), dmax);
    const auto& f = model.ring().base();
    std::vector<ResidueTables> tabs;
    const bool carlitz = model.kind() == ModelKind::Carlitz;
    if (carlitz) tabs.push_back(residue_tables(f, model.modulus(), dmax));
    for (const auto& p : excluded) tabs.push_back(residue_tables(f, p, dmax));

    std::vector<std::future<std::vector<std::int64_t>>> jobs;
    for (int d = 0; d <= dmax; ++d) {
        const bool big = std::pow(static_cast<double>(model.q()), d) >= 4096.0;
        jobs.push_back(std::async(big ? std::launch::async : std::launch::deferred, census_degree, std::cref(model),
                                  std::cref(tabs), carlitz, d));
    }
    std::vector<std::vector<std::int64_t>> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

namespace {

IntPoly series_poly(const ExtensionModel& model, const std::vector<Place>& s0, int dmax) {
    std::vector<FqPoly> excluded;
    for (const auto& v : s0)
        if (!v.is_infinite()) excluded.push_back(v.poly());
    const auto census = monic_census(model, excluded, dmax);
    const auto& g = *model.group();
    std::vector<IntElem> coeffs;
    for (const auto& row : census) {
        IntElem c(model.group());
        for (int s = 0; s < g.order(); ++s)
            if (row[s] != 0) c.set(g.inv(s), c[g.inv(s)] + row[s]);
        coeffs.push_back(std::move(c));
    }
    return IntPoly(model.group(), {}, std::move(coeffs));
}

// 1 - c * h * u^d
IntPoly one_minus(const GroupPtr& g, const mpz_class& c, int h, int d) {
    std::vector<IntElem> coeffs(d + 1, IntElem(g));
    coeffs[0] = IntElem::one(g);
    IntElem t(g);
    t.set(h, -c);
    coeffs[d] += t;
    return IntPoly(g, {}, std::move(coeffs));
}

mpz_class mpz_pow(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

IntPoly t_factor(const ExtensionModel& model, const std::vector<Place>& t0) {
    const auto& g = model.group();
    IntPoly acc(g, {}, {IntElem::one(g)});
    for (const auto& v : t0)
        acc = acc * one_minus(g, mpz_pow(model.q(), v.degree()), g->inv(model.frobenius(v)), v.degree());
    return acc;
}

// |H| - q u lambda^{-1} sum_{h in H} h
IntPoly pole_factor(const ExtensionModel& model) {
    const auto& g = model.group();
    IntElem c0(g), c1(g);
    long h_size = 0;
    const int li = g->inv(model.lambda());
    for (int h = 0; h < g->order(); ++h)
        if (model.constant_degree(h) == 0) {
            ++h_size;
            c1.set(g->mul(li, h), -model.q());
        }
    c0.set(0, h_size);
    return IntPoly(g, {}, {c0, c1});
}

long kernel_size(const ExtensionModel& model) {
    long s = 0;
    for (int h = 0; h < model.group()->order(); ++h)
        if (model.constant_degree(h) == 0) ++s;
    return s;
}

// Trailing window (dmax - guard, dmax] must vanish.
void check_window(const IntPoly& p, int dmax, int guard) {
    const int lo = std::max(0, dmax - guard + 1);
    for (int d = lo; d <= dmax; ++d)
        if (d <= p.degree() && !p.coeffs()[d].is_zero())
            throw StabilizationFailure("coefficient of u^" + std::to_string(d) + " does not vanish within Dmax=" +
                                           std::to_string(dmax) + " (guard " + std::to_string(guard) + ")",
                                       d);
}

CyclotomicPoly divexact(CyclotomicPoly p, long d) {
    for (auto& c : p) c.divexact(d);
    return p;
}

}  // namespace

ThetaPoly theta(const LDataRequest& req) {
    validate(req);
    const auto& model = *req.model;
    ThetaPoly th{req, 0, 0, IntPoly(model.group()), IntPoly(model.group()), IntPoly(model.group()), {}};
    th.dmax = req.dmax > 0 ? req.dmax : degree_bound(req) + req.guard;
    const IntPoly series = series_poly(model, req.s0, th.dmax);
    if (!req.t0.empty()) {
        th.poly = series.mul_truncated(t_factor(model, req.t0), th.dmax);
        check_window(th.poly, th.dmax, req.guard);
        th.stabilization_degree = th.poly.degree();
        return th;
    }
    th.denominator = pole_factor(model);
    th.numerator = series.mul_truncated(th.denominator, th.dmax);
    check_window(th.numerator, th.dmax, req.guard);
    th.stabilization_degree = th.numerator.degree();
    const long hs = kernel_size(model);
    for (const auto& chi : grpring::characters(model.group())) {
        th.components.push_back({chi, divexact(grpring::char_eval(th.numerator, chi), hs),
                                 divexact(grpring::char_eval(th.denominator, chi), hs)});
    }
    return th;
}

IntElem delta_t(const ExtensionModel& model, const std::vector<Place>& t0, int n) {
    if (n < 0) throw PreconditionError("delta_t: n must be >= 0");
    const auto& g = model.group();
    IntElem acc = IntElem::one(g);
    for (const auto& v : t0) {
        if (model.is_ramified(v)) throw PreconditionError("delta_t: T0 place is ramified");
        IntElem f = IntElem::one(g);
        f.set(g->inv(model.frobenius(v)), f[g->inv(model.frobenius(v))] - mpz_pow(model.q(), static_cast<unsigned long>(n) * v.degree()));
        acc = acc * f;
    }
    return acc;
}

RatElem theta_special(const ThetaPoly& th, int n) {
    const mpq_class u0(mpz_pow(th.request.model->q(), static_cast<unsigned long>(std::max(n - 1, 0))),
                       mpz_class(1));
    if (n < 1) throw PreconditionError("theta_special: n must be >= 1");
    if (!th.is_rational()) return grpring::eval_poly(th.poly, u0);
    const RatElem num = grpring::eval_poly(th.numerator, u0);
    const RatElem den = grpring::eval_poly(th.denominator, u0);
    return num * grpring::inverse(den);
}

RatElem twist_project(const ThetaPoly& th, int n) {
    if (th.is_rational()) throw PreconditionError("twist_project needs T0 nonempty");
    const auto& model = *th.request.model;
    const int rt = model.rtilde();
    RatElem out(model.group());
    for (int k = 0; k <= th.poly.degree(); ++k) {
        // u^k g is the element (g, gamma_q^{-k}); c of it is q^{-k}
        mpq_class factor = 1;
        const long e = static_cast<long>(k) * (n - 1);
        if (e >= 0)
            factor = mpq_class(mpz_pow(model.q(), static_cast<unsigned long>(e)));
        else
            factor = mpq_class(mpz_class(1), mpz_pow(model.q(), static_cast<unsigned long>(-e)));
        const auto& c = th.poly.coeffs()[k];
        for (int g = 0; g < model.group()->order(); ++g) {
            if (c[g] == 0) continue;
            if (intmath::mod(model.constant_degree(g) + k, rt) != 0)
                throw ConsistencyError("twist_project: term u^" + std::to_string(k) + " " + model.group()->label(g) +
                                       " does not lie in the infinite-level group");
            out.set(g, out[g] + factor * mpq_class(c[g]));
        }
    }
    return out;
}

EulerFactorResult euler_factor_check(const LDataRequest& req, const Place& v) {
    const auto& model = *req.model;
    if (v.is_infinite() || model.is_ramified(v)) throw PreconditionError("euler_factor_check: v must be unramified and finite");
    if (std::find(req.s0.begin(), req.s0.end(), v) != req.s0.end() ||
        std::find(req.t0.begin(), req.t0.end(), v) != req.t0.end())
        throw PreconditionError("euler_factor_check: v must lie outside S0 and T0");
    LDataRequest bigger = req;
    bigger.s0.push_back(v);
    if (req.dmax > 0) bigger.dmax = req.dmax + v.degree();
    const ThetaPoly a = theta(req);
    const ThetaPoly b = theta(bigger);
    const auto& g = model.group();
    const IntPoly factor = one_minus(g, 1, g->inv(model.frobenius(v)), v.degree());
    // removing v from the product multiplies by its Euler factor
    EulerFactorResult res{false, b.is_rational() ? b.numerator : b.poly,
                          factor * (a.is_rational() ? a.numerator : a.poly)};
    res.pass = res.lhs == res.rhs;
    return res;
}

WeilResult weil_check(const LDataRequest& req, const grpring::Character& chi, double tol) {
    if (chi.is_trivial()) throw PreconditionError("weil_check needs a nontrivial character");
    LDataRequest r = req;
    r.t0.clear();
    const ThetaPoly th = theta(r);
    const CharacterComponent* comp = nullptr;
    for (const auto& c : th.components)
        if (c.chi == chi) comp = &c;
    if (comp == nullptr) throw PreconditionError("character does not belong to the model's group");

    WeilResult res;
    const auto& num = comp->numerator;
    const int d = static_cast<int>(num.size()) - 1;
    const double sq = std::sqrt(static_cast<double>(req.model->q()));
    if (d <= 0) {
        res.pass = true;
        return res;
    }
    std::vector<std::complex<double>> c;
    for (const auto& x : num) c.push_back(x.to_complex());
    if (std::abs(c[0] - 1.0) > 1e-12) throw NumericFailure("L-polynomial does not have constant term 1");
    // inverse roots are the roots of x^d N(1/x), monic since N(0) = 1
    Eigen::MatrixXcd comp_m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp_m(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp_m(i, d - 1) = -c[d - i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp_m);
    if (es.info() != Eigen::Success) throw NumericFailure("eigenvalue solver did not converge");
    res.pass = true;
    for (int i = 0; i < d; ++i) {
        const std::complex<double> a = es.eigenvalues()[i];
        std::complex<double> val = 0.0;  // sum c_j a^{d-j}
        for (int j = 0; j <= d; ++j) val = val * a + c[j];
        double scale = 0.0;
        for (int j = 0; j <= d; ++j) scale += std::abs(c[j]) * std::pow(std::abs(a), d - j);
        if (std::abs(val) > 1e-8 * std::max(1.0, scale)) throw NumericFailure("inverse root residual too large");
        res.inverse_roots.push_back(a);
        const double m = std::abs(a);
        res.moduli.push_back(m);
        if (std::abs(m - 1.0) > tol && std::abs(m - sq) > tol) res.pass = false;
    }
    std::sort(res.moduli.begin(), res.moduli.end());
    return res;
}

grpring::ModElem unit_inverse_mod(const IntElem& value, int p, int k) {
    const auto n = intmath::ipow(p, k);
    const auto v = grpring::reduce(value, n);
    const auto one = grpring::ModElem::one(value.group(), grpring::ModularRing(n));
    const auto x = v - one;
    // (1 + x)^{-1} = sum_{i<k} (-x)^i since x^k = 0
    auto term = one;
    auto acc = one;
    for (int i = 1; i < k; ++i) {
        term = term * (-x);
        acc += term;
    }
    return acc;
}

UnitModPResult unit_mod_p_check(const ThetaPoly& th, int n, int kmax) {
    if (th.is_rational()) throw PreconditionError("unit_mod_p_check needs T0 nonempty");
    if (n < 2) throw PreconditionError("unit_mod_p_check needs n >= 2");
    UnitModPResult res;
    const auto& g = th.request.model->group();
    const int p = th.request.model->ring().base().p();
    res.integral_form = !th.poly.is_zero() && th.poly.coeffs()[0] == IntElem::one(g);
    const RatElem val = theta_special(th, n);
    bool integral = true;
    for (const auto& c : val.coeffs()) integral = integral && c.get_den() == 1;
    if (!integral) return res;
    const IntElem v = grpring::to_integer(val);
    res.congruent = true;
    res.invertible = true;
    for (int k = 1; k <= kmax; ++k) {
        const auto nk = intmath::ipow(p, k);
        const auto vm = grpring::reduce(v, nk);
        const auto one = grpring::ModElem::one(g, grpring::ModularRing(nk));
        const auto diff = vm - one;
        for (const auto& c : diff.coeffs())
            if (c % p != 0) res.congruent = false;
        if (!res.congruent) {
            res.invertible = false;
            break;
        }
        if (!(vm * unit_inverse_mod(v, p, k) == one)) res.invertible = false;
    }
    return res;
}

bool t0_independence_check(const LDataRequest& base, const std::vector<Place>& t0a, const std::vector<Place>& t0b,
                           int n) {
    if (t0a.empty() || t0b.empty()) throw PreconditionError("t0_independence_check needs nonempty T0 sets");
    LDataRequest ra = base, rb = base;
    ra.t0 = t0a;
    rb.t0 = t0b;
    const auto& model = *base.model;
    const RatElem va = theta_special(theta(ra), n);
    const RatElem vb = theta_special(theta(rb), n);
    const RatElem da = grpring::to_rational(delta_t(model, t0a, n));
    const RatElem db = grpring::to_rational(delta_t(model, t0b, n));
    return db * va == da * vb;
}

}  // namespace equitheta::lfun
