#include "equitheta/fitting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::fitting {

using intmath::mod;
using intmath::mulmod;
using zmod::Matrix;
using zmod::Row;

namespace {

// h * x for x in R^gens flattened to (Z/N)^{gens |G|}.
Row translate_row(const Row& x, int h, const grpring::FinAbGroup& g) {
    const int n = g.order();
    Row y(x.size(), 0);
    for (std::size_t b = 0; b < x.size(); b += n)
        for (int i = 0; i < n; ++i) y[b + g.mul(h, i)] = x[b + i];
    return y;
}

Matrix all_translates(const Matrix& rows, const grpring::FinAbGroup& g) {
    Matrix out;
    out.reserve(rows.size() * g.order());
    for (const auto& r : rows)
        for (int h = 0; h < g.order(); ++h) out.push_back(translate_row(r, h, g));
    return out;
}

Row flatten(const ElemRow& v) {
    Row out;
    for (const auto& e : v) out.insert(out.end(), e.coeffs().begin(), e.coeffs().end());
    return out;
}

ElemRow unflatten(const FinGroupRing& r, const Row& v) {
    const int n = r.group_order();
    ElemRow out;
    for (std::size_t b = 0; b < v.size(); b += n) out.push_back(r.from_row(Row(v.begin() + b, v.begin() + b + n)));
    return out;
}

std::string elem_string(const Elem& x) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < x.group_ref().order(); ++i) {
        if (x[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0)
            os << x[i];
        else if (x[i] == 1)
            os << x.group_ref().label(i);
        else
            os << x[i] << "*" << x.group_ref().label(i);
    }
    if (first) os << "0";
    return os.str();
}

// l-adic power of an integer d | N, d = l^v.
int log_ell(std::int64_t d, int ell) {
    int v = 0;
    while (d % ell == 0) {
        d /= ell;
        ++v;
    }
    return v;
}

mpz_class pow_mpz(std::int64_t base, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

// ---- ring -------------------------------------------------------------------

FinGroupRing::FinGroupRing(GroupPtr g, int ell, int k) : g_(std::move(g)), ell_(ell), k_(k) {
    if (!intmath::is_prime(ell)) throw PreconditionError("l must be prime");
    if (k < 1) throw PreconditionError("k must be >= 1");
    n_ = intmath::ipow(ell, k);
}

Elem FinGroupRing::scalar(long long s) const { return Elem::scalar(g_, mod(s, n_), coeff_ring()); }

Elem FinGroupRing::from_integral(const grpring::IntElem& x) const {
    if (!(*x.group() == *g_)) throw PreconditionError("element of a different group");
    return grpring::reduce(x, n_);
}

Elem FinGroupRing::from_row(const Row& r) const {
    Row c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = mod(r[i], n_);
    return Elem(g_, coeff_ring(), std::move(c));
}

RingPtr make_ring(GroupPtr g, int ell, int k) { return std::make_shared<const FinGroupRing>(std::move(g), ell, k); }

// ---- ideals -----------------------------------------------------------------

IdealFG::IdealFG(RingPtr r, std::vector<Elem> generators) : r_(std::move(r)), gens_(std::move(generators)) {
    Matrix rows;
    for (const auto& x : gens_) {
        if (!(*x.group() == *r_->group()) || x.ring().modulus() != r_->modulus())
            throw PreconditionError("ideal generator lives in a different ring");
        rows.push_back(x.coeffs());
    }
    howell_ = zmod::howell_form(all_translates(rows, *r_->group()), r_->modulus(), r_->group_order());
}

IdealFG IdealFG::unit(RingPtr r) {
    auto one = r->one();
    return IdealFG(std::move(r), {one});
}

std::vector<Elem> IdealFG::basis() const {
    std::vector<Elem> out;
    for (const auto& row : howell_) out.push_back(r_->from_row(row));
    return out;
}

bool IdealFG::contains(const Elem& x) const { return zmod::in_span(howell_, x.coeffs(), r_->modulus()); }

bool IdealFG::contains(const IdealFG& j) const {
    if (!(*r_ == *j.r_)) throw PreconditionError("ideals over different rings");
    return zmod::contains(howell_, j.howell_, r_->modulus());
}

bool IdealFG::is_unit() const { return contains(r_->one()); }

mpz_class IdealFG::size() const {
    mpz_class s = 1;
    for (const auto& row : howell_) s *= static_cast<long>(r_->modulus() / row[zmod::pivot_col(row)]);
    return s;
}

bool operator==(const IdealFG& a, const IdealFG& b) { return *a.r_ == *b.r_ && a.howell_ == b.howell_; }

std::string IdealFG::to_string() const {
    if (howell_.empty()) return "<0>";
    std::ostringstream os;
    os << "<";
    bool first = true;
    for (const auto& x : basis()) {
        if (!first) os << ", ";
        first = false;
        os << elem_string(x);
    }
    os << ">";
    return os.str();
}

bool ideal_eq(const IdealFG& a, const IdealFG& b) {
    if (!(*a.ring() == *b.ring())) throw PreconditionError("ideal_eq: ring mismatch");
    return a == b;
}

IdealFG ideal_mul(const IdealFG& a, const IdealFG& b) {
    if (!(*a.ring() == *b.ring())) throw PreconditionError("ideal_mul: ring mismatch");
    std::vector<Elem> prods;
    for (const auto& x : a.basis())
        for (const auto& y : b.basis()) prods.push_back(x * y);
    return IdealFG(a.ring(), std::move(prods));
}

IdealFG ideal_add(const IdealFG& a, const IdealFG& b) {
    if (!(*a.ring() == *b.ring())) throw PreconditionError("ideal_add: ring mismatch");
    auto g = a.basis();
    for (const auto& y : b.basis()) g.push_back(y);
    return IdealFG(a.ring(), std::move(g));
}

IdealFG iota(const IdealFG& a) {
    std::vector<Elem> g;
    for (const auto& x : a.basis()) g.push_back(grpring::iota(x));
    return IdealFG(a.ring(), std::move(g));
}

IdealFG change_level(const IdealFG& a, const RingPtr& target) {
    if (!(*target->group() == *a.ring()->group()) || a.ring()->modulus() % target->modulus() != 0)
        throw PreconditionError("change_level: target is not a quotient ring");
    std::vector<Elem> g;
    for (const auto& row : a.canonical()) g.push_back(target->from_row(row));
    return IdealFG(target, std::move(g));
}

namespace {

Elem map_elem(const Elem& x, const FinGroupRing& target, const std::vector<int>& hom) {
    Row y(target.group_order(), 0);
    for (int i = 0; i < x.group_ref().order(); ++i) y[hom[i]] += x[i];
    return target.from_row(y);
}

void check_hom(const grpring::FinAbGroup& g, const grpring::FinAbGroup& h, const std::vector<int>& hom) {
    if (static_cast<int>(hom.size()) != g.order()) throw PreconditionError("group map has the wrong size");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (hom[g.mul(a, b)] != h.mul(hom[a], hom[b]))
                throw PreconditionError("group map is not a homomorphism");
}

}  // namespace

IdealFG map_group(const IdealFG& a, const RingPtr& target, const std::vector<int>& hom) {
    check_hom(*a.ring()->group(), *target->group(), hom);
    if (a.ring()->modulus() % target->modulus() != 0) throw PreconditionError("map_group: modulus mismatch");
    std::vector<Elem> g;
    for (const auto& x : a.basis()) g.push_back(map_elem(x, *target, hom));
    return IdealFG(target, std::move(g));
}

void check_character(const FinGroupRing& r, const std::vector<std::int64_t>& c) {
    const auto& g = *r.group();
    const auto n = r.modulus();
    if (static_cast<int>(c.size()) != g.order()) throw PreconditionError("character table has the wrong size");
    for (int a = 0; a < g.order(); ++a) {
        if (std::gcd(mod(c[a], n), n) != 1) throw PreconditionError("character value is not a unit");
        for (int b = 0; b < g.order(); ++b)
            if (mod(c[g.mul(a, b)], n) != mulmod(mod(c[a], n), mod(c[b], n), n))
                throw PreconditionError("c is not multiplicative");
    }
}

Elem twist_elem(const Elem& x, int m, const std::vector<std::int64_t>& c) {
    const auto n = x.ring().modulus();
    Row y(x.coeffs().size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto ci = mod(c[i], n);
        const auto f = m >= 0 ? intmath::powmod(intmath::invmod(ci, n), m, n) : intmath::powmod(ci, -static_cast<long long>(m), n);
        y[i] = mulmod(x[static_cast<int>(i)], f, n);
    }
    return Elem(x.group(), x.ring(), std::move(y));
}

IdealFG twist_ideal(const IdealFG& a, int m, const std::vector<std::int64_t>& c) {
    check_character(*a.ring(), c);
    std::vector<Elem> g;
    for (const auto& x : a.basis()) g.push_back(twist_elem(x, m, c));
    return IdealFG(a.ring(), std::move(g));
}

// ---- presented modules --------------------------------------------------------

PresentedModule::PresentedModule(RingPtr r, int gens, ElemMatrix relations) : r_(std::move(r)), gens_(gens) {
    if (gens < 0) throw PreconditionError("negative generator count");
    for (auto& row : relations) {
        if (static_cast<int>(row.size()) != gens) throw PreconditionError("relation row has the wrong length");
        bool zero = true;
        for (const auto& e : row) {
            if (e.ring().modulus() != r_->modulus() || !(*e.group() == *r_->group()))
                throw PreconditionError("relation entry lives in a different ring");
            zero = zero && e.is_zero();
        }
        if (!zero) rel_.push_back(std::move(row));
    }
}

PresentedModule PresentedModule::cyclic(RingPtr r, const std::vector<Elem>& ideal_generators) {
    ElemMatrix rel;
    for (const auto& x : ideal_generators) rel.push_back({x});
    return PresentedModule(std::move(r), 1, std::move(rel));
}

const Matrix& PresentedModule::relation_span() const {
    if (!span_ready_) {
        Matrix rows;
        for (const auto& row : rel_) rows.push_back(flatten(row));
        span_ = zmod::howell_form(all_translates(rows, *r_->group()), r_->modulus(),
                                  static_cast<std::size_t>(gens_) * r_->group_order());
        span_ready_ = true;
    }
    return span_;
}

mpz_class PresentedModule::order() const {
    mpz_class total = pow_mpz(r_->modulus(), static_cast<long>(gens_) * r_->group_order());
    mpz_class span = 1;
    for (const auto& row : relation_span()) span *= static_cast<long>(r_->modulus() / row[zmod::pivot_col(row)]);
    return total / span;
}

bool PresentedModule::killed_by(std::int64_t s) const {
    const int n = r_->group_order();
    for (int i = 0; i < gens_; ++i) {
        Row v(static_cast<std::size_t>(gens_) * n, 0);
        v[static_cast<std::size_t>(i) * n] = mod(s, r_->modulus());
        if (!zmod::in_span(relation_span(), v, r_->modulus())) return false;
    }
    return true;
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
    if (!(*a.ring() == *b.ring())) throw PreconditionError("direct_sum: ring mismatch");
    const auto& r = *a.ring();
    const int g = a.gens() + b.gens();
    ElemMatrix rel;
    for (const auto& row : a.relations()) {
        ElemRow x(row);
        for (int i = 0; i < b.gens(); ++i) x.push_back(r.zero());
        rel.push_back(std::move(x));
    }
    for (const auto& row : b.relations()) {
        ElemRow x;
        for (int i = 0; i < a.gens(); ++i) x.push_back(r.zero());
        x.insert(x.end(), row.begin(), row.end());
        rel.push_back(std::move(x));
    }
    return PresentedModule(a.ring(), g, std::move(rel));
}

PresentedModule change_level(const PresentedModule& m, const RingPtr& target) {
    if (!(*target->group() == *m.ring()->group()) || m.ring()->modulus() % target->modulus() != 0)
        throw PreconditionError("change_level: target is not a quotient ring");
    ElemMatrix rel;
    for (const auto& row : m.relations()) {
        ElemRow x;
        for (const auto& e : row) x.push_back(target->from_row(e.coeffs()));
        rel.push_back(std::move(x));
    }
    return PresentedModule(target, m.gens(), std::move(rel));
}

PresentedModule map_group(const PresentedModule& m, const RingPtr& target, const std::vector<int>& hom) {
    check_hom(*m.ring()->group(), *target->group(), hom);
    ElemMatrix rel;
    for (const auto& row : m.relations()) {
        ElemRow x;
        for (const auto& e : row) x.push_back(map_elem(e, *target, hom));
        rel.push_back(std::move(x));
    }
    return PresentedModule(target, m.gens(), std::move(rel));
}

PresentedModule twist_presentation(const PresentedModule& m, int twist, const std::vector<std::int64_t>& c) {
    check_character(*m.ring(), c);
    ElemMatrix rel;
    for (const auto& row : m.relations()) {
        ElemRow x;
        for (const auto& e : row) x.push_back(twist_elem(e, twist, c));
        rel.push_back(std::move(x));
    }
    return PresentedModule(m.ring(), m.gens(), std::move(rel));
}

// ---- Fitting ideals and annihilators ---------------------------------------------

namespace {

// Determinant of the square submatrix on `rows` by a DP over used-column masks.
template <class E>
E minor_det(const std::vector<std::vector<E>>& a, const std::vector<int>& rows, const E& zero, const E& one) {
    const int g = static_cast<int>(rows.size());
    std::vector<E> dp(std::size_t{1} << g, zero);
    std::vector<bool> live(dp.size(), false);
    dp[0] = one;
    live[0] = true;
    for (unsigned mask = 0; mask < dp.size(); ++mask) {
        if (!live[mask]) continue;
        const int i = std::popcount(mask);
        if (i == g) continue;
        for (int c = 0; c < g; ++c) {
            if (mask & (1u << c)) continue;
            const auto& e = a[rows[i]][c];
            if (e.is_zero()) continue;
            const bool odd = std::popcount(mask >> (c + 1)) % 2 == 1;
            E term = dp[mask] * e;
            const unsigned nm = mask | (1u << c);
            if (odd)
                dp[nm] -= term;
            else
                dp[nm] += term;
            live[nm] = true;
        }
    }
    return dp.back();
}

}  // namespace

IdealFG fit(const PresentedModule& m) {
    const auto& r = m.ring();
    const int g = m.gens();
    if (g == 0) return IdealFG::unit(r);
    const auto& rel = m.relations();
    const int nr = static_cast<int>(rel.size());
    if (nr < g) return IdealFG::zero(r);
    if (g > 10) throw CapExceeded("fit: more than 10 generators");
    mpz_class count;
    mpz_bin_uiui(count.get_mpz_t(), nr, g);
    if (count > 200000) throw CapExceeded("fit: " + count.get_str() + " minors exceeds the cap");

    const int n = r->group_order();
    const auto modulus = r->modulus();
    Matrix basis, pending;
    auto flush = [&] {
        for (auto& row : basis) pending.push_back(row);
        basis = zmod::howell_form(std::move(pending), modulus, n);
        pending.clear();
    };
    std::vector<int> rows(g);
    for (int i = 0; i < g; ++i) rows[i] = i;
    const Elem zero = r->zero(), one = r->one();
    while (true) {
        const Elem d = minor_det(rel, rows, zero, one);
        if (!d.is_zero())
            for (int h = 0; h < n; ++h) pending.push_back(translate_row(d.coeffs(), h, *r->group()));
        if (pending.size() > 512) flush();
        int i = g - 1;
        while (i >= 0 && rows[i] == nr - g + i) --i;
        if (i < 0) break;
        ++rows[i];
        for (int j = i + 1; j < g; ++j) rows[j] = rows[j - 1] + 1;
    }
    flush();
    std::vector<Elem> gens;
    for (const auto& row : basis) gens.push_back(r->from_row(row));
    return IdealFG(r, std::move(gens));
}

IdealFG ann(const PresentedModule& m) {
    const auto& r = m.ring();
    const int g = m.gens();
    const int n = r->group_order();
    if (g == 0) return IdealFG::unit(r);
    const std::size_t block = static_cast<std::size_t>(g) * n;  // one copy of R^g
    const std::size_t left = block * g;
    Matrix rows;
    // x -> (x e_1, ..., x e_g) in M^g, one row per basis element h of R
    for (int h = 0; h < n; ++h) {
        Row row(left + n, 0);
        for (int i = 0; i < g; ++i) row[i * block + static_cast<std::size_t>(i) * n + h] = 1;
        row[left + h] = 1;
        rows.push_back(std::move(row));
    }
    for (int c = 0; c < g; ++c)
        for (const auto& rho : m.relation_span()) {
            Row row(left + n, 0);
            std::copy(rho.begin(), rho.end(), row.begin() + static_cast<std::ptrdiff_t>(c * block));
            rows.push_back(std::move(row));
        }
    Matrix h = zmod::howell_form(std::move(rows), r->modulus(), left + n);
    std::vector<Elem> gens;
    for (const auto& row : h)
        if (zmod::pivot_col(row) >= left) gens.push_back(r->from_row(Row(row.begin() + static_cast<std::ptrdiff_t>(left), row.end())));
    return IdealFG(r, std::move(gens));
}

// ---- finite abelian modules with G-action ------------------------------------------

mpz_class AbelianModule::order() const {
    mpz_class s = 1;
    for (int a : exps) s *= pow_mpz(ring->ell(), a);
    return s;
}

Row AbelianModule::embed(const Row& y) const {
    const auto n = ring->modulus();
    Row out(y.size());
    for (std::size_t j = 0; j < y.size(); ++j)
        out[j] = mulmod(mod(y[j], n), intmath::ipow(ring->ell(), ring->k() - exps[j]), n);
    return out;
}

Row AbelianModule::act(int h, const Row& y) const {
    const std::size_t s = exps.size();
    Row out(s, 0);
    const auto& a = action[h];
    for (std::size_t j = 0; j < s; ++j) {
        const auto nj = intmath::ipow(ring->ell(), exps[j]);
        long long acc = 0;
        for (std::size_t i = 0; i < s; ++i) acc = mod(acc + mulmod(mod(y[i], nj), mod(a[i][j], nj), nj), nj);
        out[j] = acc;
    }
    return out;
}

AbelianModule subquotient(const RingPtr& r, int gens, const Matrix& u, const Matrix& w) {
    const auto n = r->modulus();
    const auto& g = *r->group();
    const std::size_t dim = static_cast<std::size_t>(gens) * g.order();
    Matrix all = u;
    all.insert(all.end(), w.begin(), w.end());
    const Matrix hu = zmod::howell_form(std::move(all), n, dim);
    const std::size_t s = hu.size();

    Matrix rels = zmod::left_kernel(hu, n, dim);
    for (const auto& x : w) {
        auto red = zmod::reduce(hu, x, n);
        if (!red.member()) throw ConsistencyError("subquotient: W is not contained in U");
        rels.push_back(red.coeffs);
    }
    const auto snf = zmod::smith_prime_power(rels, r->ell(), r->k(), s);

    AbelianModule out;
    out.ring = r;
    std::vector<std::size_t> kept;
    Matrix gens_amb;
    for (std::size_t j = 0; j < s; ++j) {
        if (snf.diagonal[j] == 1) continue;
        kept.push_back(j);
        out.exps.push_back(log_ell(snf.diagonal[j], r->ell()));
        Row v(dim, 0);
        for (std::size_t i = 0; i < s; ++i) {
            const auto c = snf.v_inverse[j][i];
            if (c == 0) continue;
            for (std::size_t t = 0; t < dim; ++t) v[t] = mod(v[t] + mulmod(c, hu[i][t], n), n);
        }
        gens_amb.push_back(std::move(v));
    }
    auto coords = [&](const Row& x) {
        auto red = zmod::reduce(hu, x, n);
        if (!red.member()) throw ConsistencyError("subquotient: U is not G-stable");
        Row y(kept.size(), 0);
        for (std::size_t jj = 0; jj < kept.size(); ++jj) {
            const std::size_t j = kept[jj];
            long long acc = 0;
            for (std::size_t i = 0; i < s; ++i) acc = mod(acc + mulmod(red.coeffs[i], snf.v[i][j], n), n);
            y[jj] = acc % snf.diagonal[j];
        }
        return y;
    };
    out.action.resize(g.order());
    for (int h = 0; h < g.order(); ++h)
        for (const auto& v : gens_amb) out.action[h].push_back(coords(translate_row(v, h, g)));
    return out;
}

AbelianModule decompose(const PresentedModule& m) {
    const std::size_t dim = static_cast<std::size_t>(m.gens()) * m.ring()->group_order();
    Matrix id(dim, Row(dim, 0));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    return subquotient(m.ring(), m.gens(), id, m.relation_span());
}

AbelianModule dual(const AbelianModule& m, bool contragredient) {
    const auto& g = *m.ring->group();
    const std::size_t s = m.exps.size();
    const int ell = m.ring->ell();
    AbelianModule out;
    out.ring = m.ring;
    out.exps = m.exps;
    out.action.resize(g.order());
    for (int h = 0; h < g.order(); ++h) {
        const auto& a = m.action[contragredient ? g.inv(h) : h];
        Matrix b(s, Row(s, 0));
        for (std::size_t kk = 0; kk < s; ++kk)
            for (std::size_t j = 0; j < s; ++j) {
                const auto nj = intmath::ipow(ell, m.exps[j]);
                long long x = a[j][kk];
                const int shift = m.exps[j] - m.exps[kk];
                if (shift >= 0) {
                    x = mulmod(x, intmath::ipow(ell, shift), nj);
                } else {
                    const auto d = intmath::ipow(ell, -shift);
                    if (x % d != 0) throw ConsistencyError("dual: action matrix is not well defined");
                    x /= d;
                }
                b[kk][j] = mod(x, nj);
            }
        out.action[h] = std::move(b);
    }
    return out;
}

PresentedModule present(const AbelianModule& m) {
    const auto& r = m.ring;
    const auto& g = *r->group();
    const auto n = r->modulus();
    const std::size_t s = m.exps.size();
    if (s == 0) return PresentedModule(r, 0, {});
    const mpz_class target = m.order();

    auto span_of = [&](const std::vector<Row>& elems) {
        Matrix rows;
        for (const auto& y : elems)
            for (int h = 0; h < g.order(); ++h) rows.push_back(m.embed(m.act(h, y)));
        return zmod::howell_form(std::move(rows), n, s);
    };
    auto size_of = [&](const Matrix& hw) {
        mpz_class z = 1;
        for (const auto& row : hw) z *= static_cast<long>(n / row[zmod::pivot_col(row)]);
        return z;
    };

    std::vector<Row> candidates;
    for (std::size_t j = 0; j < s; ++j) {
        Row e(s, 0);
        e[j] = 1;
        candidates.push_back(e);
    }
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            Row e(s, 0);
            e[i] = e[j] = 1;
            candidates.push_back(e);
        }
    std::mt19937_64 rng(0x5eed);
    for (int t = 0; t < 32 && s > 1; ++t) {
        Row e(s);
        for (std::size_t j = 0; j < s; ++j) e[j] = static_cast<long long>(rng() % intmath::ipow(r->ell(), m.exps[j]));
        candidates.push_back(e);
    }

    std::vector<Row> chosen;
    mpz_class have = 1;
    while (have != target) {
        mpz_class best = have;
        std::size_t bi = candidates.size();
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            auto trial = chosen;
            trial.push_back(candidates[c]);
            const mpz_class z = size_of(span_of(trial));
            if (z > best) {
                best = z;
                bi = c;
            }
        }
        if (bi == candidates.size()) throw ConsistencyError("present: candidates do not generate the module");
        chosen.push_back(candidates[bi]);
        have = best;
    }

    // relations: kernel of R^g -> M, (i, h) -> h * m_i
    const int gens = static_cast<int>(chosen.size());
    Matrix img;
    for (int i = 0; i < gens; ++i)
        for (int h = 0; h < g.order(); ++h) img.push_back(m.embed(m.act(h, chosen[i])));
    const Matrix ker = zmod::left_kernel(img, n, s);
    const std::size_t dim = static_cast<std::size_t>(gens) * g.order();

    // prune to an R-generating set, greedily by span size
    const Matrix full = zmod::howell_form(all_translates(ker, g), n, dim);
    Matrix kept;
    Matrix kept_span;
    while (kept_span != full) {
        std::size_t bi = ker.size();
        std::size_t best = kept_span.size();
        mpz_class best_size = size_of(kept_span);
        for (std::size_t c = 0; c < ker.size(); ++c) {
            if (zmod::in_span(kept_span, ker[c], n)) continue;
            auto trial = kept;
            trial.push_back(ker[c]);
            const auto hw = zmod::howell_form(all_translates(trial, g), n, dim);
            const mpz_class z = size_of(hw);
            if (bi == ker.size() || z > best_size) {
                bi = c;
                best_size = z;
                best = hw.size();
            }
        }
        (void)best;
        if (bi == ker.size()) throw ConsistencyError("present: relation pruning stalled");
        kept.push_back(ker[bi]);
        kept_span = zmod::howell_form(all_translates(kept, g), n, dim);
    }
    ElemMatrix rel;
    for (const auto& row : kept) rel.push_back(unflatten(*r, row));
    return PresentedModule(r, gens, std::move(rel));
}

PresentedModule dual_vee(const PresentedModule& m) { return present(dual(decompose(m), true)); }
PresentedModule dual_wedge(const PresentedModule& m) { return present(dual(decompose(m), false)); }

// ---- integral helpers ------------------------------------------------------------

bool is_non_zero_divisor(const grpring::IntElem& x) {
    for (const auto& chi : grpring::characters(x.group()))
        if (chi(x).is_zero()) return false;
    return true;
}

grpring::IntElem determinant(const std::vector<std::vector<grpring::IntElem>>& a) {
    if (a.empty()) throw PreconditionError("determinant of an empty matrix");
    const auto& grp = a[0][0].group();
    std::vector<int> rows(a.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (a[i].size() != a.size()) throw PreconditionError("determinant of a non-square matrix");
        rows[i] = static_cast<int>(i);
    }
    return minor_det(a, rows, grpring::IntElem(grp), grpring::IntElem::one(grp));
}

int faithful_level(const GroupPtr& g, int ell, const std::vector<std::vector<grpring::IntElem>>& rel, int k_min,
                   int k_max) {
    const int gens = rel.empty() ? 0 : static_cast<int>(rel[0].size());
    for (int k = std::max(k_min, 1); k <= k_max; ++k) {
        if (intmath::ipow(ell, k + 1) > (1LL << 40)) break;
        auto r = make_ring(g, ell, k + 1);
        ElemMatrix rows;
        for (const auto& row : rel) {
            ElemRow x;
            for (const auto& e : row) x.push_back(r->from_integral(e));
            rows.push_back(std::move(x));
        }
        if (PresentedModule(r, gens, std::move(rows)).killed_by(intmath::ipow(ell, k))) return k;
    }
    throw CapExceeded("faithful_level: module exponent exceeds the supported range");
}

// ---- four-term lemma ------------------------------------------------------------------

FourTermResult four_term_check(const PresentedModule& b, const PresentedModule& c, const ElemMatrix& phi) {
    if (!(*b.ring() == *c.ring())) throw PreconditionError("four_term_check: ring mismatch");
    const auto& r = b.ring();
    const auto& g = *r->group();
    const auto n = r->modulus();
    if (static_cast<int>(phi.size()) != b.gens()) throw PreconditionError("phi has the wrong number of rows");
    for (const auto& row : phi)
        if (static_cast<int>(row.size()) != c.gens()) throw PreconditionError("phi has the wrong number of columns");

    const std::size_t db = static_cast<std::size_t>(b.gens()) * g.order();
    const std::size_t dc = static_cast<std::size_t>(c.gens()) * g.order();
    // matrix of phi over Z/N: row (i, h) is h * phi_i
    Matrix big;
    for (const auto& row : phi) {
        const Row flat = flatten(row);
        for (int h = 0; h < g.order(); ++h) big.push_back(translate_row(flat, h, g));
    }
    auto apply = [&](const Row& x) {
        Row y(dc, 0);
        for (std::size_t i = 0; i < db; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dc; ++j) y[j] = mod(y[j] + mulmod(x[i], big[i][j], n), n);
        }
        return y;
    };
    for (const auto& rho : b.relation_span())
        if (!zmod::in_span(c.relation_span(), apply(rho), n))
            throw PreconditionError("four_term_check: phi does not respect the relations of B");

    Matrix stacked = big;
    for (const auto& rho : c.relation_span()) stacked.push_back(rho);
    Matrix u;
    for (const auto& row : zmod::left_kernel(stacked, n, dc)) u.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(db));
    const AbelianModule a = subquotient(r, b.gens(), u, b.relation_span());

    ElemMatrix drel = c.relations();
    for (const auto& row : phi) drel.push_back(row);
    const PresentedModule d(r, c.gens(), std::move(drel));

    FourTermResult res{fit(present(dual(a, false))), fit(b), fit(c), fit(d),
                       IdealFG::zero(r), IdealFG::zero(r), a.order(), d.order(), false};
    res.lhs = ideal_mul(res.fit_a_wedge, res.fit_c);
    res.rhs = ideal_mul(res.fit_b, res.fit_d);
    res.pass = res.lhs == res.rhs;
    return res;
}

}  // namespace equitheta::fitting
