#include "equitheta/grpring.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace equitheta::grpring {

FinAbGroup::FinAbGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    for (int n : orders_) {
        if (n < 1) throw PreconditionError("cyclic factor orders must be positive");
        order_ *= n;
        exponent_ = std::lcm(exponent_, n);
    }
    if (order_ > 4096) throw CapExceeded("group order " + std::to_string(order_) + " exceeds 4096");
    mul_.resize(static_cast<std::size_t>(order_) * order_);
    inv_.resize(order_);
    std::vector<std::vector<int>> ex(order_);
    for (int i = 0; i < order_; ++i) ex[i] = exponents(i);
    std::vector<int> tmp(orders_.size());
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b) {
            for (std::size_t k = 0; k < orders_.size(); ++k) tmp[k] = (ex[a][k] + ex[b][k]) % orders_[k];
            mul_[static_cast<std::size_t>(a) * order_ + b] = index(tmp);
        }
        for (std::size_t k = 0; k < orders_.size(); ++k) tmp[k] = (orders_[k] - ex[a][k]) % orders_[k];
        inv_[a] = index(tmp);
    }
}

int FinAbGroup::pow(int a, long long e) const {
    auto ex = exponents(a);
    for (std::size_t k = 0; k < orders_.size(); ++k)
        ex[k] = static_cast<int>(intmath::mod(static_cast<long long>(ex[k]) * e, orders_[k]));
    return index(ex);
}

int FinAbGroup::generator(int i) const {
    std::vector<int> ex(orders_.size(), 0);
    ex.at(i) = 1 % orders_[i];
    return index(ex);
}

int FinAbGroup::element_order(int a) const {
    int o = 1;
    auto ex = exponents(a);
    for (std::size_t k = 0; k < orders_.size(); ++k)
        o = std::lcm(o, orders_[k] / std::gcd(orders_[k], ex[k]));
    return o;
}

std::vector<int> FinAbGroup::exponents(int index) const {
    std::vector<int> ex(orders_.size());
    for (std::size_t k = 0; k < orders_.size(); ++k) {
        ex[k] = index % orders_[k];
        index /= orders_[k];
    }
    return ex;
}

int FinAbGroup::index(std::span<const int> exps) const {
    int idx = 0;
    for (std::size_t k = orders_.size(); k-- > 0;)
        idx = idx * orders_[k] + static_cast<int>(intmath::mod(exps[k], orders_[k]));
    return idx;
}

std::string FinAbGroup::label(int index) const {
    if (index == 0) return "1";
    auto ex = exponents(index);
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < ex.size(); ++k) {
        if (ex[k] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "g";
        if (orders_.size() > 1) os << k;
        if (ex[k] > 1) os << "^" << ex[k];
    }
    return os.str();
}

int FinAbGroup::parse_label(const std::string& label) const {
    if (label == "1") return 0;
    std::vector<int> ex(orders_.size(), 0);
    std::stringstream ss(label);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        if (factor.empty() || factor[0] != 'g') throw PreconditionError("bad group element label: " + label);
        std::size_t pos = 1;
        int k = 0;
        if (orders_.size() > 1) {
            std::size_t end = pos;
            while (end < factor.size() && std::isdigit(static_cast<unsigned char>(factor[end]))) ++end;
            if (end == pos) throw PreconditionError("bad group element label: " + label);
            k = std::stoi(factor.substr(pos, end - pos));
            pos = end;
        }
        int e = 1;
        if (pos < factor.size()) {
            if (factor[pos] != '^') throw PreconditionError("bad group element label: " + label);
            e = std::stoi(factor.substr(pos + 1));
        }
        if (k < 0 || k >= rank()) throw PreconditionError("bad group element label: " + label);
        ex[k] += e;
    }
    return index(ex);
}

ModularRing::ModularRing(std::int64_t modulus) : n_(modulus) {
    if (modulus < 1 || modulus > (1LL << 62)) throw PreconditionError("modulus out of range");
}

ModularRing::value_type ModularRing::from_int(const mpz_class& n) const {
    mpz_class r = n % mpz_class(static_cast<long>(n_));
    if (r < 0) r += static_cast<long>(n_);
    return r.get_si();
}

RatElem to_rational(const IntElem& x) {
    std::vector<mpq_class> c;
    c.reserve(x.coeffs().size());
    for (const auto& v : x.coeffs()) c.emplace_back(v);
    return RatElem(x.group(), {}, std::move(c));
}

ModElem reduce(const IntElem& x, std::int64_t modulus) {
    ModularRing r(modulus);
    std::vector<std::int64_t> c;
    c.reserve(x.coeffs().size());
    for (const auto& v : x.coeffs()) c.push_back(r.from_int(v));
    return ModElem(x.group(), r, std::move(c));
}

ModElem reduce(const RatElem& x, std::int64_t modulus) {
    ModularRing r(modulus);
    std::vector<std::int64_t> c;
    for (const auto& v : x.coeffs()) {
        const auto num = r.from_int(mpz_class(v.get_num()));
        const auto den = r.from_int(mpz_class(v.get_den()));
        c.push_back(r.mul(num, intmath::invmod(den, modulus)));
    }
    return ModElem(x.group(), r, std::move(c));
}

IntElem to_integer(const RatElem& x) {
    std::vector<mpz_class> c;
    for (const auto& v : x.coeffs()) {
        if (v.get_den() != 1) throw PreconditionError("group ring element has non-integral coefficients");
        c.emplace_back(v.get_num());
    }
    return IntElem(x.group(), {}, std::move(c));
}

namespace {

// Matrix of multiplication by x in the basis of group elements.
template <class T, class Elem>
std::vector<std::vector<T>> regular_matrix(const Elem& x) {
    const auto& g = x.group_ref();
    const int n = g.order();
    std::vector<std::vector<T>> m(n, std::vector<T>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m[g.mul(i, j)][j] = x[i];
    return m;
}

}  // namespace

mpz_class norm(const IntElem& x) {
    auto m = regular_matrix<mpz_class>(x);
    const int n = static_cast<int>(m.size());
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

RatElem inverse(const RatElem& x) {
    auto m = regular_matrix<mpq_class>(x);
    const int n = static_cast<int>(m.size());
    std::vector<mpq_class> rhs(n, 0);
    rhs[0] = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw PreconditionError("group ring element is a zero-divisor; no inverse in Q[G]");
        std::swap(m[k], m[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (int i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const mpq_class f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<mpq_class> c(n);
    for (int i = 0; i < n; ++i) c[i] = rhs[i] / m[i][i];
    return RatElem(x.group(), {}, std::move(c));
}

RatElem eval_poly(const IntPoly& f, const mpq_class& u0) {
    RatElem acc(f.group());
    for (int k = f.degree(); k >= 0; --k) acc = acc.scaled(u0) + to_rational(f.coeffs()[k]);
    return acc;
}

RatElem eval_poly(const EquivPoly<RationalField>& f, const mpq_class& u0) {
    RatElem acc(f.group());
    for (int k = f.degree(); k >= 0; --k) acc = acc.scaled(u0) + f.coeffs()[k];
    return acc;
}

Character::Character(GroupPtr g, std::vector<int> exps) : g_(std::move(g)), a_(std::move(exps)) {
    if (static_cast<int>(a_.size()) != g_->rank()) throw PreconditionError("character exponent vector has wrong length");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = static_cast<int>(intmath::mod(a_[i], g_->orders()[i]));
}

bool Character::is_trivial() const {
    for (int a : a_)
        if (a != 0) return false;
    return true;
}

int Character::power(int g) const {
    const int n = g_->exponent();
    const auto ex = g_->exponents(g);
    long long k = 0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        k += static_cast<long long>(ex[i]) * a_[i] * (n / g_->orders()[i]);
    return static_cast<int>(intmath::mod(k, n));
}

CyclotomicInt Character::value(int g) const { return CyclotomicInt::root_power(value_order(), power(g)); }

std::complex<double> Character::value_complex(int g) const {
    const double ang = 2.0 * 3.14159265358979323846 * power(g) / value_order();
    return {std::cos(ang), std::sin(ang)};
}

CyclotomicInt Character::operator()(const IntElem& x) const {
    if (!(*x.group() == *g_)) throw PreconditionError("character applied to an element of another group");
    const int n = value_order();
    // accumulate by power of zeta, then reduce once
    std::vector<mpz_class> by_power(n, 0);
    for (int i = 0; i < g_->order(); ++i)
        if (x[i] != 0) by_power[power(i)] += x[i];
    CyclotomicInt acc(n);
    for (int k = 0; k < n; ++k)
        if (by_power[k] != 0) acc += CyclotomicInt::root_power(n, k) * by_power[k];
    return acc;
}

Character Character::inverse() const {
    std::vector<int> b(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) b[i] = -a_[i];
    return Character(g_, b);
}

Character Character::operator*(const Character& o) const {
    std::vector<int> b(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) b[i] = a_[i] + o.a_[i];
    return Character(g_, b);
}

std::string Character::label() const {
    std::ostringstream os;
    os << "chi[";
    for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
    os << "]";
    return os.str();
}

std::vector<Character> characters(const GroupPtr& g) {
    std::vector<Character> out;
    out.reserve(g->order());
    for (int i = 0; i < g->order(); ++i) out.emplace_back(g, g->exponents(i));
    return out;
}

void trim(CyclotomicPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

CyclotomicPoly char_eval(const IntPoly& f, const Character& chi) {
    CyclotomicPoly out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(chi(c));
    trim(out);
    return out;
}

CyclotomicPoly poly_mul(const CyclotomicPoly& a, const CyclotomicPoly& b) {
    if (a.empty() || b.empty()) return {};
    const int n = a.front().order();
    CyclotomicPoly out(a.size() + b.size() - 1, CyclotomicInt(n));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

DecompositionCensus decomposition_census(const FinAbGroup& g, int ell) {
    if (!intmath::is_prime(ell)) throw PreconditionError("decomposition_census: ell must be prime");
    DecompositionCensus c;
    c.ell = ell;
    std::vector<int> delta_orders;
    for (int n : g.orders()) {
        int m = n;
        while (m % ell == 0) m /= ell;
        delta_orders.push_back(m);
        c.delta_order *= m;
        c.sylow_order *= n / m;
    }
    FinAbGroup delta(delta_orders);
    std::vector<bool> seen(delta.order(), false);
    for (int i = 0; i < delta.order(); ++i) {
        if (seen[i]) continue;
        std::vector<std::vector<int>> orbit;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            orbit.push_back(delta.exponents(j));
            j = delta.pow(j, ell);  // chi -> chi^ell on exponent vectors
        }
        c.degrees.push_back(static_cast<int>(orbit.size()));
        c.classes.push_back(std::move(orbit));
    }
    for (int d : c.degrees) c.rank_sum += d * c.sylow_order;
    return c;
}

}  // namespace equitheta::grpring
