#pragma once

// Finite abelian groups, their group rings R[G] for R in {Z, Q, Z/N},
// polynomials over R[G], and characters with exact values in Z[x]/Phi_N.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "equitheta/cyclotomic.hpp"
#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::grpring {

/// G = Z/n_1 x ... x Z/n_k. Elements are indexed densely in mixed radix
/// with the first factor varying fastest; index 0 is the identity.
class FinAbGroup {
public:
    explicit FinAbGroup(std::vector<int> orders);

    int order() const noexcept { return order_; }
    int rank() const noexcept { return static_cast<int>(orders_.size()); }
    const std::vector<int>& orders() const noexcept { return orders_; }
    /// lcm of the cyclic orders.
    int exponent() const noexcept { return exponent_; }

    int identity() const noexcept { return 0; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, long long e) const;
    /// Index of the i-th cyclic generator.
    int generator(int i) const;
    int element_order(int a) const;

    std::vector<int> exponents(int index) const;
    int index(std::span<const int> exps) const;

    /// "1", "g", "g^2" for cyclic groups; "g0^a*g1^b" otherwise.
    std::string label(int index) const;
    int parse_label(const std::string& label) const;

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

private:
    std::vector<int> orders_;
    int order_ = 1;
    int exponent_ = 1;
    std::vector<int> mul_, inv_;
};

using GroupPtr = std::shared_ptr<const FinAbGroup>;

inline GroupPtr make_group(std::vector<int> orders) {
    return std::make_shared<const FinAbGroup>(std::move(orders));
}

// ---- coefficient rings -------------------------------------------------

struct IntegerRing {
    using value_type = mpz_class;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(const mpz_class& n) const { return n; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a == 0; }
    friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

struct RationalField {
    using value_type = mpq_class;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(const mpz_class& n) const { return mpq_class(n); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a == 0; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class ModularRing {
public:
    using value_type = std::int64_t;
    explicit ModularRing(std::int64_t modulus = 1);
    std::int64_t modulus() const noexcept { return n_; }
    value_type zero() const { return 0; }
    value_type one() const { return 1 % n_; }
    value_type from_int(const mpz_class& n) const;
    value_type from_int(long long n) const { return intmath::mod(n, n_); }
    value_type add(value_type a, value_type b) const {
        value_type r = a + b;
        return r >= n_ ? r - n_ : r;
    }
    value_type sub(value_type a, value_type b) const {
        value_type r = a - b;
        return r < 0 ? r + n_ : r;
    }
    value_type mul(value_type a, value_type b) const { return intmath::mulmod(a, b, n_); }
    value_type neg(value_type a) const { return a == 0 ? 0 : n_ - a; }
    bool is_zero(value_type a) const { return a == 0; }
    friend bool operator==(const ModularRing& a, const ModularRing& b) { return a.n_ == b.n_; }

private:
    std::int64_t n_;
};

// ---- group ring elements -----------------------------------------------

template <class Ring>
class GroupRingElem {
public:
    using value_type = typename Ring::value_type;

    GroupRingElem(GroupPtr g, Ring r = Ring{})
        : g_(std::move(g)), r_(std::move(r)), c_(static_cast<std::size_t>(g_->order()), r_.zero()) {}
    GroupRingElem(GroupPtr g, Ring r, std::vector<value_type> coeffs)
        : g_(std::move(g)), r_(std::move(r)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != g_->order())
            throw PreconditionError("group ring element has the wrong number of coefficients");
    }

    static GroupRingElem one(GroupPtr g, Ring r = Ring{}) { return basis(std::move(g), 0, std::move(r)); }
    static GroupRingElem basis(GroupPtr g, int index, Ring r = Ring{}) {
        GroupRingElem x(std::move(g), std::move(r));
        x.c_[index] = x.r_.one();
        return x;
    }
    static GroupRingElem scalar(GroupPtr g, const value_type& s, Ring r = Ring{}) {
        GroupRingElem x(std::move(g), std::move(r));
        x.c_[0] = s;
        return x;
    }

    const GroupPtr& group() const noexcept { return g_; }
    const FinAbGroup& group_ref() const noexcept { return *g_; }
    const Ring& ring() const noexcept { return r_; }
    const std::vector<value_type>& coeffs() const noexcept { return c_; }
    const value_type& operator[](int i) const { return c_[i]; }
    void set(int i, value_type v) { c_[i] = std::move(v); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!r_.is_zero(x)) return false;
        return true;
    }

    value_type augmentation() const {
        value_type s = r_.zero();
        for (const auto& x : c_) s = r_.add(s, x);
        return s;
    }

    GroupRingElem& operator+=(const GroupRingElem& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = r_.add(c_[i], o.c_[i]);
        return *this;
    }
    GroupRingElem& operator-=(const GroupRingElem& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = r_.sub(c_[i], o.c_[i]);
        return *this;
    }
    GroupRingElem operator-() const {
        GroupRingElem r = *this;
        for (auto& x : r.c_) x = r_.neg(x);
        return r;
    }
    GroupRingElem scaled(const value_type& s) const {
        GroupRingElem r = *this;
        for (auto& x : r.c_) x = r_.mul(x, s);
        return r;
    }
    /// Convolution over the group law.
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
        a.check(b);
        GroupRingElem r(a.g_, a.r_);
        const int n = a.g_->order();
        for (int i = 0; i < n; ++i) {
            if (a.r_.is_zero(a.c_[i])) continue;
            for (int j = 0; j < n; ++j) {
                if (a.r_.is_zero(b.c_[j])) continue;
                const int k = a.g_->mul(i, j);
                r.c_[k] = a.r_.add(r.c_[k], a.r_.mul(a.c_[i], b.c_[j]));
            }
        }
        return r;
    }
    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
    GroupRingElem& operator*=(const GroupRingElem& o) { return *this = *this * o; }

    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
        return *a.g_ == *b.g_ && a.r_ == b.r_ && a.c_ == b.c_;
    }

private:
    void check(const GroupRingElem& o) const {
        if (!(*g_ == *o.g_)) throw PreconditionError("group ring elements over different groups");
        if (!(r_ == o.r_)) throw PreconditionError("group ring elements over different coefficient rings");
    }

    GroupPtr g_;
    Ring r_;
    std::vector<value_type> c_;
};

using IntElem = GroupRingElem<IntegerRing>;
using RatElem = GroupRingElem<RationalField>;
using ModElem = GroupRingElem<ModularRing>;

/// iota(sum a_g g) = sum a_g g^{-1}.
template <class Ring>
GroupRingElem<Ring> iota(const GroupRingElem<Ring>& x) {
    GroupRingElem<Ring> r(x.group(), x.ring());
    for (int i = 0; i < x.group_ref().order(); ++i) r.set(x.group_ref().inv(i), x[i]);
    return r;
}

/// Translate by a group element: h * x.
template <class Ring>
GroupRingElem<Ring> translate(const GroupRingElem<Ring>& x, int h) {
    GroupRingElem<Ring> r(x.group(), x.ring());
    for (int i = 0; i < x.group_ref().order(); ++i) r.set(x.group_ref().mul(h, i), x[i]);
    return r;
}

RatElem to_rational(const IntElem& x);
ModElem reduce(const IntElem& x, std::int64_t modulus);
/// Coefficientwise x -> x mod N for rational elements with N-invertible denominators.
ModElem reduce(const RatElem& x, std::int64_t modulus);
/// Integer lift of a rational element whose coefficients are integers; throws otherwise.
IntElem to_integer(const RatElem& x);

/// Determinant of multiplication by x on Q[G] (= product of all character values).
mpz_class norm(const IntElem& x);
/// x^{-1} in Q[G]; throws PreconditionError if x is a zero-divisor.
RatElem inverse(const RatElem& x);

// ---- polynomials over R[G] ----------------------------------------------

/// Polynomial in u with R[G] coefficients, low to high, no trailing zeros.
template <class Ring>
class EquivPoly {
public:
    using Elem = GroupRingElem<Ring>;

    EquivPoly(GroupPtr g, Ring r = Ring{}) : g_(std::move(g)), r_(std::move(r)) {}
    EquivPoly(GroupPtr g, Ring r, std::vector<Elem> c) : g_(std::move(g)), r_(std::move(r)), c_(std::move(c)) {
        trim();
    }

    const GroupPtr& group() const noexcept { return g_; }
    const Ring& ring() const noexcept { return r_; }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }

    Elem coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Elem(g_, r_); }

    friend EquivPoly operator+(const EquivPoly& a, const EquivPoly& b) {
        std::vector<Elem> c;
        const int n = std::max(a.degree(), b.degree()) + 1;
        for (int i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
        return EquivPoly(a.g_, a.r_, std::move(c));
    }
    friend EquivPoly operator-(const EquivPoly& a, const EquivPoly& b) {
        std::vector<Elem> c;
        const int n = std::max(a.degree(), b.degree()) + 1;
        for (int i = 0; i < n; ++i) c.push_back(a.coeff(i) - b.coeff(i));
        return EquivPoly(a.g_, a.r_, std::move(c));
    }
    friend EquivPoly operator*(const EquivPoly& a, const EquivPoly& b) {
        if (a.is_zero() || b.is_zero()) return EquivPoly(a.g_, a.r_);
        std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, Elem(a.g_, a.r_));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return EquivPoly(a.g_, a.r_, std::move(c));
    }
    /// Product truncated to degree <= max_degree.
    EquivPoly mul_truncated(const EquivPoly& b, int max_degree) const {
        std::vector<Elem> c(static_cast<std::size_t>(max_degree) + 1, Elem(g_, r_));
        for (std::size_t i = 0; i < c_.size() && static_cast<int>(i) <= max_degree; ++i)
            for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) <= max_degree; ++j)
                c[i + j] += c_[i] * b.c_[j];
        return EquivPoly(g_, r_, std::move(c));
    }
    friend bool operator==(const EquivPoly& a, const EquivPoly& b) {
        return *a.g_ == *b.g_ && a.c_ == b.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    GroupPtr g_;
    Ring r_;
    std::vector<Elem> c_;
};

using IntPoly = EquivPoly<IntegerRing>;

/// sum_i coeff_i * u0^i, exactly in Q[G].
RatElem eval_poly(const IntPoly& f, const mpq_class& u0);
RatElem eval_poly(const EquivPoly<RationalField>& f, const mpq_class& u0);

// ---- characters ----------------------------------------------------------

/// Homomorphism G -> mu_N with N = exponent(G); chi(e_i) = zeta_{n_i}^{a_i}.
class Character {
public:
    Character(GroupPtr g, std::vector<int> exps);

    const GroupPtr& group() const noexcept { return g_; }
    const std::vector<int>& exponents() const noexcept { return a_; }
    /// Root-of-unity order used for exact values (the group exponent).
    int value_order() const noexcept { return g_->exponent(); }
    bool is_trivial() const;

    /// k such that chi(g) = zeta_N^k.
    int power(int g) const;
    CyclotomicInt value(int g) const;
    std::complex<double> value_complex(int g) const;
    /// chi applied to a group ring element.
    CyclotomicInt operator()(const IntElem& x) const;

    Character inverse() const;
    Character operator*(const Character& o) const;
    friend bool operator==(const Character& a, const Character& b) {
        return *a.g_ == *b.g_ && a.a_ == b.a_;
    }
    std::string label() const;

private:
    GroupPtr g_;
    std::vector<int> a_;
};

/// All |G| characters, trivial character first.
std::vector<Character> characters(const GroupPtr& g);

using CyclotomicPoly = std::vector<CyclotomicInt>;  // low to high in u

/// chi applied coefficientwise.
CyclotomicPoly char_eval(const IntPoly& f, const Character& chi);
CyclotomicPoly poly_mul(const CyclotomicPoly& a, const CyclotomicPoly& b);
void trim(CyclotomicPoly& p);

/// Census of the decomposition Z_l[G] = (+)_chi Z_l[chi][G'] over
/// Q_l-conjugacy classes of characters of the l'-part Delta.
struct DecompositionCensus {
    int ell = 0;
    int delta_order = 1;   // |Delta|
    int sylow_order = 1;   // |G'|
    /// Each class: the exponent vectors (w.r.t. Delta's cyclic factors) of its characters.
    std::vector<std::vector<std::vector<int>>> classes;
    std::vector<int> degrees;  // [Z_l[chi] : Z_l] = class size
    int rank_sum = 0;          // sum degrees * |G'|
    bool consistent() const noexcept { return rank_sum == delta_order * sylow_order; }
};

DecompositionCensus decomposition_census(const FinAbGroup& g, int ell);

}  // namespace equitheta::grpring
