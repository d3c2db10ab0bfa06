#include "equitheta/ffq.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "equitheta/errors.hpp"
#include "equitheta/intmath.hpp"

namespace equitheta::ffq {

namespace {

// Conway polynomials over F_p, low to high, for the supported extension degrees.
const std::map<std::pair<int, int>, std::vector<int>>& modulus_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    return table;
}

std::vector<int> digits(int x, int p, int e) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
}

}  // namespace

PrimePower PrimePower::of(int q, int max_q) {
    if (q < 2) throw PreconditionError("q must be a prime power >= 2, got " + std::to_string(q));
    if (q > max_q)
        throw PreconditionError("q = " + std::to_string(q) + " exceeds the supported cap " +
                                std::to_string(max_q));
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    int r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw PreconditionError("q = " + std::to_string(q) + " is not a prime power");
    return {p, e, q};
}

Field::Field(int q) : pp_(PrimePower::of(q)) {
    const int p = pp_.p, e = pp_.e;
    if (e == 1) {
        modulus_ = {0, 1};
    } else {
        auto it = modulus_table().find({p, e});
        if (it == modulus_table().end())
            throw PreconditionError("no stored modulus for q = " + std::to_string(q));
        modulus_ = it->second;
    }
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p, e);
        std::vector<int> dn(e);
        for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = undigits(dn, p);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p, e);
            std::vector<int> ds(e);
            for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
            add_[a * q + b] = undigits(ds, p);
            // schoolbook product then reduction by the monic modulus
            std::vector<int> prod(2 * e - 1, 0);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (int k = 2 * e - 2; k >= e; --k) {
                int c = prod[k];
                if (c == 0) continue;
                for (int i = 0; i <= e; ++i)
                    prod[k - e + i] = ((prod[k - e + i] - c * modulus_[i]) % p + p) % p;
            }
            prod.resize(e);
            mul_[a * q + b] = undigits(prod, p);
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) inv_[a] = b;
    for (int a = 1; a < q; ++a)
        if (inv_[a] == 0)
            throw PreconditionError("stored modulus for q = " + std::to_string(q) +
                                    " is not irreducible");
}

int Field::inv(int a) const {
    if (a == 0) throw PreconditionError("inverse of zero in F_q");
    return inv_[a];
}

int Field::from_int(long long n) const {
    long long r = n % pp_.p;
    if (r < 0) r += pp_.p;
    return static_cast<int>(r);
}

FieldPtr field(int q) {
    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Field>(q);
    cache.emplace(q, f);
    return f;
}

FqPoly::FqPoly(std::vector<int> c) : coeffs(std::move(c)) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

FqPoly PolyRing::constant(int c) const { return FqPoly({c}); }

FqPoly PolyRing::add(const FqPoly& a, const FqPoly& b) const {
    std::vector<int> r(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = f_->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return FqPoly(std::move(r));
}

FqPoly PolyRing::sub(const FqPoly& a, const FqPoly& b) const {
    std::vector<int> r(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = f_->sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return FqPoly(std::move(r));
}

FqPoly PolyRing::mul(const FqPoly& a, const FqPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<int> r(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r[i + j] = f_->add(r[i + j], f_->mul(a.coeffs[i], b.coeffs[j]));
    }
    return FqPoly(std::move(r));
}

FqPoly PolyRing::scale(const FqPoly& a, int c) const {
    std::vector<int> r(a.coeffs.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(a.coeffs[i], c);
    return FqPoly(std::move(r));
}

std::pair<FqPoly, FqPoly> PolyRing::divmod(const FqPoly& a, const FqPoly& b) const {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {FqPoly{}, a};
    std::vector<int> rem = a.coeffs;
    const int db = b.degree();
    const int lead_inv = f_->inv(b.coeffs.back());
    std::vector<int> quot(a.degree() - db + 1, 0);
    for (int k = a.degree(); k >= db; --k) {
        int c = f_->mul(rem[k], lead_inv);
        quot[k - db] = c;
        if (c == 0) continue;
        for (int i = 0; i <= db; ++i)
            rem[k - db + i] = f_->sub(rem[k - db + i], f_->mul(c, b.coeffs[i]));
    }
    rem.resize(db);
    return {FqPoly(std::move(quot)), FqPoly(std::move(rem))};
}

FqPoly PolyRing::gcd(const FqPoly& a, const FqPoly& b) const {
    FqPoly x = a, y = b;
    while (!y.is_zero()) {
        FqPoly r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : make_monic(x);
}

FqPoly PolyRing::make_monic(const FqPoly& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_->inv(a.coeffs.back()));
}

FqPoly PolyRing::powmod(FqPoly base, std::uint64_t e, const FqPoly& m) const {
    FqPoly result = mod(constant(1), m);
    base = mod(base, m);
    while (e > 0) {
        if (e & 1U) result = mod(mul(result, base), m);
        base = mod(mul(base, base), m);
        e >>= 1U;
    }
    return result;
}

bool PolyRing::is_irreducible(const FqPoly& f) const {
    if (f.degree() < 1) throw PreconditionError("is_irreducible: constant polynomial");
    if (!f.is_monic()) throw PreconditionError("is_irreducible: polynomial is not monic");
    const int n = f.degree();
    if (n == 1) return true;
    const auto q = static_cast<std::uint64_t>(this->q());
    // Rabin: f | t^{q^n} - t, and gcd(f, t^{q^{n/r}} - t) = 1 for primes r | n.
    auto frob_power = [&](int k) {
        FqPoly x = t();
        for (int i = 0; i < k; ++i) x = powmod(x, q, f);
        return x;
    };
    if (!sub(frob_power(n), mod(t(), f)).is_zero()) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0 || !intmath::is_prime(r)) continue;
        FqPoly g = gcd(f, sub(frob_power(n / r), t()));
        if (g.degree() != 0) return false;
    }
    return true;
}

std::uint64_t PolyRing::encode_residue(const FqPoly& r, int deg_m) const {
    std::uint64_t key = 0;
    for (int i = deg_m - 1; i >= 0; --i) key = key * static_cast<std::uint64_t>(q()) + r.coeff(i);
    return key;
}

FqPoly PolyRing::decode_residue(std::uint64_t key, int deg_m) const {
    std::vector<int> c(deg_m);
    for (int i = 0; i < deg_m; ++i) {
        c[i] = static_cast<int>(key % static_cast<std::uint64_t>(q()));
        key /= static_cast<std::uint64_t>(q());
    }
    return FqPoly(std::move(c));
}

std::string PolyRing::to_string(const FqPoly& f, const std::string& var) const {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        int c = f.coeffs[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c;
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

FqPoly PolyRing::parse(const std::string& text) const {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw PreconditionError("empty polynomial string");
    if (s.front() == '[') {
        if (s.back() != ']') throw PreconditionError("bad coefficient list: " + text);
        std::vector<int> c;
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            int v = std::stoi(item);
            if (v < 0 || v >= q()) throw PreconditionError("coefficient out of range in " + text);
            c.push_back(v);
        }
        return FqPoly(std::move(c));
    }
    std::vector<int> c;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) throw PreconditionError("malformed polynomial: " + text);
        int coef = 1;
        int exp = 0;
        std::size_t tpos = term.find('t');
        std::string coef_part = tpos == std::string::npos ? term : term.substr(0, tpos);
        if (!coef_part.empty() && coef_part.back() == '*') coef_part.pop_back();
        if (!coef_part.empty()) {
            if (!std::all_of(coef_part.begin(), coef_part.end(),
                             [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                throw PreconditionError("malformed coefficient in: " + text);
            coef = std::stoi(coef_part);
            if (coef >= q()) throw PreconditionError("coefficient out of range in " + text);
        }
        if (tpos != std::string::npos) {
            exp = 1;
            std::string rest = term.substr(tpos + 1);
            if (!rest.empty()) {
                if (rest[0] != '^' || rest.size() < 2)
                    throw PreconditionError("malformed exponent in: " + text);
                exp = std::stoi(rest.substr(1));
            }
        }
        if (static_cast<int>(c.size()) <= exp) c.resize(exp + 1, 0);
        c[exp] = f_->add(c[exp], coef);
    }
    return FqPoly(std::move(c));
}

std::uint64_t checked_power(int q, int d) {
    if (d < 0) throw PreconditionError("degree must be non-negative");
    std::uint64_t r = 1;
    const std::uint64_t cap = enumeration_cap();
    for (int i = 0; i < d; ++i) {
        r *= static_cast<std::uint64_t>(q);
        if (r > cap)
            throw CapExceeded("enumeration of q^d = " + std::to_string(q) + "^" + std::to_string(d) +
                              " items exceeds the cap " + std::to_string(cap));
    }
    return r;
}

void for_each_monic(int q, int d, const std::function<void(const FqPoly&)>& fn) {
    const std::uint64_t count = checked_power(q, d);
    FqPoly a;
    a.coeffs.assign(d + 1, 0);
    a.coeffs[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        fn(a);
        for (int i = 0; i < d; ++i) {  // odometer increment
            if (++a.coeffs[i] < q) break;
            a.coeffs[i] = 0;
        }
    }
}

std::vector<FqPoly> monic_polys(int q, int d) {
    std::vector<FqPoly> out;
    out.reserve(checked_power(q, d));
    for_each_monic(q, d, [&](const FqPoly& a) { out.push_back(a); });
    return out;
}

Place Place::finite(const PolyRing& ring, FqPoly f) {
    if (!f.is_monic() || f.degree() < 1)
        throw PreconditionError("place polynomial must be monic of degree >= 1: " + ring.to_string(f));
    if (!ring.is_irreducible(f))
        throw PreconditionError("place polynomial is not irreducible: " + ring.to_string(f));
    return Place(std::move(f));
}

const FqPoly& Place::poly() const {
    if (is_infinite()) throw PreconditionError("the infinite place has no polynomial");
    return std::get<FqPoly>(v_);
}

int Place::degree() const noexcept {
    return is_infinite() ? 1 : std::get<FqPoly>(v_).degree();
}

bool operator<(const Place& a, const Place& b) {
    if (a.is_infinite() != b.is_infinite()) return a.is_infinite();
    if (a.is_infinite()) return false;
    return a.poly() < b.poly();
}

std::string to_string(const PolyRing& ring, const Place& v) {
    return v.is_infinite() ? std::string("inf") : ring.to_string(v.poly());
}

Place parse_place(const PolyRing& ring, const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "inf" || t == "infinity" || t == "oo") return Place::infinity();
    return Place::finite(ring, ring.parse(t));
}

std::vector<Place> places_of_degree(int q, int d) {
    PolyRing ring(q);
    std::vector<Place> out;
    for_each_monic(q, d, [&](const FqPoly& a) {
        if (ring.is_irreducible(a)) out.push_back(Place::finite(ring, a));
    });
    return out;
}

std::vector<Place> places_up_to(int q, int max_degree) {
    if (max_degree < 1) throw PreconditionError("places_up_to: degree bound must be >= 1");
    std::vector<Place> out{Place::infinity()};
    for (int d = 1; d <= max_degree; ++d) {
        auto deg_d = places_of_degree(q, d);
        out.insert(out.end(), deg_d.begin(), deg_d.end());
    }
    return out;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::uint64_t necklace_count(int q, int d) {
    long long total = 0;
    for (int k = 1; k <= d; ++k) {
        if (d % k != 0) continue;
        long long pw = 1;
        for (int i = 0; i < d / k; ++i) pw *= q;
        total += mobius(k) * pw;
    }
    return static_cast<std::uint64_t>(total / d);
}

std::optional<std::vector<int>> ResidueUnitGroup::exponents_of(const PolyRing& ring,
                                                               const FqPoly& a) const {
    const int idx = index_of_key[ring.encode_residue(ring.mod(a, modulus), modulus.degree())];
    if (idx < 0) return std::nullopt;
    return exponents[idx];
}

ResidueUnitGroup unit_group(int q, const FqPoly& m) {
    PolyRing ring(q);
    if (!m.is_monic() || m.degree() < 1)
        throw PreconditionError("unit_group: modulus must be monic of degree >= 1");
    const int dm = m.degree();
    const std::uint64_t size = checked_power(q, dm);

    std::vector<std::uint64_t> units;
    for (std::uint64_t key = 0; key < size; ++key) {
        FqPoly r = ring.decode_residue(key, dm);
        if (!r.is_zero() && ring.gcd(r, m).degree() == 0) units.push_back(key);
    }
    auto mulkey = [&](std::uint64_t a, std::uint64_t b) {
        return ring.encode_residue(
            ring.mod(ring.mul(ring.decode_residue(a, dm), ring.decode_residue(b, dm)), m), dm);
    };
    const std::uint64_t one = ring.encode_residue(ring.mod(ring.constant(1), m), dm);

    // Greedy generating set; subgroup elements carry their exponent vectors.
    std::vector<std::uint64_t> gens;
    std::map<std::uint64_t, std::vector<long long>> sub{{one, {}}};
    std::vector<std::vector<long long>> relations;
    for (std::uint64_t x : units) {
        if (sub.count(x)) continue;
        const std::size_t j = gens.size();
        gens.push_back(x);
        for (auto& [k, v] : sub) v.resize(j + 1, 0);
        // smallest c > 0 with x^c in the current subgroup
        std::uint64_t pw = x;
        long long c = 1;
        while (!sub.count(pw)) {
            pw = mulkey(pw, x);
            ++c;
        }
        std::vector<long long> rel(j + 1, 0);
        for (std::size_t i = 0; i < j; ++i) rel[i] = -sub[pw][i];
        rel[j] = c;
        relations.push_back(rel);
        std::map<std::uint64_t, std::vector<long long>> grown;
        for (const auto& [k, v] : sub) {
            std::uint64_t y = k;
            for (long long e = 0; e < c; ++e) {
                auto w = v;
                w[j] = e;
                grown.emplace(y, std::move(w));
                y = mulkey(y, x);
            }
        }
        sub = std::move(grown);
    }
    const std::size_t k = gens.size();
    for (auto& r : relations) r.resize(k, 0);

    // Column operations of a Smith reduction give the new generators.
    auto snf = intmath::smith_columns(relations, k);
    ResidueUnitGroup out;
    out.modulus = m;
    for (std::uint64_t key : units) out.elements.push_back(ring.decode_residue(key, dm));
    std::vector<std::uint64_t> new_gens;
    std::vector<int> orders;
    for (std::size_t i = 0; i < k; ++i) {
        if (snf.diagonal[i] == 1) continue;
        std::uint64_t h = one;
        for (std::size_t jj = 0; jj < k; ++jj) {
            const long long e =
                intmath::mod(snf.col_inverse[i][jj], static_cast<long long>(units.size()));
            for (long long t = 0; t < e; ++t) h = mulkey(h, gens[jj]);
        }
        new_gens.push_back(h);
        orders.push_back(static_cast<int>(snf.diagonal[i]));
    }
    for (std::size_t i = 0; i < new_gens.size(); ++i)
        out.structure.emplace_back(ring.decode_residue(new_gens[i], dm), orders[i]);

    // Exhaustive closure: every exponent tuple maps to a distinct unit.
    out.index_of_key.assign(size, -1);
    for (std::size_t i = 0; i < units.size(); ++i) out.index_of_key[units[i]] = static_cast<int>(i);
    out.exponents.assign(units.size(), {});
    std::vector<bool> hit(units.size(), false);
    std::vector<int> exps(new_gens.size(), 0);
    std::size_t seen = 0;
    while (true) {
        std::uint64_t y = one;
        for (std::size_t i = 0; i < new_gens.size(); ++i)
            for (int t = 0; t < exps[i]; ++t) y = mulkey(y, new_gens[i]);
        const int idx = out.index_of_key[y];
        if (idx < 0 || hit[idx])
            throw ConsistencyError("unit_group: generators do not give a direct decomposition");
        hit[idx] = true;
        out.exponents[idx] = exps;
        ++seen;
        std::size_t i = 0;
        for (; i < exps.size(); ++i) {
            if (++exps[i] < orders[i]) break;
            exps[i] = 0;
        }
        if (i == exps.size()) break;
    }
    if (seen != units.size())
        throw ConsistencyError("unit_group: generators do not generate the unit group");
    return out;
}

}  // namespace equitheta::ffq
