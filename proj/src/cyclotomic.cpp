#include "equitheta/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "equitheta/errors.hpp"

namespace equitheta::grpring {

namespace {

// Exact division of a by the monic b over Z.
std::vector<mpz_class> divide_exact(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const std::size_t db = b.size() - 1;
    std::vector<mpz_class> quot(a.size() - db, 0);
    for (std::size_t k = a.size() - 1; k + 1 > db; --k) {
        mpz_class c = a[k];
        quot[k - db] = c;
        if (c != 0)
            for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
        if (k == db) break;
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) throw ConsistencyError("cyclotomic polynomial division is not exact");
    return quot;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<mpz_class>> cache;
    if (n < 1) throw PreconditionError("cyclotomic polynomial order must be positive");
    {
        std::lock_guard lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<mpz_class> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = divide_exact(num, cyclotomic_polynomial(d));
    std::lock_guard lock(mu);
    return cache.emplace(n, std::move(num)).first->second;
}

CyclotomicInt::CyclotomicInt(int order) : n_(order) {
    c_.assign(cyclotomic_polynomial(order).size() - 1, 0);
}

CyclotomicInt CyclotomicInt::from_int(int order, const mpz_class& n) {
    CyclotomicInt r(order);
    r.c_[0] = n;
    return r;
}

CyclotomicInt CyclotomicInt::root_power(int order, long long k) {
    long long e = k % order;
    if (e < 0) e += order;
    std::vector<mpz_class> raw(static_cast<std::size_t>(e) + 1, 0);
    raw[e] = 1;
    CyclotomicInt r(order);
    r.reduce(std::move(raw));
    return r;
}

void CyclotomicInt::reduce(std::vector<mpz_class> raw) {
    const auto& phi = cyclotomic_polynomial(n_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = raw.size(); k-- > deg;) {
        const mpz_class c = raw[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= deg; ++i) raw[k - deg + i] -= c * phi[i];
    }
    raw.resize(deg, 0);
    c_ = std::move(raw);
}

bool CyclotomicInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CyclotomicInt::is_rational_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    if (o.n_ != n_) throw PreconditionError("cyclotomic order mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    if (o.n_ != n_) throw PreconditionError("cyclotomic order mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& o) {
    if (o.n_ != n_) throw PreconditionError("cyclotomic order mismatch");
    std::vector<mpz_class> raw(c_.size() + o.c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) raw[i + j] += c_[i] * o.c_[j];
    }
    reduce(std::move(raw));
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const mpz_class& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

CyclotomicInt& CyclotomicInt::divexact(const mpz_class& d) {
    for (auto& x : c_) {
        if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) throw ConsistencyError("cyclotomic division is not exact");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    return *this;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

std::complex<double> CyclotomicInt::to_complex() const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / n_;
        acc += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

std::string CyclotomicInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace equitheta::grpring
