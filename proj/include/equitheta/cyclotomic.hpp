#pragma once

#include <complex>
#include <gmpxx.h>
#include <memory>
#include <string>
#include <vector>

namespace equitheta::grpring {

/// Coefficients of the N-th cyclotomic polynomial, low to high.
const std::vector<mpz_class>& cyclotomic_polynomial(int n);

/// Element of Z[x]/Phi_N(x), stored as a reduced coefficient vector of
/// length phi(N). x plays the role of a fixed primitive N-th root of unity.
class CyclotomicInt {
public:
    explicit CyclotomicInt(int order = 1);
    static CyclotomicInt from_int(int order, const mpz_class& n);
    /// x^k (k taken mod N).
    static CyclotomicInt root_power(int order, long long k);

    int order() const noexcept { return n_; }
    const std::vector<mpz_class>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    /// True when the value lies in Z (all non-constant coefficients vanish).
    bool is_rational_integer() const;

    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(const mpz_class& s);
    /// Exact division by an integer; throws ConsistencyError if inexact.
    CyclotomicInt& divexact(const mpz_class& d);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
    friend CyclotomicInt operator*(CyclotomicInt a, const mpz_class& s) { return a *= s; }
    CyclotomicInt operator-() const;
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    /// Value under x -> exp(2 pi i / N).
    std::complex<double> to_complex() const;
    std::string to_string() const;

private:
    void reduce(std::vector<mpz_class> raw);
    int n_;
    std::vector<mpz_class> c_;
};

}  // namespace equitheta::grpring
