#pragma once

// Finite fields F_q (q = p^e <= 64) and the polynomial ring F_q[t].
//
// Field elements are small integers in [0, q): the base-p digits of an
// element are its coefficients as a polynomial over F_p modulo a fixed
// irreducible of degree e (low digit = constant term). Arithmetic is done
// through precomputed tables, so every element has exactly one encoding.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace equitheta::ffq {

struct PrimePower {
    int p = 0;
    int e = 0;
    int q = 0;

    /// Factors q as p^e; throws PreconditionError if q is not a prime power
    /// or exceeds max_q.
    static PrimePower of(int q, int max_q = 64);
};

class Field {
public:
    explicit Field(int q);

    int q() const noexcept { return pp_.q; }
    int p() const noexcept { return pp_.p; }
    int degree() const noexcept { return pp_.e; }
    const PrimePower& prime_power() const noexcept { return pp_; }

    /// Coefficients (over F_p, low to high) of the defining modulus.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    int add(int a, int b) const { return add_[a * pp_.q + b]; }
    int mul(int a, int b) const { return mul_[a * pp_.q + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const;
    /// Image of the integer n under Z -> F_p -> F_q.
    int from_int(long long n) const;

private:
    PrimePower pp_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Shared, immutable field instance for q (cached per q).
FieldPtr field(int q);

/// Element of F_q[t]; coefficients low to high, no trailing zeros.
/// The zero polynomial has an empty coefficient list and degree -1.
struct FqPoly {
    std::vector<int> coeffs;

    FqPoly() = default;
    explicit FqPoly(std::vector<int> c);

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const noexcept { return coeffs.empty(); }
    bool is_monic() const noexcept { return !coeffs.empty() && coeffs.back() == 1; }
    int coeff(int i) const noexcept {
        return i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0;
    }

    friend bool operator==(const FqPoly&, const FqPoly&) = default;
    friend auto operator<=>(const FqPoly& a, const FqPoly& b) {
        if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() <=> b.coeffs.size();
        for (std::size_t i = a.coeffs.size(); i-- > 0;)
            if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] <=> b.coeffs[i];
        return std::strong_ordering::equal;
    }
};

class PolyRing {
public:
    explicit PolyRing(FieldPtr f) : f_(std::move(f)) {}
    explicit PolyRing(int q) : f_(field(q)) {}

    const Field& base() const noexcept { return *f_; }
    const FieldPtr& base_ptr() const noexcept { return f_; }
    int q() const noexcept { return f_->q(); }

    FqPoly constant(int c) const;
    FqPoly t() const { return FqPoly({0, 1}); }

    FqPoly add(const FqPoly& a, const FqPoly& b) const;
    FqPoly sub(const FqPoly& a, const FqPoly& b) const;
    FqPoly mul(const FqPoly& a, const FqPoly& b) const;
    FqPoly scale(const FqPoly& a, int c) const;
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) const;
    FqPoly mod(const FqPoly& a, const FqPoly& b) const { return divmod(a, b).second; }
    FqPoly gcd(const FqPoly& a, const FqPoly& b) const;
    FqPoly make_monic(const FqPoly& a) const;
    FqPoly powmod(FqPoly base, std::uint64_t e, const FqPoly& m) const;

    /// Irreducibility of a monic polynomial of degree >= 1 (Rabin test).
    bool is_irreducible(const FqPoly& f) const;

    /// Residues modulo m are encoded as base-q integers of their
    /// coefficient vectors (length deg m).
    std::uint64_t encode_residue(const FqPoly& r, int deg_m) const;
    FqPoly decode_residue(std::uint64_t key, int deg_m) const;

    std::string to_string(const FqPoly& f, const std::string& var = "t") const;
    /// Parses "t^2+2t+1", "2*t+1", "1". For e > 1 coefficients are element codes.
    FqPoly parse(const std::string& s) const;

private:
    FieldPtr f_;
};

/// All q^d monic polynomials of degree d, ordered by the base-q value of
/// their lower coefficients.
std::vector<FqPoly> monic_polys(int q, int d);

/// Calls fn(a) for every monic a of degree d without materialising the list.
void for_each_monic(int q, int d, const std::function<void(const FqPoly&)>& fn);

/// A place of F_q(t): a monic irreducible polynomial, or infinity.
class Place {
public:
    struct Infinity {
        friend bool operator==(Infinity, Infinity) = default;
    };

    static Place infinity() { return Place(Infinity{}); }
    /// Validates that f is monic irreducible.
    static Place finite(const PolyRing& ring, FqPoly f);

    bool is_infinite() const noexcept { return std::holds_alternative<Infinity>(v_); }
    const FqPoly& poly() const;
    int degree() const noexcept;

    friend bool operator==(const Place&, const Place&) = default;
    friend bool operator<(const Place& a, const Place& b);

private:
    explicit Place(std::variant<Infinity, FqPoly> v) : v_(std::move(v)) {}
    std::variant<Infinity, FqPoly> v_;
};

std::string to_string(const PolyRing& ring, const Place& v);
Place parse_place(const PolyRing& ring, const std::string& s);

/// Infinity followed by all finite places of degree <= max_degree, by degree
/// then by polynomial order.
std::vector<Place> places_up_to(int q, int max_degree);

/// Finite places of exactly degree d.
std::vector<Place> places_of_degree(int q, int d);

/// The unit group (F_q[t]/m)^x with an explicit cyclic decomposition.
struct ResidueUnitGroup {
    FqPoly modulus;
    /// Units of F_q[t]/m, ordered by residue encoding.
    std::vector<FqPoly> elements;
    /// (generator residue, order) pairs; orders form an invariant-factor
    /// chain n_1 | n_2 | ... and their product is elements.size().
    std::vector<std::pair<FqPoly, int>> structure;
    /// Exponent vector of each element w.r.t. structure (parallel to elements).
    std::vector<std::vector<int>> exponents;
    /// Residue encoding -> index into elements, or -1 for non-units.
    std::vector<int> index_of_key;

    std::size_t order() const noexcept { return elements.size(); }
    std::optional<std::vector<int>> exponents_of(const PolyRing& ring, const FqPoly& a) const;
};

ResidueUnitGroup unit_group(int q, const FqPoly& m);

/// Mobius function and the necklace count of monic irreducibles.
int mobius(int n);
std::uint64_t necklace_count(int q, int d);

/// Throws CapExceeded if q^d exceeds the enumeration cap.
std::uint64_t checked_power(int q, int d);

}  // namespace equitheta::ffq
