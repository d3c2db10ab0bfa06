#pragma once

// (S0, T0)-modified equivariant L-functions of abelian extensions of
// F_q(t), their special values, and the analytic identities they satisfy.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "equitheta/ffq.hpp"
#include "equitheta/grpring.hpp"

namespace equitheta::lfun {

using ffq::FqPoly;
using ffq::Place;
using grpring::GroupPtr;
using grpring::IntElem;
using grpring::IntPoly;
using grpring::RatElem;

enum class ModelKind { Carlitz, ConstantField };

/// A concrete abelian extension K0/F_q(t) with group G.
///  Carlitz(q, m):      G = (F_q[t]/m)^x, sigma_v = v mod m, ramified = {v | m, inf}.
///  ConstantField(q, r): G = Gal(F_{q^r}/F_q) = <gbar>, sigma_v = gbar^{d_v}, unramified.
class ExtensionModel {
public:
    static ExtensionModel carlitz(int q, const FqPoly& m);
    static ExtensionModel constant_field(int q, int r);

    ModelKind kind() const noexcept { return kind_; }
    int q() const noexcept { return ring_.q(); }
    const ffq::PolyRing& ring() const noexcept { return ring_; }
    const GroupPtr& group() const noexcept { return group_; }
    /// Carlitz modulus (empty for ConstantField).
    const FqPoly& modulus() const noexcept { return m_; }
    int r() const noexcept { return r_; }

    /// Degree of the constant field of K0 over F_q.
    int rtilde() const noexcept { return kind_ == ModelKind::Carlitz ? 1 : r_; }
    /// Image of g in Gal(constant field / F_q) = Z/rtilde.
    int constant_degree(int g) const;
    /// A fixed element of constant degree 1.
    int lambda() const;

    bool is_ramified(const Place& v) const;
    const std::vector<Place>& ramified() const noexcept { return ramified_; }
    /// sigma_v; throws PreconditionError for ramified v.
    int frobenius(const Place& v) const;
    /// sigma_a for a monic a prime to the modulus.
    int sigma(const FqPoly& a) const;
    /// Group index of a residue key mod m, or -1 (Carlitz only).
    int group_of_key(std::uint64_t key) const { return key_to_group_[key]; }

    /// Test hook: force sigma_v to g for one place (frobenius() only).
    void corrupt_frobenius(const Place& v, int g);

    std::string describe() const;

private:
    ExtensionModel(ModelKind kind, int q) : kind_(kind), ring_(q) {}
    ModelKind kind_;
    ffq::PolyRing ring_;
    GroupPtr group_;
    FqPoly m_;
    int r_ = 1;
    std::vector<int> key_to_group_;
    std::vector<Place> ramified_;
    std::vector<std::pair<Place, int>> overrides_;
};

using ModelPtr = std::shared_ptr<const ExtensionModel>;

struct LDataRequest {
    ModelPtr model;
    std::vector<Place> s0;
    std::vector<Place> t0;
    int dmax = 0;  // 0: degree bound + guard
    int guard = 3;
};

/// Throws PreconditionError naming the violated condition.
void validate(const LDataRequest& req);
/// deg m + sum of degrees of finite places in S0 and of places in T0.
int degree_bound(const LDataRequest& req);

struct CharacterComponent {
    grpring::Character chi;
    grpring::CyclotomicPoly numerator;
    grpring::CyclotomicPoly denominator;
};

struct ThetaPoly {
    LDataRequest request;
    int dmax = 0;
    int stabilization_degree = 0;
    /// Theta_{S0,T0}(u) when T0 is nonempty.
    IntPoly poly;
    /// T0 empty: Theta_{S0} = numerator / denominator with
    /// denominator = |H| - q u lambda^{-1} sum_{h in H} h, H = ker(constant_degree).
    IntPoly numerator;
    IntPoly denominator;
    std::vector<CharacterComponent> components;

    bool is_rational() const noexcept { return request.t0.empty(); }
};

/// counts[d][g] = number of monic a of degree d, prime to every polynomial
/// in `excluded` (and to m for Carlitz), with sigma_a = g.
std::vector<std::vector<std::int64_t>> monic_census(const ExtensionModel& model, const std::vector<FqPoly>& excluded,
                                                    int dmax);

ThetaPoly theta(const LDataRequest& req);

/// prod_{v in T0} (1 - sigma_v^{-1} q^{n d_v}).
IntElem delta_t(const ExtensionModel& model, const std::vector<Place>& t0, int n);

/// Theta at u = q^{n-1}.
RatElem theta_special(const ThetaPoly& th, int n);

/// pi(t_{1-n}(theta)) with u read as gamma_q^{-1}.
RatElem twist_project(const ThetaPoly& th, int n);

struct EulerFactorResult {
    bool pass = false;
    IntPoly lhs, rhs;
};
/// Theta_{S0 + v, T0} = (1 - sigma_v^{-1} u^{d_v}) Theta_{S0,T0}.
EulerFactorResult euler_factor_check(const LDataRequest& req, const Place& v);

struct WeilResult {
    std::vector<std::complex<double>> inverse_roots;
    std::vector<double> moduli;
    bool pass = false;
};
WeilResult weil_check(const LDataRequest& req, const grpring::Character& chi, double tol = 1e-6);

struct UnitModPResult {
    bool integral_form = false;  // constant term 1, integer coefficients
    bool congruent = false;      // value in 1 + p (Z/p^k)[G]
    bool invertible = false;     // explicit inverse verified
    bool pass() const noexcept { return integral_form && congruent && invertible; }
};
UnitModPResult unit_mod_p_check(const ThetaPoly& th, int n, int kmax);

/// The explicit inverse of 1 + x (x in p R) in (Z/p^k)[G].
grpring::ModElem unit_inverse_mod(const IntElem& value, int p, int k);

bool t0_independence_check(const LDataRequest& base, const std::vector<Place>& t0a, const std::vector<Place>& t0b,
                           int n);

}  // namespace equitheta::lfun
