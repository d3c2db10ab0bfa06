#pragma once

// Finitely presented modules over R = (Z/l^k)[G], Fitting ideals and
// annihilators in canonical form, Pontryagin duals, twists.
//
// An R-module with g generators is a quotient of R^g. Over Z/N the free
// module R^g is identified with (Z/N)^{g|G|}, coordinate i*|G| + h being
// the coefficient of h * e_i.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "equitheta/grpring.hpp"
#include "equitheta/zmod.hpp"

namespace equitheta::fitting {

using grpring::GroupPtr;
using Elem = grpring::ModElem;
using ElemRow = std::vector<Elem>;
using ElemMatrix = std::vector<ElemRow>;

class FinGroupRing {
public:
    FinGroupRing(GroupPtr g, int ell, int k);

    const GroupPtr& group() const noexcept { return g_; }
    int ell() const noexcept { return ell_; }
    int k() const noexcept { return k_; }
    std::int64_t modulus() const noexcept { return n_; }
    int group_order() const noexcept { return g_->order(); }
    grpring::ModularRing coeff_ring() const { return grpring::ModularRing(n_); }

    Elem zero() const { return Elem(g_, coeff_ring()); }
    Elem one() const { return Elem::one(g_, coeff_ring()); }
    Elem basis(int h) const { return Elem::basis(g_, h, coeff_ring()); }
    Elem scalar(long long s) const;
    Elem from_integral(const grpring::IntElem& x) const;
    Elem from_row(const zmod::Row& r) const;

    friend bool operator==(const FinGroupRing& a, const FinGroupRing& b) {
        return *a.g_ == *b.g_ && a.n_ == b.n_;
    }

private:
    GroupPtr g_;
    int ell_, k_;
    std::int64_t n_;
};

using RingPtr = std::shared_ptr<const FinGroupRing>;
RingPtr make_ring(GroupPtr g, int ell, int k);

/// Ideal of R with its canonical form: the Howell basis of the Z/N-span
/// of all G-translates of the generators.
class IdealFG {
public:
    IdealFG(RingPtr r, std::vector<Elem> generators);
    static IdealFG zero(RingPtr r) { return IdealFG(std::move(r), {}); }
    static IdealFG unit(RingPtr r);
    static IdealFG principal(RingPtr r, const Elem& x) { return IdealFG(std::move(r), {x}); }

    const RingPtr& ring() const noexcept { return r_; }
    const std::vector<Elem>& generators() const noexcept { return gens_; }
    const zmod::Matrix& canonical() const noexcept { return howell_; }
    /// Canonical basis rows as ring elements.
    std::vector<Elem> basis() const;

    bool contains(const Elem& x) const;
    bool contains(const IdealFG& j) const;
    bool is_zero() const noexcept { return howell_.empty(); }
    bool is_unit() const;
    mpz_class size() const;

    friend bool operator==(const IdealFG& a, const IdealFG& b);
    std::string to_string() const;

private:
    RingPtr r_;
    std::vector<Elem> gens_;
    zmod::Matrix howell_;
};

bool ideal_eq(const IdealFG& a, const IdealFG& b);
IdealFG ideal_mul(const IdealFG& a, const IdealFG& b);
IdealFG ideal_add(const IdealFG& a, const IdealFG& b);
IdealFG iota(const IdealFG& a);
/// Image under R_k -> R_k' (k' <= k, same l and G).
IdealFG change_level(const IdealFG& a, const RingPtr& target);
/// Image under the ring map induced by a group homomorphism given as an
/// index table G -> H (e.g. augmentation when H is trivial).
IdealFG map_group(const IdealFG& a, const RingPtr& target, const std::vector<int>& hom);

/// Checks that c : G -> (Z/N)^x (indexed by element) is a homomorphism.
void check_character(const FinGroupRing& r, const std::vector<std::int64_t>& c);
/// The automorphism g -> c(g)^{-m} g applied to a ring element.
Elem twist_elem(const Elem& x, int m, const std::vector<std::int64_t>& c);
/// t_{-m}(I), the Fitting ideal of the m-th twist of a module with Fitting ideal I.
IdealFG twist_ideal(const IdealFG& a, int m, const std::vector<std::int64_t>& c);

class PresentedModule {
public:
    /// Cokernel of R^{relations} -> R^{gens}; zero relation rows are dropped.
    PresentedModule(RingPtr r, int gens, ElemMatrix relations);
    /// R / <generators of I>.
    static PresentedModule cyclic(RingPtr r, const std::vector<Elem>& ideal_generators);

    const RingPtr& ring() const noexcept { return r_; }
    int gens() const noexcept { return gens_; }
    const ElemMatrix& relations() const noexcept { return rel_; }

    /// Howell basis of the relation module inside (Z/N)^{g|G|}.
    const zmod::Matrix& relation_span() const;
    mpz_class order() const;
    /// True when s * M = 0.
    bool killed_by(std::int64_t s) const;

private:
    RingPtr r_;
    int gens_;
    ElemMatrix rel_;
    mutable zmod::Matrix span_;
    mutable bool span_ready_ = false;
};

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
PresentedModule change_level(const PresentedModule& m, const RingPtr& target);
PresentedModule map_group(const PresentedModule& m, const RingPtr& target, const std::vector<int>& hom);
/// Presentation of M(m): entries transformed by g -> c(g)^{-m} g.
PresentedModule twist_presentation(const PresentedModule& m, int twist, const std::vector<std::int64_t>& c);

/// Ideal of all g x g minors (g = number of generators).
IdealFG fit(const PresentedModule& m);
IdealFG ann(const PresentedModule& m);

/// Finite abelian l-group (+)_j Z/l^{a_j} with a G-action. action[h] is
/// the matrix whose row j holds the coordinates of h * (generator j).
struct AbelianModule {
    RingPtr ring;
    std::vector<int> exps;
    std::vector<zmod::Matrix> action;

    mpz_class order() const;
    /// Coordinates scaled into (Z/N)^s so that subgroups become Z/N-submodules.
    zmod::Row embed(const zmod::Row& y) const;
    zmod::Row act(int h, const zmod::Row& y) const;
};

/// U/W for G-stable submodules W <= U of R^gens (rows over Z/N).
AbelianModule subquotient(const RingPtr& r, int gens, const zmod::Matrix& u, const zmod::Matrix& w);
AbelianModule decompose(const PresentedModule& m);
/// Pontryagin dual; contragredient=true gives the g^{-1} action (M^vee).
AbelianModule dual(const AbelianModule& m, bool contragredient);
/// An R-presentation of a finite module.
PresentedModule present(const AbelianModule& m);

PresentedModule dual_vee(const PresentedModule& m);
PresentedModule dual_wedge(const PresentedModule& m);

/// Non-zero-divisor in Z_l[G] (equivalently in Q[G]): no character kills x.
bool is_non_zero_divisor(const grpring::IntElem& x);

/// g x g determinant over Z[G].
grpring::IntElem determinant(const std::vector<std::vector<grpring::IntElem>>& a);

/// Smallest K >= k_min such that l^K kills coker(rel) over Z_l[G], for a
/// square integral presentation with non-zero-divisor determinant.
int faithful_level(const GroupPtr& g, int ell, const std::vector<std::vector<grpring::IntElem>>& rel, int k_min,
                   int k_max = 40);

struct FourTermResult {
    IdealFG fit_a_wedge, fit_b, fit_c, fit_d;
    IdealFG lhs, rhs;
    mpz_class order_a, order_d;
    bool pass;
};

/// Given B = coker(x), C = coker(y) and phi : B -> C (row vectors, v -> v * phi),
/// forms A = ker phi, D = coker phi and compares Fit(A^)Fit(C) with Fit(B)Fit(D).
FourTermResult four_term_check(const PresentedModule& b, const PresentedModule& c, const ElemMatrix& phi);

}  // namespace equitheta::fitting
