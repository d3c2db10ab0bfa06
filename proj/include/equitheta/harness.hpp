#pragma once

// Seeded random instances for the Fitting-ideal properties and the
// four-term identity. Every record is reproducible from (property, seed, index).

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "equitheta/fitting.hpp"

namespace equitheta::harness {

struct Config {
    std::uint64_t seed = 42;
    int count = 100;
    /// Cyclic factor orders of the groups to draw from.
    std::vector<std::vector<int>> groups{{1}, {2}, {3}, {4}, {2, 2}};
    /// (l, k) working moduli.
    std::vector<std::pair<int, int>> moduli{{2, 2}, {2, 3}, {3, 2}, {3, 3}};
};

struct Record {
    std::string property;
    std::uint64_t seed = 0;
    int index = 0;
    std::string instance;  // JSON text of the instance
    std::string lhs, rhs;  // canonical forms
    bool pass = false;
};

const std::vector<std::string>& property_names();

/// Runs `count` instances of one property ("four_term", "fit_in_ann", ...).
std::vector<Record> run(const std::string& property, const Config& cfg);

// ---- instance generators, shared with the tests --------------------------------------

using Rng = std::mt19937_64;

/// Generator for instance `index` of `property`.
Rng instance_rng(std::uint64_t seed, const std::string& property, int index);

fitting::Elem random_elem(Rng& rng, const fitting::RingPtr& r, double density = 0.6);
grpring::IntElem random_int_elem(Rng& rng, const grpring::GroupPtr& g, int bound, double density = 0.5);
fitting::PresentedModule random_module(Rng& rng, const fitting::RingPtr& r, int max_gens = 3);
/// A homomorphism G -> (Z/N)^x as a table indexed by group element.
std::vector<std::int64_t> random_character(Rng& rng, const fitting::FinGroupRing& r);

/// Square integral g x g matrix whose determinant is a non-zero-divisor and
/// whose cokernel is killed by l^k (so it is a module over R_k). Returns
/// false if no such matrix was found within the attempt budget.
bool random_nzd_matrix(Rng& rng, const grpring::GroupPtr& g, int ell, int k, int size,
                       std::vector<std::vector<grpring::IntElem>>& out);

/// True when l^k kills the cokernel of the integral matrix over Z_l[G].
bool killed_at(const grpring::GroupPtr& g, int ell, int k, const std::vector<std::vector<grpring::IntElem>>& rel);

fitting::ElemMatrix reduce_matrix(const fitting::RingPtr& r, const std::vector<std::vector<grpring::IntElem>>& a);

struct FourTermInstance {
    fitting::PresentedModule b, c;
    fitting::ElemMatrix phi;
};
/// B = coker(X), C = coker(Y), phi = F with X F = Z Y. Both cokernels are
/// killed by l^k and have non-zero-divisor determinants.
FourTermInstance random_four_term(Rng& rng, const fitting::RingPtr& r, int size = 2);

}  // namespace equitheta::harness
