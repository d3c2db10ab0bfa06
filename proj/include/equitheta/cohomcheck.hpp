#pragma once

// Predicted Fitting ideals of the l-adic cohomology of K0 twisted by n,
// the divisor modules at T0, and the consistency checks tying them to the
// L-function data.

#include <string>
#include <vector>

#include "equitheta/fitting.hpp"
#include "equitheta/lfun.hpp"

namespace equitheta::cohom {

using fitting::IdealFG;
using fitting::PresentedModule;
using fitting::RingPtr;

/// Ideal of R_{k+a} divided by the scalar D = l^a * (unit); represents
/// numerator / D inside Q_l[G] read modulo l^k.
struct FracIdeal {
    IdealFG numerator;
    mpz_class denominator;
    int k = 0;  // target level

    int shift() const;  // a = v_l(D)
    bool integral() const;
    /// The integral ideal of R_k; throws ConsistencyError if not integral.
    IdealFG reduce() const;
};

/// Z_l(-n)_Gamma over R_k: cyclic with relations g_i - q^{-n d(g_i)} and 1 - q^{-n rtilde}.
PresentedModule h1_module(const lfun::ExtensionModel& model, int n, int ell, int k);
/// Fit(H^1) = Fit((Z_l(-n)_Gamma)^vee) in R_k, computed at a level where the module is faithful.
IdealFG fit_h1(const lfun::ExtensionModel& model, int n, int ell, int k);

/// (+)_{v in T0} R_k / <1 - q^{n d_v} sigma_v>.
PresentedModule divisor_module(const lfun::ExtensionModel& model, const std::vector<ffq::Place>& t0, int n, int ell,
                               int k);

struct DivisorCheck {
    bool nzd = false;        // every relation passes the character test
    bool fit_product = false;  // (a)
    bool dual_delta = false;   // (b)
    IdealFG fit, fit_dual, expected_product, expected_delta;
    bool pass() const noexcept { return nzd && fit_product && dual_delta; }
};
DivisorCheck divisor_fit_check(const lfun::ExtensionModel& model, const std::vector<ffq::Place>& t0, int n, int ell,
                               int k);

struct WitnessRecord {
    std::vector<ffq::Place> t0;
    grpring::IntElem theta_t;  // Theta_{S0,T0}(q^{n-1})
    grpring::IntElem delta;    // delta_{T0}(q^{n-1})
    IdealFG fit_h2;
};

struct CohomologyPrediction {
    lfun::ModelPtr model;
    std::vector<ffq::Place> s0;
    int n = 0, ell = 0, k = 0;
    IdealFG fit_h1;
    /// Theta_{S0}(q^{n-1}) = theta_numerator / theta_denominator.
    grpring::IntElem theta_numerator;
    mpz_class theta_denominator;
    FracIdeal fit_h2_frac;  // from the first witness
    IdealFG fit_h2;
    std::vector<WitnessRecord> witnesses;
    bool witnesses_agree = false;
    bool integral = false;
    bool cross_check = false;  // Fit(H^1) Theta_T = delta Fit(H^2) for every witness
};

/// Throws ConsistencyError when witnesses disagree or the prediction is not integral.
CohomologyPrediction predict_h2(const lfun::LDataRequest& base, int n, int ell, int k,
                                const std::vector<std::vector<ffq::Place>>& witnesses);

struct CsEntry {
    int ell = 0;
    int n = 0;
    std::string fit_h1;
    std::string fit_h2;
    bool unit = false;
};
struct CsReport {
    std::string model;
    int p = 0;
    std::vector<CsEntry> entries;     // l != p predictions
    std::vector<std::pair<int, bool>> p_side;  // (n, Theta a p-adic unit)
    std::string label;
};
CsReport cs_k_theory_restate(const std::vector<CohomologyPrediction>& predictions,
                             const std::vector<std::pair<int, lfun::UnitModPResult>>& unit_checks);

}  // namespace equitheta::cohom
