#pragma once

#include <vector>

#include "wfda/dwt.hpp"
#include "wfda/shrinkage.hpp"
#include "wfda/signal.hpp"

namespace wfda {

struct FitConfig {
    BasisName basis = BasisName::DB6;
    ShrinkageSpec loop_shrinkage;   // used inside iterations
    ShrinkageSpec final_shrinkage;  // used once after rho converges
    std::vector<double> initial_rhos = {0.0};
    double tol = 1e-15;
    int max_iter = 250;
};

struct FitResult {
    double rho_hat = 0.0;
    Signal f_hat;
    double sigma_u_hat = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> rho_trace;          // winning start
    std::vector<double> per_start_rhos;     // final rho for each initial value
    std::vector<double> residual_norm_trace;  // L2 ||y - f_hat|| per iteration
};

/// z_0 = sqrt(1 - rho^2) y_0 (Prais-Winsten), z_t = y_t - rho y_{t-1}.
Signal prewhiten(const Signal& y, double rho);

/// f_0 = y0, f_t = g_t + rho f_{t-1} (g_0 unused by the recursion).
Signal recolor(const Signal& g_hat, double rho, double y0);

/// Iterative procedure: alternate prewhitening-based functional estimation
/// and residual-based rho estimation until |delta rho| < tol, for every
/// initial rho; the reported fit is the minimum-RSS start (ties toward the
/// smallest |rho|), refit once with final_shrinkage at the converged rho.
FitResult fit(const Signal& y, const FitConfig& cfg);

/// Single shrinkage pass at a fixed rho: prewhiten, estimate sigma_u (MAD,
/// nonlinear regimes), shrink, recolor. The fixed-rho competitor pipeline.
Signal estimate_with_rho(const Signal& y, double rho, BasisName basis,
                         const ShrinkageSpec& spec, double* sigma_out = nullptr);

/// FitConfig with the tabulated level schedules for length n: term-by-term
/// loop and block final by default.
FitConfig default_fit_config(std::size_t n, BasisName basis,
                             Regime loop_regime = Regime::TERM_BY_TERM,
                             Regime final_regime = Regime::BLOCK);

}  // namespace wfda
