#include "wfda/cochrane_orcutt.hpp"

#include <cmath>
#include <stdexcept>

#include "wfda/car1.hpp"

namespace wfda {

Signal prewhiten(const Signal& y, double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::invalid_argument("NonStationaryRho: |rho| must be < 1");
    std::vector<double> z(y.size());
    z[0] = std::sqrt(1.0 - rho * rho) * y[0];
    for (std::size_t t = 1; t < y.size(); ++t) z[t] = y[t] - rho * y[t - 1];
    Signal out(std::move(z));
    out.origin_time = y.origin_time;
    out.dt = y.dt;
    return out;
}

Signal recolor(const Signal& g_hat, double rho, double y0) {
    if (!(std::abs(rho) < 1.0))
        throw std::invalid_argument("NonStationaryRho: |rho| must be < 1");
    std::vector<double> f(g_hat.size());
    f[0] = y0;
    for (std::size_t t = 1; t < g_hat.size(); ++t) f[t] = g_hat[t] + rho * f[t - 1];
    Signal out(std::move(f));
    out.origin_time = g_hat.origin_time;
    out.dt = g_hat.dt;
    return out;
}

namespace {

struct StartOutcome {
    double rho = 0.0;
    double rss = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
    std::vector<double> residual_norms;
};

double residual_rss(const Signal& y, const Signal& f_hat) {
    double rss = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        double e = y[t] - f_hat[t];
        rss += e * e;
    }
    return rss;
}

/// One shrinkage pass at the given rho; returns f_hat.
Signal estimate_f(const Signal& y, double rho, BasisName basis,
                  const ShrinkageSpec& spec, double* sigma_out) {
    Signal z = prewhiten(y, rho);
    double sigma = 0.0;
    if (spec.regime != Regime::LINEAR_PROJECTION) {
        int J = dyadic_log2(z.size());
        sigma = estimate_sigma(forward_dwt(z, basis, J - 1), spec.sigma_estimator);
    }
    if (sigma_out) *sigma_out = sigma;
    Signal g_hat = apply_shrinkage(z, basis, spec, sigma);
    return recolor(g_hat, rho, y[0]);
}

StartOutcome run_start(const Signal& y, const FitConfig& cfg, double rho0) {
    StartOutcome out;
    out.trace.push_back(rho0);
    double rho = rho0;
    Signal f_hat;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        f_hat = estimate_f(y, rho, cfg.basis, cfg.loop_shrinkage, nullptr);
        std::vector<double> e(y.size());
        for (std::size_t t = 0; t < y.size(); ++t) e[t] = y[t] - f_hat[t];
        double rho_new = estimate_rho_residuals(Signal(std::move(e)));
        out.trace.push_back(rho_new);
        out.residual_norms.push_back(std::sqrt(residual_rss(y, f_hat)));
        out.iterations = it;
        if (std::abs(rho_new - rho) < cfg.tol) {
            rho = rho_new;
            out.converged = true;
            break;
        }
        rho = rho_new;
    }
    out.rho = rho;
    out.rss = residual_rss(y, estimate_f(y, rho, cfg.basis, cfg.loop_shrinkage, nullptr));
    return out;
}

}  // namespace

Signal estimate_with_rho(const Signal& y, double rho, BasisName basis,
                         const ShrinkageSpec& spec, double* sigma_out) {
    return estimate_f(y, rho, basis, spec, sigma_out);
}

FitResult fit(const Signal& y, const FitConfig& cfg) {
    dyadic_log2(y.size());
    if (cfg.initial_rhos.empty())
        throw std::invalid_argument("FitConfig: initial_rhos must be nonempty");
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("FitConfig: bad tol/max_iter");
    for (double r : cfg.initial_rhos)
        if (!(std::abs(r) < 1.0))
            throw std::invalid_argument("FitConfig: initial rho outside (-1,1)");

    const int n_starts = static_cast<int>(cfg.initial_rhos.size());
    // serial over starts; parallelism lives at the replication level
    std::vector<StartOutcome> starts(n_starts);
    for (int s = 0; s < n_starts; ++s)
        starts[s] = run_start(y, cfg, cfg.initial_rhos[s]);

    // min-RSS winner, ties broken toward the smallest |rho|
    int win = 0;
    for (int s = 1; s < n_starts; ++s) {
        if (starts[s].rss < starts[win].rss ||
            (starts[s].rss == starts[win].rss &&
             std::abs(starts[s].rho) < std::abs(starts[win].rho)))
            win = s;
    }

    FitResult res;
    res.rho_hat = starts[win].rho;
    res.iterations = starts[win].iterations;
    res.converged = starts[win].converged;
    res.rho_trace = starts[win].trace;
    res.residual_norm_trace = starts[win].residual_norms;
    res.per_start_rhos.reserve(n_starts);
    for (const auto& s : starts) res.per_start_rhos.push_back(s.rho);

    res.f_hat = estimate_f(y, res.rho_hat, cfg.basis, cfg.final_shrinkage,
                           &res.sigma_u_hat);
    if (cfg.final_shrinkage.regime == Regime::LINEAR_PROJECTION) {
        // sigma_u is only needed at the end under the linear regime
        Signal z = prewhiten(y, res.rho_hat);
        int J = dyadic_log2(z.size());
        res.sigma_u_hat =
            estimate_sigma(forward_dwt(z, cfg.basis, J - 1), SigmaEstimator::MAD);
    }
    return res;
}

FitConfig default_fit_config(std::size_t n, BasisName basis, Regime loop_regime,
                             Regime final_regime) {
    FitConfig cfg;
    cfg.basis = basis;
    cfg.loop_shrinkage = default_spec(loop_regime, n);
    cfg.final_shrinkage = default_spec(final_regime, n);
    return cfg;
}

}  // namespace wfda
