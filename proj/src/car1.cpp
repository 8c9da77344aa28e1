#include "wfda/car1.hpp"

#include <cmath>
#include <stdexcept>

#include "wfda/rng.hpp"

namespace wfda {

double alpha_from_rho(double rho, int n) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("OutOfModelRange: rho must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("OutOfModelRange: n must be >= 1");
    return -static_cast<double>(n) * std::log(rho);
}

double rho_from_alpha(double alpha, int n) {
    if (alpha <= 0.0) throw std::invalid_argument("OutOfModelRange: alpha must be > 0");
    if (n < 1) throw std::invalid_argument("OutOfModelRange: n must be >= 1");
    return std::exp(-alpha / static_cast<double>(n));
}

Car1Params derive_params(double rho, double sigma2, int n) {
    if (sigma2 <= 0.0) throw std::invalid_argument("OutOfModelRange: sigma2 must be > 0");
    Car1Params p;
    p.rho = rho;
    p.n = n;
    p.sigma2 = sigma2;
    p.alpha = alpha_from_rho(rho, n);
    p.sigma_p2 = sigma2 / (2.0 * p.alpha);
    p.sigma_u2 = p.sigma_p2 * (1.0 - rho * rho);
    return p;
}

Signal simulate_car1(const Car1Params& params, std::size_t length, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("simulate_car1: length must be >= 1");
    rng::Stream gen(seed);
    const double sigma_p = std::sqrt(params.sigma_p2);
    const double sigma_u = std::sqrt(params.sigma_u2);
    std::vector<double> eps(length);
    eps[0] = gen.normal(0.0, sigma_p);
    for (std::size_t t = 1; t < length; ++t)
        eps[t] = params.rho * eps[t - 1] + gen.normal(0.0, sigma_u);
    return Signal(std::move(eps));
}

Signal simulate_model(const Signal& f, const Car1Params& params, std::uint64_t seed) {
    dyadic_log2(f.size());
    Signal y = simulate_car1(params, f.size(), seed);
    for (std::size_t t = 0; t < f.size(); ++t) y[t] += f[t];
    y.origin_time = f.origin_time;
    y.dt = f.dt;
    return y;
}

double estimate_rho_lag1(const Signal& y) {
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("estimate_rho_lag1: need length >= 3");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        num += y[t] * y[t - 1];
        den += y[t - 1] * y[t - 1];
    }
    if (den <= 0.0) throw std::invalid_argument("DegenerateSeries: zero lag denominator");
    return num / den;
}

double estimate_rho_residuals(const Signal& e) {
    const std::size_t n = e.size();
    if (n < 3) throw std::invalid_argument("estimate_rho_residuals: need length >= 3");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        num += e[t] * e[t - 1];
        den += e[t] * e[t];
    }
    if (den < 1e-300) return 0.0;
    const double limit = 1.0 - 1e-9;
    double rho = num / den;
    if (rho > limit) rho = limit;
    if (rho < -limit) rho = -limit;
    return rho;
}

Matrix3 fisher_information(double rho, double sigma_u2, int n) {
    if (!(std::abs(rho) < 1.0))
        throw std::invalid_argument("OutOfModelRange: |rho| must be < 1");
    if (sigma_u2 <= 0.0)
        throw std::invalid_argument("OutOfModelRange: sigma_u2 must be > 0");
    if (n < 2) throw std::invalid_argument("OutOfModelRange: n must be >= 2");

    const double r2 = rho * rho;
    const double one_m_r2 = 1.0 - r2;
    Matrix3 m{};
    m[0][0] = (one_m_r2 + (n - 1) * (1.0 - rho) * (1.0 - rho)) / sigma_u2;
    m[1][1] = (n - 1 + (3 - n) * r2) / (one_m_r2 * one_m_r2);
    m[1][2] = m[2][1] = 1.0 / (sigma_u2 * one_m_r2);
    m[2][2] = n / (2.0 * sigma_u2 * sigma_u2);
    return m;
}

}  // namespace wfda
