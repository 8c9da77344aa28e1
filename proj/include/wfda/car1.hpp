#pragma once

#include <array>
#include <cstdint>

#include "wfda/signal.hpp"

namespace wfda {

/// CAR(1)/Ornstein-Uhlenbeck parameter set with its algebraic interlocks:
/// rho = exp(-alpha/n), sigma_p2 = sigma2/(2 alpha), sigma_u2 = sigma_p2 (1 - rho^2).
struct Car1Params {
    double rho = 0.0;       // discrete lag-1 coefficient
    double alpha = 0.0;     // continuous mean-reversion rate
    double sigma2 = 0.0;    // diffusion variance
    int n = 1;              // samples per unit interval (h = 1/n)
    double sigma_p2 = 0.0;  // stationary variance
    double sigma_u2 = 0.0;  // innovation variance
};

/// alpha = -n log(rho); valid for 0 < rho < 1.
double alpha_from_rho(double rho, int n);

double rho_from_alpha(double alpha, int n);

Car1Params derive_params(double rho, double sigma2, int n);

/// Stationary AR(1) path: eps_0 ~ N(0, sigma_p^2), eps_t = rho eps_{t-1} + u_t.
Signal simulate_car1(const Car1Params& params, std::size_t length, std::uint64_t seed);

/// y = f + eps.
Signal simulate_model(const Signal& f, const Car1Params& params, std::uint64_t seed);

/// Lag-1 estimator sum y_t y_{t-1} / sum y_{t-1}^2 (t = 1..n-1, 0-based).
double estimate_rho_lag1(const Signal& y);

/// Residual form with unlagged denominator sum_{t>=1} e_t^2, clamped into
/// (-1, 1); returns 0 when the residuals are numerically zero.
double estimate_rho_residuals(const Signal& e);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Fisher information for (f_t, rho, sigma_u^2); block-diagonal.
Matrix3 fisher_information(double rho, double sigma_u2, int n);

}  // namespace wfda
