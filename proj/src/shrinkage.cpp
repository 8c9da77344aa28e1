#include "wfda/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfda {

namespace {

double median_abs(std::vector<double> v) {
    for (double& x : v) x = std::abs(x);
    const std::size_t n = v.size();
    auto mid = v.begin() + n / 2;
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    double hi = *mid;
    double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

}  // namespace

double estimate_sigma(const WaveletCoefficients& c, SigmaEstimator method) {
    if (c.details.empty() || c.details.back().empty())
        throw std::invalid_argument("estimate_sigma: empty finest detail level");
    const auto& finest = c.details.back();
    if (method == SigmaEstimator::MAD) {
        return median_abs(finest) / 0.6745;
    }
    double mean = 0.0;
    for (double d : finest) mean += d;
    mean /= static_cast<double>(finest.size());
    double ss = 0.0;
    for (double d : finest) ss += (d - mean) * (d - mean);
    return std::sqrt(ss / static_cast<double>(finest.size()));
}

Signal denoise_linear(const Signal& y, BasisName basis, int proj_level) {
    const int J = dyadic_log2(y.size());
    if (proj_level >= J)
        throw std::invalid_argument("BadLevelRange: projection level must be < J");
    const int j0 = std::max(proj_level, 0);
    WaveletCoefficients c = forward_dwt(y, basis, j0);
    for (int j = proj_level; j < J; ++j)
        std::fill(c.detail(j).begin(), c.detail(j).end(), 0.0);
    Signal out = inverse_dwt(c, basis);
    out.origin_time = y.origin_time;
    out.dt = y.dt;
    return out;
}

Signal denoise_term_by_term(const Signal& y, BasisName basis, int level_lo,
                            int level_hi, double sigma) {
    const int J = dyadic_log2(y.size());
    if (sigma < 0.0) throw std::invalid_argument("denoise_term_by_term: sigma < 0");
    if (level_lo > level_hi || level_lo < 0 || level_hi >= J)
        throw std::invalid_argument("BadLevelRange: threshold levels outside [0, J-1]");
    const double lambda = sigma * std::sqrt(2.0 * std::log(static_cast<double>(y.size())));
    WaveletCoefficients c = forward_dwt(y, basis, level_lo);
    for (int j = level_lo; j <= level_hi; ++j) {
        for (double& d : c.detail(j))
            if (!(std::abs(d) > lambda)) d = 0.0;  // tie |d| = lambda is killed
    }
    Signal out = inverse_dwt(c, basis);
    out.origin_time = y.origin_time;
    out.dt = y.dt;
    return out;
}

Signal denoise_block(const Signal& y, BasisName basis, int level_lo, int level_hi,
                     double sigma, int block_length, double block_lambda) {
    const int J = dyadic_log2(y.size());
    if (sigma < 0.0) throw std::invalid_argument("denoise_block: sigma < 0");
    if (level_lo > level_hi || level_lo < 0 || level_hi >= J)
        throw std::invalid_argument("BadLevelRange: threshold levels outside [0, J-1]");
    const int L = block_length > 0
                      ? block_length
                      : static_cast<int>(std::ceil(std::log(static_cast<double>(y.size()))));
    const double floor_energy = block_lambda * L * sigma * sigma;

    WaveletCoefficients c = forward_dwt(y, basis, level_lo);
    for (int j = level_lo; j <= level_hi; ++j) {
        auto& d = c.detail(j);
        const std::size_t len = d.size();
        std::vector<double> shrunk(len);
        for (std::size_t b0 = 0; b0 < len; b0 += L) {
            // energy over L wrapped entries; the short last block borrows the
            // start of the level for its energy but scales only its own slots
            double energy = 0.0;
            for (int i = 0; i < L; ++i) {
                double v = d[(b0 + i) % len];
                energy += v * v;
            }
            double factor = energy > 0.0 ? std::max(0.0, 1.0 - floor_energy / energy) : 0.0;
            for (std::size_t k = b0; k < std::min(b0 + L, len); ++k)
                shrunk[k] = factor * d[k];
        }
        d = std::move(shrunk);
    }
    Signal out = inverse_dwt(c, basis);
    out.origin_time = y.origin_time;
    out.dt = y.dt;
    return out;
}

Signal apply_shrinkage(const Signal& y, BasisName basis, const ShrinkageSpec& spec,
                       double sigma) {
    switch (spec.regime) {
        case Regime::LINEAR_PROJECTION:
            return denoise_linear(y, basis, spec.projection_level);
        case Regime::TERM_BY_TERM:
            return denoise_term_by_term(y, basis, spec.level_lo, spec.level_hi, sigma);
        case Regime::BLOCK:
            return denoise_block(y, basis, spec.level_lo, spec.level_hi, sigma,
                                 spec.block_length, spec.block_lambda);
    }
    throw std::logic_error("unreachable");
}

std::pair<int, int> threshold_levels_for(std::size_t n) {
    switch (n) {
        case 512:
        case 1024:
        case 2048: return {4, 7};
        case 4096:
        case 8192: return {5, 8};
        default: {
            int J = dyadic_log2(n);
            return {J / 2 + 1, std::max(J / 2 + 1, J - 2)};
        }
    }
}

int projection_level_for(std::size_t n) {
    switch (n) {
        case 512: return 5;
        case 1024:
        case 2048: return 6;
        case 4096:
        case 8192: return 7;
        default: return dyadic_log2(n) / 2 + 2;
    }
}

ShrinkageSpec default_spec(Regime regime, std::size_t n) {
    ShrinkageSpec spec;
    spec.regime = regime;
    if (regime == Regime::LINEAR_PROJECTION) {
        spec.projection_level = projection_level_for(n);
    } else {
        auto [lo, hi] = threshold_levels_for(n);
        spec.level_lo = lo;
        spec.level_hi = hi;
    }
    return spec;
}

}  // namespace wfda
