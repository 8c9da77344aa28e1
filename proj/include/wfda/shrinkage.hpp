#pragma once

#include "wfda/dwt.hpp"
#include "wfda/signal.hpp"

namespace wfda {

enum class Regime { LINEAR_PROJECTION, TERM_BY_TERM, BLOCK };
enum class SigmaEstimator { MAD, STD };

/// Which estimation regime runs and on which levels it acts.
struct ShrinkageSpec {
    Regime regime = Regime::TERM_BY_TERM;
    int projection_level = 0;   // LINEAR_PROJECTION: project onto V_{projection_level}
    int level_lo = 0;           // nonlinear regimes: inclusive shrunk level range
    int level_hi = 0;
    SigmaEstimator sigma_estimator = SigmaEstimator::MAD;
    int block_length = 0;       // BLOCK: 0 means ceil(ln n)
    double block_lambda = 4.50524;  // BlockJS shrink constant
};

/// MAD (median |d|/0.6745) or STD over the finest detail level.
double estimate_sigma(const WaveletCoefficients& c, SigmaEstimator method);

/// Projection onto V_{proj_level}: zero all detail levels >= proj_level.
Signal denoise_linear(const Signal& y, BasisName basis, int proj_level);

/// Hard thresholding at lambda = sigma sqrt(2 ln n) on the given levels.
Signal denoise_term_by_term(const Signal& y, BasisName basis, int level_lo,
                            int level_hi, double sigma);

/// BlockJS: contiguous blocks of length L (last block wraps), each scaled by
/// max(0, 1 - lambda* L sigma^2 / S_b^2).
Signal denoise_block(const Signal& y, BasisName basis, int level_lo, int level_hi,
                     double sigma, int block_length = 0,
                     double block_lambda = 4.50524);

/// Dispatch on spec.regime.
Signal apply_shrinkage(const Signal& y, BasisName basis, const ShrinkageSpec& spec,
                       double sigma);

/// Thresholded level range keyed off n: 4-7 for n = 512/1024/2048, 5-8 for
/// 4096/8192; (J/2+1)..(J-2) otherwise (extension beyond the tabulated sizes).
std::pair<int, int> threshold_levels_for(std::size_t n);

/// Projection space: V_5 (512), V_6 (1024, 2048), V_7 (4096, 8192);
/// J/2+2 otherwise.
int projection_level_for(std::size_t n);

/// Spec with the tabulated schedule filled in for the given regime and n.
ShrinkageSpec default_spec(Regime regime, std::size_t n);

}  // namespace wfda
