#pragma once

#include <string>
#include <vector>

#include "wfda/signal.hpp"

namespace wfda {

enum class BasisName { DB3, DB6, SYM8 };

BasisName basis_from_string(const std::string& name);
std::string to_string(BasisName basis);

/// Orthonormal analysis filter pair. g is the quadrature mirror of h:
/// g[k] = (-1)^k h[2N-1-k].
struct FilterPair {
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

FilterPair wavelet_filters(BasisName basis);

/// Mallat pyramid: scaling coefficients at coarse_level j0 plus detail
/// levels j0..J-1 (details[j - j0] holds 2^j values).
struct WaveletCoefficients {
    int coarse_level = 0;
    int max_level = 0;
    std::vector<double> scaling;
    std::vector<std::vector<double>> details;

    std::size_t total_size() const;
    std::vector<double>& detail(int level) { return details.at(level - coarse_level); }
    const std::vector<double>& detail(int level) const { return details.at(level - coarse_level); }

    void validate() const;  // throws MalformedPyramid
};

/// Periodic (circular) convolve-then-downsample at every level, filter
/// anchored at index 0: a_{j,k} = sum_m h_m a_{j+1,(2k+m) mod 2^{j+1}}.
WaveletCoefficients forward_dwt(const Signal& x, BasisName basis, int j0);

/// Exact inverse (transpose of the orthogonal analysis operator).
Signal inverse_dwt(const WaveletCoefficients& c, BasisName basis);

}  // namespace wfda
