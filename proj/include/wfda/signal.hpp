#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfda {

/// Equally spaced real-valued sample vector. Construction rejects NaN/Inf.
struct Signal {
    std::vector<double> samples;
    double origin_time = 0.0;
    double dt = 1.0;

    Signal() = default;

    explicit Signal(std::vector<double> s, double origin = 0.0, double step = 1.0)
        : samples(std::move(s)), origin_time(origin), dt(step) {
        if (dt <= 0.0) throw std::invalid_argument("Signal: dt must be positive");
        for (double v : samples) {
            if (!std::isfinite(v))
                throw std::invalid_argument("Signal: non-finite sample");
        }
    }

    std::size_t size() const { return samples.size(); }
    double operator[](std::size_t i) const { return samples[i]; }
    double& operator[](std::size_t i) { return samples[i]; }
};

inline bool is_dyadic(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// J such that n = 2^J; throws NonDyadicLength otherwise.
inline int dyadic_log2(std::size_t n) {
    if (!is_dyadic(n))
        throw std::invalid_argument("NonDyadicLength: length " + std::to_string(n) +
                                    " is not a power of two");
    int j = 0;
    while ((std::size_t{1} << j) < n) ++j;
    return j;
}

}  // namespace wfda
