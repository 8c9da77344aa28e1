#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wfda::rng {

// splitmix64 step; used both as a generator and as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic stream id from (seed, replication_index, start_index).
/// Parallel replications draw from disjoint streams regardless of scheduling.
inline std::uint64_t stream(std::uint64_t seed, std::uint64_t replication_index,
                            std::uint64_t start_index = 0) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= replication_index + 0x632be59bd9b4e019ULL;
    std::uint64_t b = splitmix64(s);
    s ^= start_index + 0x2545f4914f6cdd1dULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b << 1 | b >> 63) ^ c;
}

/// Counter-based uniform/normal sampler (splitmix64 core, Box-Muller).
/// Deterministic across platforms; no libstdc++ distribution objects.
class Stream {
public:
    explicit Stream(std::uint64_t stream_id) : state_(stream_id) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform on (0, 1).
    double uniform() {
        // 53-bit mantissa; offset by half an ulp to avoid exact 0
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wfda::rng
