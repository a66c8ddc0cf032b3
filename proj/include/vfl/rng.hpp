#pragma once

#include <cmath>
#include <cstdint>

namespace vfl {

/// Master seed plus the derivation rule for per-mode noise streams. Streams
/// are keyed by (master, mode index, component, replication) and generated
/// counter-based, so output is identical for any thread schedule.
struct NoiseSeed {
    std::uint64_t master = 0;
};

namespace detail {

// splitmix64 finalizer: bijective 64-bit mix
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Standard-normal stream (Box-Muller over counter-based uniforms).
class GaussianStream {
public:
    GaussianStream(NoiseSeed seed, std::uint64_t mode_index, unsigned component,
                   std::uint64_t replication) {
        std::uint64_t k = detail::mix64(seed.master);
        k = detail::mix64(k ^ mode_index);
        k = detail::mix64(k ^ component);
        key_ = detail::mix64(k ^ replication);
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

private:
    // uniform in (0,1]
    double uniform() {
        const std::uint64_t bits = detail::mix64(key_ ^ counter_++);
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace vfl
