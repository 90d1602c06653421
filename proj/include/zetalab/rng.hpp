#ifndef ZETALAB_RNG_HPP
#define ZETALAB_RNG_HPP

#include <cstdint>

namespace zetalab {

/// SplitMix64.  Used instead of <random> engines + distributions because the
/// standard distributions are implementation-defined; this generator pins the
/// exact sample sequence so experiment configs with a seed are reproducible
/// across toolchains.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform in {0, 1, ..., n-1} by rejection (exact, unbiased).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = n * ((~0ULL) / n);
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % n;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace zetalab

#endif
