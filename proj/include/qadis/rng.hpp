#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qadis::rng {

/// SplitMix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based keyed stream: one 64-bit word per (master, realization,
/// counter) triple. Splittable by construction -- every draw depends only on
/// its own coordinates, never on call order or worker count.
inline std::uint64_t stream_word(std::uint64_t master, std::uint64_t realization,
                                 std::uint64_t counter) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL;
    z = mix64(z ^ (realization + 0xD1B54A32D192ED03ULL));
    z = mix64(z ^ (counter + 0x8CB92BA72F3D8DD7ULL));
    return mix64(z);
}

/// Uniform double in [0, 1) from a 64-bit word (53-bit mantissa).
inline double to_unit(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

/// Standard normal draw for parameter `param` of realization `realization`
/// under `master`, via Box-Muller on two counter slots.
inline double gaussian(std::uint64_t master, std::uint64_t realization,
                       std::uint64_t param) {
    const std::uint64_t w0 = stream_word(master, realization, 2 * param);
    const std::uint64_t w1 = stream_word(master, realization, 2 * param + 1);
    const double u1 = static_cast<double>((w0 >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = to_unit(w1);                                      // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

/// Deterministic sequential uniform stream for sampling tasks (e.g.
/// multinomial measurement shots).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t master, std::uint64_t realization = 0)
        : master_(master), realization_(realization) {}

    double next() { return to_unit(stream_word(master_, realization_, counter_++)); }

private:
    std::uint64_t master_;
    std::uint64_t realization_;
    std::uint64_t counter_ = 0;
};

}  // namespace qadis::rng
