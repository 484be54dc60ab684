#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tpbench {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard; the bounded draws below avoid std::uniform_int_distribution,
// whose mapping is implementation-defined and would break pinned datasets
// if the standard library changes.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    // Uniform real in [0, 1) with 53 bits of precision.
    double uniform_real01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a, used for stable prompt/tag hashing across runs and platforms.
inline uint64_t fnv1a64(const std::string_view text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace tpbench
