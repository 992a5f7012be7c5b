#pragma once

#include <cstdint>

namespace swf {

// splitmix64: additive state advance through the 64-bit finalizing mix.
// Output sequence depends only on the seed, on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Derives the RNG seed for an ordinal sub-stream (per-stratum seeds, seed
// overrides): the splitmix64 output mix applied to parent + (ordinal+1)·gamma.
inline std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t ordinal) {
    std::uint64_t z = parent + (ordinal + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace swf
