#pragma once

#include <cstdint>
#include <random>

namespace scc {

// One step of the splitmix64 generator (Steele/Lea/Vigna); advances `state`
// and returns the scrambled output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for the rng stream of replication `index` under `master`.
// Defined as two splitmix64 steps from master + (index + 1) * golden-gamma,
// so streams are independent of thread count and schedule.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    splitmix64_next(state);
    return splitmix64_next(state);
}

// mt19937_64 plus portable helpers. The bounded draw uses rejection sampling
// rather than std::uniform_int_distribution, whose mapping is
// implementation-defined; this keeps streams identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased uniform draw from [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t raw = eng_();
            if (raw >= threshold) return raw % bound;
        }
    }

    // Uniform double in the open interval (0, 1).
    double unit_open() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace scc
