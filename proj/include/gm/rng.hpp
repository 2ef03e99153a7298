#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gm {

// All randomness in the library flows through this wrapper. std::mt19937_64 is
// fully specified by the standard, and the distribution helpers below are
// hand-rolled, so identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, bound) via rejection sampling. bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t zone = bound * (~std::uint64_t{0} / bound);
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r < zone) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 gen_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream-splitting rule: the seed of stream `stream` under master seed `master`.
// Used to derive per-graph seeds from a collection seed and per-replicate seeds
// in permutation tests, so parallel work stays reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace gm
