#ifndef SEMGP_RNG_HPP
#define SEMGP_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace semgp {

// Thin wrapper over mt19937_64. std::uniform_*_distribution output is
// implementation-defined, so all draws are derived from raw 64-bit words
// to keep runs reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform integer in [0, n). Requires n > 0. Modulo bias is < 2^-53
    // for every n used here (n is always far below 2^32).
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    // Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return unit() < p; }

private:
    std::mt19937_64 gen_;
};

// FNV-1a, used for stable per-cell seed derivation and config hashing.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace semgp

#endif
