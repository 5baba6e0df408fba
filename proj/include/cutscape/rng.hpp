#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace cutscape {

// splitmix64 round, used to mix seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from (seed, label, index). Labels keep streams for
// different purposes (graphs, starting angles, rounding, ...) disjoint even
// at equal indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t index = 0) {
    std::uint64_t s = seed;
    for (char c : label) {
        s ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        splitmix64(s);
    }
    s ^= 0x5851f42d4c957f2dULL * (index + 1);
    std::uint64_t mixed = s;
    return splitmix64(mixed);
}

// mt19937_64 is bit-exactly specified by the standard, so streams are
// portable; the mappings below avoid std::*_distribution, whose output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in the closed interval [lo, hi].
    double uniform(double lo, double hi) {
        constexpr double denom = 9007199254740991.0;  // 2^53 - 1
        double u = static_cast<double>(engine_() >> 11) / denom;
        return lo + u * (hi - lo);
    }

    // Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) without modulo bias.
    std::uint64_t uniform_index(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // Standard normal via Box-Muller (deterministic across platforms).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cutscape
