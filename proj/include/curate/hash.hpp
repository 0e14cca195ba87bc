#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace curate {

// 64-bit FNV-1a. The seed is XORed into the offset basis, so seed 0 matches
// the published FNV test vectors (fnv1a64("a") == 0xaf63dc4c8601ec8c).
inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0) {
    std::uint64_t h = kFnvOffsetBasis ^ seed;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= kFnvPrime;
    }
    return h;
}

constexpr std::uint64_t fnv1a64_u64(std::uint64_t value, std::uint64_t seed = 0) {
    std::uint64_t h = kFnvOffsetBasis ^ seed;
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (i * 8)) & 0xffu;
        h *= kFnvPrime;
    }
    return h;
}

// splitmix64 (Vigna). Matches the reference sequence, e.g. seed 1234567
// yields 6457827717110365317 first.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seeded RNG for every piece of pipeline randomness. Hand-rolled so streams
// are identical across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64_next(state_); }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Fisher-Yates; std::shuffle is not portable across library versions.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace curate
