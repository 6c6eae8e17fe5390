// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace fhmux {

/// splitmix64 step; advances the state and returns one output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Independent stream for one unit of work, derived from (master seed,
/// family, index). Streams are reproducible and do not depend on scheduling,
/// so parallel replications reduce to the same result in any order. The
/// family separates unrelated consumers (e.g. spatial scenarios vs.
/// model-level sample chunks) that share a master seed.
inline std::mt19937_64 derive_stream(std::uint64_t master_seed,
                                     std::uint64_t family,
                                     std::uint64_t index) {
    std::uint64_t s = master_seed
                    ^ (0x9E3779B97F4A7C15ull * (family + 1))
                    ^ (0xC2B2AE3D27D4EB4Full * (index + 1));
    const std::uint64_t w0 = splitmix64(s);
    const std::uint64_t w1 = splitmix64(s);
    const std::uint64_t w2 = splitmix64(s);
    const std::uint64_t w3 = splitmix64(s);
    std::seed_seq seq{
        static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
        static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
        static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
        static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    return std::mt19937_64(seq);
}

inline std::mt19937_64 derive_stream(std::uint64_t master_seed,
                                     std::uint64_t index) {
    return derive_stream(master_seed, 0, index);
}

}  // namespace fhmux
