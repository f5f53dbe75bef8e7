// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rng.hpp
 * @brief Counter-based random numbers.
 *
 * Every draw is a pure function of (key, counter), so a stream can be split
 * into shards or consumed out of order and still produce the same values.
 * The mixer is the SplitMix64 finalizer.
 */
#pragma once

#include <cstdint>
#include <limits>

namespace qsd {

using u64 = std::uint64_t;

inline constexpr u64 splitmix64(u64 x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derive an independent key for a sub-stream (e.g. per iteration, per group).
inline constexpr u64 derive_key(u64 key, u64 stream) noexcept {
    return splitmix64(splitmix64(key) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// Stateless draw #counter of stream `key`.
inline constexpr u64 counter_bits(u64 key, u64 counter) noexcept {
    return splitmix64(splitmix64(key ^ 0x6A09E667F3BCC909ULL) + counter * 0x9E3779B97F4A7C15ULL);
}

/// Uniform double in [0, 1) with 53 random bits.
inline constexpr double counter_uniform(u64 key, u64 counter) noexcept {
    return static_cast<double>(counter_bits(key, counter) >> 11) * 0x1.0p-53;
}

/// Sequential view over a counter stream; satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = u64;

    explicit CounterRng(u64 key, u64 start = 0) noexcept : key_(key), counter_(start) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<u64>::max(); }

    result_type operator()() noexcept { return counter_bits(key_, counter_++); }
    double uniform() noexcept { return counter_uniform(key_, counter_++); }

    /// Uniform integer in [0, n).
    u64 below(u64 n) noexcept {
        return static_cast<u64>(uniform() * static_cast<double>(n)) % n;
    }

    u64 counter() const noexcept { return counter_; }

private:
    u64 key_;
    u64 counter_;
};

}  // namespace qsd
