// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sampling.hpp
 * @brief Projective sampling, readout noise, symmetry filtering, spin pools.
 *
 * Shot k of a run with seed s is a pure function of (s, k): the outcome uses
 * counter k of the sampling stream and the readout flips use counters
 * k*n .. k*n+n-1 of the noise stream.  Any prefix of a longer run is
 * therefore identical to a shorter run with the same seed.
 */
#pragma once

#include "determinant.hpp"
#include "rng.hpp"
#include "statevector.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsd {

/// Independent per-qubit readout flips.
struct NoiseModel {
    double p01 = 0.01;  ///< P(read 1 | true 0)
    double p10 = 0.01;  ///< P(read 0 | true 1)

    void validate() const {
        if (!(p01 >= 0.0 && p01 <= 1.0 && p10 >= 0.0 && p10 <= 1.0))
            throw std::invalid_argument("readout flip probabilities must lie in [0, 1]");
    }
};

struct EmpiricalDistribution {
    int n_qubits = 0;
    u64 total = 0;
    std::map<u64, u64> counts;  ///< basis index -> occurrences

    void add(u64 bits, u64 n = 1) {
        counts[bits] += n;
        total += n;
    }
    std::size_t unique() const noexcept { return counts.size(); }
};

/// Inverse-CDF sampler over a fixed categorical distribution.
class CategoricalSampler {
public:
    explicit CategoricalSampler(std::span<const double> weights) {
        cdf_.reserve(weights.size());
        double acc = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("negative sampling weight");
            acc += w;
            cdf_.push_back(acc);
        }
        if (acc <= 0.0) throw std::invalid_argument("sampling weights sum to zero");
    }

    /// Category for a uniform u in [0, 1); zero-weight categories are never returned.
    std::size_t pick(double u) const noexcept {
        const double target = u * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        if (it == cdf_.end()) --it;
        auto k = static_cast<std::size_t>(it - cdf_.begin());
        while (k > 0 && cdf_[k] == cdf_[k - 1]) --k;  // land on the nonzero bin
        return k;
    }

    std::size_t size() const noexcept { return cdf_.size(); }

private:
    std::vector<double> cdf_;
};

namespace detail {
inline constexpr u64 kSampleStream = 0x5A17;
inline constexpr u64 kNoiseStream = 0x0F11B;

inline u64 apply_readout_noise(u64 bits, int n, const NoiseModel& noise, u64 key, u64 shot) {
    for (int q = 0; q < n; ++q) {
        const double u = counter_uniform(key, shot * static_cast<u64>(n) + static_cast<u64>(q));
        const bool one = (bits >> q) & 1u;
        if (u < (one ? noise.p10 : noise.p01)) bits ^= u64{1} << q;
    }
    return bits;
}
}  // namespace detail

/// Draw `n_shots` computational-basis outcomes from |amp|^2, optionally through readout noise.
inline EmpiricalDistribution sample_bitstrings(const StateVector& s, u64 n_shots,
                                               const std::optional<NoiseModel>& noise, u64 seed) {
    if (n_shots < 1) throw std::invalid_argument("need at least one shot");
    if (noise) noise->validate();
    std::vector<double> probs(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) probs[i] = s.probability(i);
    const CategoricalSampler sampler(probs);
    const u64 skey = derive_key(seed, detail::kSampleStream);
    const u64 nkey = derive_key(seed, detail::kNoiseStream);

    EmpiricalDistribution d;
    d.n_qubits = s.n_qubits();
    for (u64 k = 0; k < n_shots; ++k) {
        u64 bits = sampler.pick(counter_uniform(skey, k));
        if (noise) bits = detail::apply_readout_noise(bits, s.n_qubits(), *noise, nkey, k);
        d.add(bits);
    }
    return d;
}

struct FilterResult {
    EmpiricalDistribution valid;
    u64 n_invalid = 0;         ///< invalid shots
    std::size_t invalid_unique = 0;
};

/// Keep outcomes whose alpha half has n_alpha bits and beta half n_beta bits.
inline FilterResult symmetry_filter(const EmpiricalDistribution& d, int n_orb, int n_alpha, int n_beta) {
    if (d.n_qubits != 2 * n_orb) throw std::invalid_argument("distribution qubit count must be 2*n_orb");
    FilterResult r;
    r.valid.n_qubits = d.n_qubits;
    for (const auto& [bits, c] : d.counts) {
        if (Determinant::from_qubit_index(bits, n_orb).valid_for(n_alpha, n_beta)) {
            r.valid.add(bits, c);
        } else {
            ++r.invalid_unique;
        }
    }
    r.n_invalid = d.total - r.valid.total;
    return r;
}

struct SpinPools {
    std::vector<u64> alpha;  ///< sorted, unique
    std::vector<u64> beta;
};

/**
 * Unique alpha and beta halves of the valid outcomes.  An outcome with the
 * wrong count in either sector contributes neither half.
 */
inline SpinPools spin_pools(const EmpiricalDistribution& d, int n_orb, int n_alpha, int n_beta) {
    if (d.n_qubits != 0 && d.n_qubits != 2 * n_orb)
        throw std::invalid_argument("distribution qubit count must be 2*n_orb");
    SpinPools pools;
    for (const auto& [bits, c] : d.counts) {
        const auto det = Determinant::from_qubit_index(bits, n_orb);
        if (!det.valid_for(n_alpha, n_beta)) continue;
        pools.alpha.push_back(det.alpha);
        pools.beta.push_back(det.beta);
    }
    for (auto* v : {&pools.alpha, &pools.beta}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return pools;
}

}  // namespace qsd
