// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sqd.hpp
 * @brief Sample-based quantum diagonalization with configuration recovery.
 *
 * One iteration: draw K weighted batches from the determinant pool, build
 * each batch's merged-pool subspace and diagonalize it, take orbital
 * occupations from the lowest batch, then repair every symmetry-violating
 * shot against those occupations and add the repaired determinants to the
 * pool.  The pool only grows.
 */
#pragma once

#include "determinant.hpp"
#include "qsci.hpp"
#include "rng.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace qsd {

struct SqdConfig {
    int n_batches = 3;
    std::size_t batch_size = 300;
    int max_iterations = 5;
    double tolerance = 1e-6;
    u64 seed = 0;
    bool strict_disjoint = false;  ///< partition batches when the pool holds at least K*d determinants

    void validate() const {
        if (n_batches < 1) throw std::invalid_argument("n_batches must be >= 1");
        if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
        if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    }
};

struct SqdIteration {
    std::vector<double> batch_energies;
    std::vector<std::size_t> subspace_sizes;
    std::size_t pool_size = 0;    ///< pool size the batches were drawn from
    std::size_t n_recovered = 0;  ///< shots repaired after this iteration's diagonalization
    std::size_t n_new = 0;        ///< determinants the repair added to the pool
    std::size_t n_fallback = 0;   ///< repairs that fell back to a uniform choice
};

struct SqdResult {
    double energy = std::numeric_limits<double>::infinity();  ///< min over every batch energy
    std::size_t subspace_size = 0;  ///< subspace of the batch that attained `energy`
    std::vector<SqdIteration> iterations;
    std::vector<double> occupations;  ///< 2*n_orb entries, alpha orbitals first
    std::size_t pool_size = 0;
    bool converged = false;
    bool occupation_fallback = false;  ///< no valid sample: first repair used N_sigma/n_orb occupations
};

/// Cross product over the merged alpha/beta string set, each slot restricted to its popcount.
inline Subspace sqd_subspace(int n_orb, const std::vector<u64>& u_alpha, const std::vector<u64>& u_beta,
                             int n_alpha, int n_beta) {
    std::vector<u64> merged(u_alpha);
    merged.insert(merged.end(), u_beta.begin(), u_beta.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::vector<u64> a, b;
    for (u64 m : merged) {
        if (std::popcount(m) == n_alpha) a.push_back(m);
        if (std::popcount(m) == n_beta) b.push_back(m);
    }
    if (a.empty() || b.empty()) throw std::invalid_argument("empty merged pool");
    std::vector<Determinant> dets;
    dets.reserve(a.size() * b.size());
    for (u64 x : a)
        for (u64 y : b) dets.push_back({x, y});
    return Subspace(n_orb, std::move(dets));
}

/// occ[p] for alpha orbital p, occ[n_orb + p] for beta orbital p.
inline std::vector<double> average_occupations(const Eigen::VectorXd& c, const Subspace& s, int n_orb) {
    if (static_cast<std::size_t>(c.size()) != s.size())
        throw std::invalid_argument("coefficients and subspace differ in length");
    std::vector<double> occ(static_cast<std::size_t>(2 * n_orb), 0.0);
    const double nrm2 = c.squaredNorm();
    if (nrm2 == 0.0) throw std::invalid_argument("zero coefficient vector");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double w = c[static_cast<Eigen::Index>(i)] * c[static_cast<Eigen::Index>(i)] / nrm2;
        for (int p = 0; p < n_orb; ++p) {
            if ((s[i].alpha >> p) & 1u) occ[static_cast<std::size_t>(p)] += w;
            if ((s[i].beta >> p) & 1u) occ[static_cast<std::size_t>(n_orb + p)] += w;
        }
    }
    for (auto& o : occ) o = std::clamp(o, 0.0, 1.0);
    return occ;
}

struct RecoveryResult {
    std::vector<Determinant> determinants;  ///< one per input string, all valid
    std::size_t n_fallback = 0;
};

namespace detail {

/// Weighted pick among the set bits of `candidates`; uniform if every weight is zero.
inline int pick_orbital(u64 candidates, const std::vector<double>& weight, int offset, CounterRng& rng,
                        std::size_t& n_fallback) {
    double total = 0.0;
    for (u64 m = candidates; m; m &= m - 1) total += weight[static_cast<std::size_t>(offset + std::countr_zero(m))];
    if (total <= 0.0) {
        ++n_fallback;
        auto k = static_cast<int>(rng.below(static_cast<u64>(std::popcount(candidates))));
        u64 m = candidates;
        while (k-- > 0) m &= m - 1;
        return std::countr_zero(m);
    }
    double u = rng.uniform() * total;
    int last = -1;
    for (u64 m = candidates; m; m &= m - 1) {
        const int p = std::countr_zero(m);
        const double w = weight[static_cast<std::size_t>(offset + p)];
        if (w <= 0.0) continue;
        last = p;
        if (u < w) return p;
        u -= w;
    }
    return last;  // rounding at the top end
}

inline u64 repair_sector(u64 bits, int target, int n_orb, int offset, const std::vector<double>& occ,
                         const std::vector<double>& vacancy, CounterRng& rng, std::size_t& n_fallback) {
    const u64 all = Determinant::low_mask(n_orb);
    while (std::popcount(bits) > target)
        bits &= ~(u64{1} << pick_orbital(bits, vacancy, offset, rng, n_fallback));
    while (std::popcount(bits) < target)
        bits |= u64{1} << pick_orbital(all & ~bits, occ, offset, rng, n_fallback);
    return bits;
}

}  // namespace detail

/**
 * Repair symmetry-violating strings: drop surplus electrons with weight
 * 1 - occ, add missing ones with weight occ, one orbital at a time.  String
 * k draws from its own counter stream, so the result does not depend on the
 * order in which strings are processed.
 */
inline RecoveryResult recover_configurations(const std::vector<u64>& bitstrings, const std::vector<double>& occ,
                                             int n_orb, int n_alpha, int n_beta, u64 seed) {
    if (occ.size() != static_cast<std::size_t>(2 * n_orb))
        throw std::invalid_argument("occupations must have 2*n_orb entries");
    for (double o : occ)
        if (!(o >= 0.0 && o <= 1.0)) throw std::invalid_argument("occupations must lie in [0, 1]");
    std::vector<double> vacancy(occ.size());
    std::transform(occ.begin(), occ.end(), vacancy.begin(), [](double o) { return 1.0 - o; });

    RecoveryResult r;
    r.determinants.reserve(bitstrings.size());
    for (std::size_t k = 0; k < bitstrings.size(); ++k) {
        CounterRng rng(derive_key(seed, k));
        auto det = Determinant::from_qubit_index(bitstrings[k], n_orb);
        det.alpha = detail::repair_sector(det.alpha, n_alpha, n_orb, 0, occ, vacancy, rng, r.n_fallback);
        det.beta = detail::repair_sector(det.beta, n_beta, n_orb, n_orb, occ, vacancy, rng, r.n_fallback);
        r.determinants.push_back(det);
    }
    return r;
}

namespace detail {

/**
 * Weighted sampling without replacement (exponential keys): determinant i
 * gets key log(u_i) / w_i, and the largest keys win.  Returns the pool
 * indices ordered by key.
 */
inline std::vector<std::size_t> weighted_order(const std::vector<double>& weights, u64 key) {
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double u = 1.0 - counter_uniform(key, i);  // (0, 1]
        keyed.emplace_back(std::log(u) / weights[i], i);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::size_t> out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) out.push_back(k.second);
    return out;
}

inline constexpr u64 kBatchStream = 0xBA7C;
inline constexpr u64 kRecoveryStream = 0x2EC0;

}  // namespace detail

inline SqdResult sqd_run(const EmpiricalDistribution& d, const MolecularIntegrals& ints, const SqdConfig& cfg) {
    cfg.validate();
    const int n_orb = ints.n_orbitals(), na = ints.n_alpha(), nb = ints.n_beta();
    if (d.total == 0) throw std::invalid_argument("empty distribution");
    if (d.n_qubits != 2 * n_orb) throw std::invalid_argument("distribution qubit count must be 2*n_orb");

    std::map<Determinant, double> valid_counts;
    std::vector<u64> invalid_shots;  // one entry per shot occurrence
    for (const auto& [bits, c] : d.counts) {
        const auto det = Determinant::from_qubit_index(bits, n_orb);
        if (det.valid_for(na, nb))
            valid_counts[det] += static_cast<double>(c);
        else
            invalid_shots.insert(invalid_shots.end(), c, bits);
    }

    SqdResult res;
    std::map<Determinant, double> pool = valid_counts;

    // Repair every invalid shot against `occ` and merge the result into the pool.
    auto recover_into_pool = [&](const std::vector<double>& occ, int iteration, SqdIteration& log) {
        if (invalid_shots.empty()) return;
        const u64 key = derive_key(derive_key(cfg.seed, detail::kRecoveryStream), static_cast<u64>(iteration));
        const auto rec = recover_configurations(invalid_shots, occ, n_orb, na, nb, key);
        std::map<Determinant, double> fresh;
        for (const auto& det : rec.determinants) fresh[det] += 1.0;
        for (const auto& [det, w] : fresh) {
            auto it = pool.find(det);
            const double base = valid_counts.contains(det) ? valid_counts.at(det) : 0.0;
            if (it == pool.end()) {
                pool.emplace(det, base + w);
                ++log.n_new;
            } else {
                it->second = base + w;  // reweight by the latest repair
            }
        }
        log.n_recovered += rec.determinants.size();
        log.n_fallback += rec.n_fallback;
    };

    if (pool.empty()) {
        if (invalid_shots.empty()) throw std::invalid_argument("no valid and no recoverable configurations");
        std::vector<double> occ(static_cast<std::size_t>(2 * n_orb));
        for (int p = 0; p < n_orb; ++p) {
            occ[static_cast<std::size_t>(p)] = static_cast<double>(na) / n_orb;
            occ[static_cast<std::size_t>(n_orb + p)] = static_cast<double>(nb) / n_orb;
        }
        SqdIteration seed_log;
        recover_into_pool(occ, 0, seed_log);
        res.occupation_fallback = true;
    }

    const auto K = static_cast<std::size_t>(cfg.n_batches);
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        SqdIteration log;
        log.pool_size = pool.size();

        std::vector<Determinant> members;
        std::vector<double> weights;
        for (const auto& [det, w] : pool) {
            members.push_back(det);
            weights.push_back(w);
        }
        const u64 it_key = derive_key(derive_key(cfg.seed, detail::kBatchStream), static_cast<u64>(it));
        const bool disjoint = cfg.strict_disjoint && members.size() >= K * cfg.batch_size;
        const auto shared_order = detail::weighted_order(weights, it_key);

        std::vector<std::future<QsciResult>> jobs;
        for (std::size_t k = 0; k < K; ++k) {
            std::vector<std::size_t> order =
                disjoint ? shared_order : detail::weighted_order(weights, derive_key(it_key, k));
            const std::size_t first = disjoint ? k * cfg.batch_size : 0;
            const std::size_t last = std::min(order.size(), first + cfg.batch_size);
            std::vector<u64> ua, ub;
            for (std::size_t i = first; i < last; ++i) {
                ua.push_back(members[order[i]].alpha);
                ub.push_back(members[order[i]].beta);
            }
            jobs.push_back(std::async(std::launch::async, [&ints, n_orb, na, nb, ua = std::move(ua),
                                                           ub = std::move(ub)] {
                return qsci_energy(sqd_subspace(n_orb, ua, ub, na, nb), ints);
            }));
        }
        std::vector<QsciResult> batches;
        for (auto& j : jobs) batches.push_back(j.get());

        std::size_t best = 0;
        for (std::size_t k = 0; k < batches.size(); ++k) {
            log.batch_energies.push_back(batches[k].energy);
            log.subspace_sizes.push_back(batches[k].subspace_size);
            if (batches[k].energy < batches[best].energy) best = k;
            if (batches[k].energy < res.energy) {
                res.energy = batches[k].energy;
                res.subspace_size = batches[k].subspace_size;
            }
        }
        res.occupations = average_occupations(batches[best].coefficients, batches[best].subspace, n_orb);
        recover_into_pool(res.occupations, it, log);

        const auto [lo, hi] = std::minmax_element(log.batch_energies.begin(), log.batch_energies.end());
        const bool settled = (*hi - *lo) < cfg.tolerance && log.n_new == 0;
        res.iterations.push_back(std::move(log));
        if (settled) {
            res.converged = true;
            break;
        }
    }
    res.pool_size = pool.size();
    return res;
}

}  // namespace qsd
