// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qsci.hpp
 * @brief Quantum-selected CI: cross-product subspace of sampled spin strings.
 */
#pragma once

#include "determinant.hpp"
#include "eigensolvers.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace qsd {

struct QsciResult {
    double energy = 0.0;  ///< includes the core energy
    std::size_t subspace_size = 0;
    Eigen::VectorXd coefficients;  ///< aligned with `subspace`
    Subspace subspace;
    std::size_t n_alpha_strings = 0;
    std::size_t n_beta_strings = 0;
    bool converged = true;
};

namespace detail {
inline void check_uniform_popcount(const std::vector<u64>& pool, const char* what) {
    if (pool.empty()) throw std::invalid_argument(std::string("empty ") + what + " pool");
    const int k = std::popcount(pool.front());
    for (u64 m : pool)
        if (std::popcount(m) != k) throw std::invalid_argument(std::string(what) + " pool mixes popcounts");
}

/// Deterministic sign: the first coefficient above `tol` in canonical order is positive.
inline void canonical_sign(Eigen::VectorXd& c, double tol = 1e-12) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) <= tol) continue;
        if (c[i] < 0) c = -c;
        return;
    }
}
}  // namespace detail

/// Every |alpha_i beta_j> with alpha_i from U_alpha and beta_j from U_beta.
inline Subspace qsci_subspace(int n_orb, const std::vector<u64>& u_alpha, const std::vector<u64>& u_beta) {
    detail::check_uniform_popcount(u_alpha, "alpha");
    detail::check_uniform_popcount(u_beta, "beta");
    std::vector<Determinant> dets;
    dets.reserve(u_alpha.size() * u_beta.size());
    for (u64 a : u_alpha)
        for (u64 b : u_beta) dets.push_back({a, b});
    return Subspace(n_orb, std::move(dets));
}

inline Subspace qsci_subspace(int n_orb, const SpinPools& pools) {
    return qsci_subspace(n_orb, pools.alpha, pools.beta);
}

/// Lowest eigenpair of H projected onto `s`.
inline QsciResult qsci_energy(const Subspace& s, const MolecularIntegrals& ints) {
    if (s.empty()) throw std::invalid_argument("empty subspace");
    const auto h = project_hamiltonian(s, ints);
    Eigen::VectorXd guess = h.diagonal();
    // Start from the lowest diagonal determinant.
    Eigen::Index best = 0;
    guess.minCoeff(&best);
    guess.setZero();
    guess[best] = 1.0;
    const Eigenpair ep = lowest_eigenpair(h.to_operator(), guess);

    QsciResult r;
    r.energy = ep.value + ints.core_energy();
    r.coefficients = ep.vector;
    detail::canonical_sign(r.coefficients);
    r.subspace_size = s.size();
    r.converged = ep.converged;
    std::vector<u64> a, b;
    for (const auto& d : s) {
        a.push_back(d.alpha);
        b.push_back(d.beta);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    r.n_alpha_strings = static_cast<std::size_t>(std::unique(a.begin(), a.end()) - a.begin());
    r.n_beta_strings = static_cast<std::size_t>(std::unique(b.begin(), b.end()) - b.begin());
    r.subspace = s;
    return r;
}

/// Cross-product QSCI from a sampled distribution.
inline QsciResult qsci_from_samples(const EmpiricalDistribution& d, const MolecularIntegrals& ints) {
    const auto pools = spin_pools(d, ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
    if (pools.alpha.empty()) throw std::invalid_argument("no valid samples to build a subspace from");
    return qsci_energy(qsci_subspace(ints.n_orbitals(), pools), ints);
}

/// Raw selection: the `r` most frequent valid outcomes (ties broken by basis index).
inline Subspace qsci_top_r_subspace(const EmpiricalDistribution& d, int n_orb, int n_alpha, int n_beta,
                                    std::size_t r) {
    if (r < 1) throw std::invalid_argument("need r >= 1");
    std::vector<std::pair<u64, u64>> valid;  // (count, bits)
    for (const auto& [bits, c] : d.counts)
        if (Determinant::from_qubit_index(bits, n_orb).valid_for(n_alpha, n_beta)) valid.emplace_back(c, bits);
    if (valid.empty()) throw std::invalid_argument("no valid samples to build a subspace from");
    std::stable_sort(valid.begin(), valid.end(),
                     [](const auto& x, const auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
    valid.resize(std::min(r, valid.size()));
    std::vector<Determinant> dets;
    for (const auto& v : valid) dets.push_back(Determinant::from_qubit_index(v.second, n_orb));
    return Subspace(n_orb, std::move(dets));
}

}  // namespace qsd
