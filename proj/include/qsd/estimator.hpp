// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file estimator.hpp
 * @brief Shot-based energy estimation over qubit-wise commuting groups.
 */
#pragma once

#include "qubit_hamiltonian.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "statevector.hpp"

#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qsd {

struct EnergyEstimate {
    double energy = 0.0;
    double std_error = 0.0;          ///< sqrt(sum_i w_i^2 s_i^2 / N_i), terms treated as independent
    double std_error_grouped = 0.0;   ///< same, but with the within-group covariances kept
    std::size_t total_shots = 0;
    std::vector<double> term_estimates;  ///< aligned with QubitHamiltonian::terms (identity: 1)
};

/// Rotate `s` so that measuring Z on every qubit measures `basis` (X: H, Y: S^dagger then H).
inline void rotate_to_measurement_basis(StateVector& s, const PauliString& basis) {
    for (int q = 0; q < basis.n_qubits(); ++q) {
        switch (basis.letter(q)) {
            case 'X': s.apply_h(q); break;
            case 'Y':
                s.apply_sdg(q);
                s.apply_h(q);
                break;
            default: break;
        }
    }
}

inline EnergyEstimate estimate_energy_by_sampling(const StateVector& s, const QubitHamiltonian& h,
                                                  const std::vector<MeasurementGroup>& groups,
                                                  std::size_t shots_per_group,
                                                  const std::optional<NoiseModel>& noise, u64 seed) {
    if (s.n_qubits() != h.n_qubits) throw std::invalid_argument("state and Hamiltonian differ in qubit count");
    if (shots_per_group < 1) throw std::invalid_argument("need at least one shot per group");

    std::vector<char> covered(h.terms.size(), 0);
    for (const auto& g : groups)
        for (std::size_t i : g.members) {
            if (i >= h.terms.size()) throw std::out_of_range("group member outside the Hamiltonian");
            if (!qubitwise_commutes(g.basis, h.terms[i].string))
                throw std::invalid_argument("group member not diagonal in the group basis");
            covered[i] = 1;
        }
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (!h.terms[i].string.is_identity() && !covered[i])
            throw std::invalid_argument(groups.empty() ? "no measurement groups for a non-identity Hamiltonian"
                                                       : "measurement groups do not cover every term");

    EnergyEstimate est;
    est.term_estimates.assign(h.terms.size(), 0.0);
    est.energy = h.identity_coefficient();
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (h.terms[i].string.is_identity()) est.term_estimates[i] = 1.0;

    const auto n = static_cast<double>(shots_per_group);
    double var_indep = 0.0, var_grouped = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        if (g.members.empty()) continue;
        StateVector rotated = s;
        rotate_to_measurement_basis(rotated, g.basis);
        const auto d = sample_bitstrings(rotated, shots_per_group, noise, derive_key(seed, gi));
        est.total_shots += shots_per_group;

        // Per-shot group energy e(b) = sum_i w_i (-1)^{|b & supp_i|}; its sample variance gives the grouped error.
        double e_sum = 0.0, e_sq = 0.0;
        std::vector<double> sums(g.members.size(), 0.0);
        for (const auto& [bits, c] : d.counts) {
            double e = 0.0;
            for (std::size_t k = 0; k < g.members.size(); ++k) {
                const auto& t = h.terms[g.members[k]];
                const double v = (std::popcount(bits & t.string.support()) & 1) ? -1.0 : 1.0;
                sums[k] += v * static_cast<double>(c);
                e += t.coeff * v;
            }
            e_sum += e * static_cast<double>(c);
            e_sq += e * e * static_cast<double>(c);
        }
        for (std::size_t k = 0; k < g.members.size(); ++k) {
            const std::size_t i = g.members[k];
            const double mean = sums[k] / n;
            est.term_estimates[i] = mean;
            est.energy += h.terms[i].coeff * mean;
            // Unbiased sample variance of a +-1 variable: N/(N-1) (1 - mean^2).
            const double s2 = shots_per_group > 1 ? n / (n - 1.0) * std::max(0.0, 1.0 - mean * mean) : 1.0;
            var_indep += h.terms[i].coeff * h.terms[i].coeff * s2 / n;
        }
        const double emean = e_sum / n;
        const double es2 = shots_per_group > 1 ? std::max(0.0, (e_sq - n * emean * emean) / (n - 1.0)) : 0.0;
        var_grouped += es2 / n;
    }
    est.std_error = std::sqrt(var_indep);
    est.std_error_grouped = std::sqrt(var_grouped);
    return est;
}

}  // namespace qsd
