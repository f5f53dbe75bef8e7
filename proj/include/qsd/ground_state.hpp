// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "determinant.hpp"
#include "eigensolvers.hpp"
#include "statevector.hpp"

#include <stdexcept>

namespace qsd {

struct FciResult {
    double energy = 0.0;  ///< includes the core energy
    Subspace space;
    Eigen::VectorXd coefficients;  ///< aligned with `space`, HF entry >= 0
    StateVector state;             ///< coefficients embedded at qubit indices
    double hf_weight = 0.0;
    bool converged = true;
    int iterations = 0;
};

/// Embed determinant coefficients into a 2*n_orb-qubit statevector.
inline StateVector embed_state(const Subspace& s, const Eigen::VectorXd& c) {
    const int n = s.n_orbitals();
    StateVector sv(2 * n);
    sv[0] = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sv[s[i].qubit_index(n)] += c[static_cast<Eigen::Index>(i)];
    return StateVector(2 * n, sv.amplitudes(), true);
}

/**
 * Exact ground state of the active-space Hamiltonian over the full
 * determinant space of the integrals' sector.
 */
inline FciResult fci_ground_state(const MolecularIntegrals& ints, std::size_t max_dim = 1'000'000) {
    Subspace space = enumerate_fci_space(ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
    if (space.size() > max_dim) throw std::invalid_argument("full CI space exceeds the configured limit");
    const auto h = project_hamiltonian(space, ints);
    const Determinant hf = hartree_fock(ints.n_alpha(), ints.n_beta());
    const std::size_t hf_idx = space.index_of(hf);

    Eigen::VectorXd guess = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
    guess[static_cast<Eigen::Index>(hf_idx)] = 1.0;
    const Eigenpair ep = lowest_eigenpair(h.to_operator(), guess);

    FciResult r;
    r.energy = ep.value + ints.core_energy();
    r.coefficients = ep.vector;
    if (r.coefficients[static_cast<Eigen::Index>(hf_idx)] < 0) r.coefficients = -r.coefficients;
    r.hf_weight = r.coefficients[static_cast<Eigen::Index>(hf_idx)] * r.coefficients[static_cast<Eigen::Index>(hf_idx)];
    r.converged = ep.converged;
    r.iterations = ep.iterations;
    r.state = embed_state(space, r.coefficients);
    r.space = std::move(space);
    return r;
}

}  // namespace qsd
