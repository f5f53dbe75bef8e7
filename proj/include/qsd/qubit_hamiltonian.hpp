// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qubit_hamiltonian.hpp
 * @brief Jordan-Wigner mapping, qubit Hamiltonians, measurement groups and
 *        shot allocation.
 *
 * Spin-orbital layout is blocked: qubits 0..n_orb-1 hold alpha orbitals,
 * qubits n_orb..2n_orb-1 hold beta orbitals (same as determinant.hpp).
 */
#pragma once

#include "fcidump.hpp"
#include "pauli.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsd {

/// Complex-weighted sum of Pauli strings; the workspace for operator algebra.
class PauliSum {
public:
    PauliSum() = default;
    explicit PauliSum(int n_qubits) : n_(n_qubits) {}

    int n_qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const auto& terms() const noexcept { return terms_; }

    void add(const PauliString& p, cplx c) {
        if (p.n_qubits() != n_) throw std::invalid_argument("Pauli string size mismatch");
        terms_[p] += c;
    }

    PauliSum& operator+=(const PauliSum& o) {
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }

    PauliSum operator*(const PauliSum& o) const {
        if (o.n_ != n_) throw std::invalid_argument("Pauli sum size mismatch");
        PauliSum out(n_);
        for (const auto& [pa, ca] : terms_)
            for (const auto& [pb, cb] : o.terms_) {
                const auto prod = pauli_multiply(pa, pb);
                out.terms_[prod.string] += ca * cb * prod.phase();
            }
        return out;
    }

    PauliSum scaled(cplx s) const {
        PauliSum out(n_);
        for (const auto& [p, c] : terms_) out.terms_[p] = c * s;
        return out;
    }

    /// Drop terms with |c| <= tol.
    PauliSum pruned(double tol) const {
        PauliSum out(n_);
        for (const auto& [p, c] : terms_)
            if (std::abs(c) > tol) out.terms_[p] = c;
        return out;
    }

    cplx coefficient(const PauliString& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? cplx{} : it->second;
    }

private:
    int n_ = 0;
    std::unordered_map<PauliString, cplx, PauliStringHash> terms_;
};

enum class Ladder { Create, Annihilate };

/**
 * Jordan-Wigner image of a single ladder operator on mode p of n:
 * a_p = Z_0..Z_{p-1} (X_p + iY_p)/2 and a_p^dagger = Z_0..Z_{p-1} (X_p - iY_p)/2.
 */
inline std::vector<std::pair<cplx, PauliString>> jw_ladder(int p, int n, Ladder kind) {
    if (p < 0 || p >= n) throw std::out_of_range("mode index out of range");
    const u64 chain = (u64{1} << p) - 1;
    const u64 bit = u64{1} << p;
    const double ysign = kind == Ladder::Annihilate ? 1.0 : -1.0;
    return {{cplx{0.5, 0.0}, PauliString(n, bit, chain)},
            {cplx{0.0, 0.5 * ysign}, PauliString(n, bit, chain | bit)}};
}

inline PauliSum jw_ladder_sum(int p, int n, Ladder kind) {
    PauliSum s(n);
    for (const auto& [c, str] : jw_ladder(p, n, kind)) s.add(str, c);
    return s;
}

/// Dense matrix of a Pauli sum (bit q of the index is qubit q).
inline Eigen::MatrixXcd pauli_sum_matrix(const PauliSum& s) {
    const int n = s.n_qubits();
    if (n > 14) throw std::invalid_argument("dense matrix limited to 14 qubits");
    const auto dim = static_cast<Eigen::Index>(u64{1} << n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, c] : s.terms())
        for (u64 b = 0; b < static_cast<u64>(dim); ++b)
            m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) +=
                c * i_power(pauli_basis_phase(p, b));
    return m;
}

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;
};

/// Real-weighted Pauli decomposition; one entry per distinct string.
struct QubitHamiltonian {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    double identity_coefficient() const noexcept {
        for (const auto& t : terms)
            if (t.string.is_identity()) return t.coeff;
        return 0.0;
    }

    /// Sum of |w_i| over non-identity terms.
    double one_norm() const noexcept {
        double s = 0.0;
        for (const auto& t : terms)
            if (!t.string.is_identity()) s += std::abs(t.coeff);
        return s;
    }

    PauliSum to_sum() const {
        PauliSum s(n_qubits);
        for (const auto& t : terms) s.add(t.string, t.coeff);
        return s;
    }
};

inline constexpr double kDefaultCoefficientCutoff = 1e-12;

/// Canonically ordered real Hamiltonian from a Pauli sum.
inline QubitHamiltonian to_qubit_hamiltonian(const PauliSum& s, double cutoff = kDefaultCoefficientCutoff,
                                             double imag_tol = 1e-10) {
    QubitHamiltonian h;
    h.n_qubits = s.n_qubits();
    for (const auto& [p, c] : s.terms()) {
        if (std::abs(c.imag()) > imag_tol)
            throw std::runtime_error("Pauli coefficient has imaginary residue " + std::to_string(c.imag()) +
                                     " on " + p.str());
        if (std::abs(c.real()) < cutoff) continue;
        h.terms.push_back({c.real(), p});
    }
    std::sort(h.terms.begin(), h.terms.end(),
              [](const PauliTerm& a, const PauliTerm& b) { return canonical_less(a.string, b.string); });
    return h;
}

/**
 * Second-quantized electronic Hamiltonian mapped to qubits:
 * H = E_core + sum h_pq a_p^+ a_q + 1/2 sum (pq|rs) a_p^+ a_r^+ a_s a_q
 * over spin-orbitals with spin conserved on each (p,q) and (r,s) pair.
 */
inline PauliSum fermionic_hamiltonian_sum(const MolecularIntegrals& ints) {
    const int n = ints.n_orbitals();
    const int nq = 2 * n;
    std::vector<PauliSum> create, annihilate;
    for (int q = 0; q < nq; ++q) {
        create.push_back(jw_ladder_sum(q, nq, Ladder::Create));
        annihilate.push_back(jw_ladder_sum(q, nq, Ladder::Annihilate));
    }
    PauliSum h(nq);
    h.add(PauliString::identity(nq), ints.core_energy());

    // a_P^+ a_Q for every spin-orbital pair, reused below.
    std::vector<PauliSum> hop(static_cast<std::size_t>(nq * nq));
    for (int P = 0; P < nq; ++P)
        for (int Q = 0; Q < nq; ++Q) hop[static_cast<std::size_t>(P * nq + Q)] = create[P] * annihilate[Q];

    for (int s = 0; s < 2; ++s)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double v = ints.h1(p, q);
                if (v == 0.0) continue;
                h += hop[static_cast<std::size_t>((p + s * n) * nq + q + s * n)].scaled(v);
            }

    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int t = 0; t < n; ++t) {
                            const double v = ints.eri(p, q, r, t);
                            if (v == 0.0) continue;
                            const int P = p + s1 * n, Q = q + s1 * n, R = r + s2 * n, S = t + s2 * n;
                            if (P == R || Q == S) continue;  // a_P^+ a_P^+ = 0
                            // a_P^+ a_R^+ a_S a_Q = (a_P^+ a_Q)(a_R^+ a_S) - delta_QR a_P^+ a_S
                            PauliSum term = hop[static_cast<std::size_t>(P * nq + Q)] *
                                            hop[static_cast<std::size_t>(R * nq + S)];
                            if (Q == R) term += hop[static_cast<std::size_t>(P * nq + S)].scaled(-1.0);
                            h += term.scaled(0.5 * v);
                        }
    return h;
}

inline QubitHamiltonian build_qubit_hamiltonian(const MolecularIntegrals& ints,
                                                double cutoff = kDefaultCoefficientCutoff) {
    return to_qubit_hamiltonian(fermionic_hamiltonian_sum(ints), cutoff);
}

/// Real symmetric dense matrix of H (up to 14 qubits).
inline Eigen::MatrixXd hamiltonian_matrix(const QubitHamiltonian& h) {
    const Eigen::MatrixXcd m = pauli_sum_matrix(h.to_sum());
    if (m.imag().cwiseAbs().maxCoeff() > 1e-10) throw std::runtime_error("Hamiltonian matrix is not real");
    return m.real();
}

// --------------------------------------------------------------------------
// Measurement groups
// --------------------------------------------------------------------------

struct MeasurementGroup {
    std::vector<std::size_t> members;  ///< indices into QubitHamiltonian::terms
    PauliString basis;                 ///< per-qubit measurement letter, I = free
};

/**
 * Greedy first-fit packing into qubit-wise commuting groups.  Terms are
 * visited by descending |coefficient|, ties by canonical string order; the
 * identity term is excluded.
 */
inline std::vector<MeasurementGroup> qubitwise_commuting_groups(const QubitHamiltonian& h) {
    if (h.terms.empty()) throw std::invalid_argument("empty Hamiltonian");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (!h.terms[i].string.is_identity()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double wa = std::abs(h.terms[a].coeff), wb = std::abs(h.terms[b].coeff);
        if (wa != wb) return wa > wb;
        return canonical_less(h.terms[a].string, h.terms[b].string);
    });

    std::vector<MeasurementGroup> groups;
    for (std::size_t i : order) {
        const PauliString& s = h.terms[i].string;
        bool placed = false;
        for (auto& g : groups) {
            if (!qubitwise_commutes(g.basis, s)) continue;
            g.members.push_back(i);
            g.basis = PauliString(h.n_qubits, g.basis.x_mask() | s.x_mask(), g.basis.z_mask() | s.z_mask());
            placed = true;
            break;
        }
        if (!placed) groups.push_back({{i}, s});
    }
    return groups;
}

/**
 * Same greedy first-fit, but with general (not qubit-wise) commutativity.
 * Such groups need entangling diagonalization circuits, so they are only
 * used for counting; `basis` is left as the identity.
 */
inline std::vector<MeasurementGroup> commuting_groups(const QubitHamiltonian& h) {
    if (h.terms.empty()) throw std::invalid_argument("empty Hamiltonian");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (!h.terms[i].string.is_identity()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double wa = std::abs(h.terms[a].coeff), wb = std::abs(h.terms[b].coeff);
        if (wa != wb) return wa > wb;
        return canonical_less(h.terms[a].string, h.terms[b].string);
    });
    std::vector<MeasurementGroup> groups;
    for (std::size_t i : order) {
        const PauliString& s = h.terms[i].string;
        auto fits = [&](const MeasurementGroup& g) {
            return std::all_of(g.members.begin(), g.members.end(),
                               [&](std::size_t m) { return commutes(h.terms[m].string, s); });
        };
        auto it = std::find_if(groups.begin(), groups.end(), fits);
        if (it != groups.end())
            it->members.push_back(i);
        else
            groups.push_back({{i}, PauliString::identity(h.n_qubits)});
    }
    return groups;
}

// --------------------------------------------------------------------------
// Shot allocation
// --------------------------------------------------------------------------

enum class AllocationMode { Uniform, Weight, WeightSqrtVariance };

struct ShotAllocation {
    std::vector<std::size_t> shots;  ///< aligned with QubitHamiltonian::terms; identity gets 0
    double predicted_mse = 0.0;      ///< sum_i w_i^2 V_i / N_i
};

/**
 * Split `total` shots over the non-identity terms (largest-remainder
 * rounding, at least one shot each).  Variances default to the bound 1.
 */
inline ShotAllocation allocate_shots(const QubitHamiltonian& h, std::size_t total, AllocationMode mode,
                                     const std::optional<std::vector<double>>& variances = std::nullopt) {
    if (mode == AllocationMode::WeightSqrtVariance && !variances)
        throw std::invalid_argument("variance-weighted allocation needs per-term variances");
    if (variances && variances->size() != h.terms.size())
        throw std::invalid_argument("variances must align with Hamiltonian terms");

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (!h.terms[i].string.is_identity()) active.push_back(i);
    if (total < active.size()) throw std::invalid_argument("too few shots to measure every term once");

    ShotAllocation out;
    out.shots.assign(h.terms.size(), 0);
    if (active.empty()) return out;

    auto variance = [&](std::size_t i) { return variances ? std::clamp((*variances)[i], 0.0, 1.0) : 1.0; };
    std::vector<double> weight(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t i = active[k];
        switch (mode) {
            case AllocationMode::Uniform: weight[k] = 1.0; break;
            case AllocationMode::Weight: weight[k] = std::abs(h.terms[i].coeff); break;
            case AllocationMode::WeightSqrtVariance:
                weight[k] = std::abs(h.terms[i].coeff) * std::sqrt(variance(i));
                break;
        }
    }
    double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);
    if (wsum <= 0.0) {
        std::fill(weight.begin(), weight.end(), 1.0);
        wsum = static_cast<double>(weight.size());
    }

    std::vector<std::size_t> n(active.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
        const double ideal = static_cast<double>(total) * weight[k] / wsum;
        n[k] = static_cast<std::size_t>(std::floor(ideal));
        assigned += n[k];
        rem.emplace_back(ideal - std::floor(ideal), k);
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++n[rem[r % rem.size()].second];

    // Every term needs at least one shot; take them from the largest counts.
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] > 0) continue;
        const auto donor = static_cast<std::size_t>(std::max_element(n.begin(), n.end()) - n.begin());
        --n[donor];
        n[k] = 1;
    }

    for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t i = active[k];
        out.shots[i] = n[k];
        const double w = h.terms[i].coeff;
        out.predicted_mse += w * w * variance(i) / static_cast<double>(n[k]);
    }
    return out;
}

/// Total shots for standard error eps under optimal allocation: (sum |w_i| sigma_i)^2 / eps^2.
inline double optimal_total_shots(const QubitHamiltonian& h, double eps,
                                  const std::optional<std::vector<double>>& variances = std::nullopt) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        if (h.terms[i].string.is_identity()) continue;
        const double v = variances ? std::clamp((*variances)[i], 0.0, 1.0) : 1.0;
        s += std::abs(h.terms[i].coeff) * std::sqrt(v);
    }
    return s * s / (eps * eps);
}

/// Upper bound (sum |w_i| / eps)^2 on the optimally allocated shot count.
inline double global_shot_bound(const QubitHamiltonian& h, double eps) {
    const double s = h.one_norm() / eps;
    return s * s;
}

}  // namespace qsd
