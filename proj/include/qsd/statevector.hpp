// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file statevector.hpp
 * @brief Dense statevector: basis states, Pauli rotations, expectations.
 *
 * Bit q of an amplitude index is qubit q (qubit 0 least significant).
 * Rotations follow exp(-i theta P), i.e. no factor 1/2 in the exponent.
 */
#pragma once

#include "pauli.hpp"
#include "qubit_hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsd {

class StateVector {
public:
    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > 28) throw std::invalid_argument("n_qubits must lie in [1, 28]");
        amp_.assign(std::size_t{1} << n_qubits, cplx{});
        amp_[0] = 1.0;
    }

    /// Adopt raw amplitudes; renormalizes when `normalize` is set.
    StateVector(int n_qubits, std::vector<cplx> amplitudes, bool normalize = false)
        : n_(n_qubits), amp_(std::move(amplitudes)) {
        if (n_qubits < 1 || n_qubits > 28) throw std::invalid_argument("n_qubits must lie in [1, 28]");
        if (amp_.size() != (std::size_t{1} << n_qubits))
            throw std::invalid_argument("amplitude count must be 2^n_qubits");
        const double nrm = norm();
        if (normalize) {
            if (nrm == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
            for (auto& a : amp_) a /= nrm;
        } else if (std::abs(nrm - 1.0) > 1e-10) {
            throw std::invalid_argument("state is not normalized");
        }
    }

    int n_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const noexcept { return amp_; }
    cplx operator[](std::size_t i) const noexcept { return amp_[i]; }
    cplx& operator[](std::size_t i) noexcept { return amp_[i]; }

    double norm() const noexcept {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    double probability(std::size_t i) const noexcept { return std::norm(amp_[i]); }

    cplx inner(const StateVector& o) const {
        if (o.n_ != n_) throw std::invalid_argument("state size mismatch");
        cplx s{};
        for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * o.amp_[i];
        return s;
    }

    /// this <- P this
    void apply_pauli(const PauliString& p) {
        check(p);
        std::vector<cplx> out(amp_.size());
        for (u64 b = 0; b < amp_.size(); ++b) out[b ^ p.x_mask()] = i_power(pauli_basis_phase(p, b)) * amp_[b];
        amp_.swap(out);
    }

    /// this <- exp(-i theta P) this = cos(theta) this - i sin(theta) P this
    void apply_pauli_rotation(const PauliString& p, double theta) {
        check(p);
        const double c = std::cos(theta), s = std::sin(theta);
        const u64 x = p.x_mask();
        const cplx minus_i{0.0, -1.0};
        if (x == 0) {
            for (u64 b = 0; b < amp_.size(); ++b) {
                const double sign = (std::popcount(p.z_mask() & b) & 1) ? -1.0 : 1.0;
                amp_[b] *= cplx{c, -s * sign};
            }
            return;
        }
        const int pivot = std::countr_zero(x);
        for (u64 b = 0; b < amp_.size(); ++b) {
            if ((b >> pivot) & 1u) continue;  // visit each (b, b^x) pair once
            const u64 b2 = b ^ x;
            const cplx a1 = amp_[b], a2 = amp_[b2];
            // P|b> = ph1 |b2>,  P|b2> = ph2 |b>
            const cplx ph1 = i_power(pauli_basis_phase(p, b));
            const cplx ph2 = i_power(pauli_basis_phase(p, b2));
            amp_[b] = c * a1 + minus_i * s * ph2 * a2;
            amp_[b2] = c * a2 + minus_i * s * ph1 * a1;
        }
    }

    /// Single-qubit Hadamard.
    void apply_h(int q) {
        const u64 bit = u64{1} << q;
        const double r = 1.0 / std::sqrt(2.0);
        for (u64 b = 0; b < amp_.size(); ++b) {
            if (b & bit) continue;
            const cplx a0 = amp_[b], a1 = amp_[b | bit];
            amp_[b] = r * (a0 + a1);
            amp_[b | bit] = r * (a0 - a1);
        }
    }

    /// Single-qubit S^dagger = diag(1, -i).
    void apply_sdg(int q) {
        const u64 bit = u64{1} << q;
        for (u64 b = 0; b < amp_.size(); ++b)
            if (b & bit) amp_[b] *= cplx{0.0, -1.0};
    }

    /// <this|P|this>
    cplx expectation(const PauliString& p) const {
        check(p);
        cplx s{};
        for (u64 b = 0; b < amp_.size(); ++b)
            s += std::conj(amp_[b ^ p.x_mask()]) * i_power(pauli_basis_phase(p, b)) * amp_[b];
        return s;
    }

private:
    void check(const PauliString& p) const {
        if (p.n_qubits() != n_) throw std::invalid_argument("Pauli string and state differ in qubit count");
    }

    int n_ = 0;
    std::vector<cplx> amp_;
};

inline StateVector prepare_basis_state(u64 bits, int n_qubits) {
    StateVector s(n_qubits);
    if (n_qubits < 64 && bits >= (u64{1} << n_qubits)) throw std::out_of_range("basis index out of range");
    s[0] = 0.0;
    s[bits] = 1.0;
    return s;
}

inline StateVector apply_pauli_rotation(StateVector s, const PauliString& p, double theta) {
    s.apply_pauli_rotation(p, theta);
    return s;
}

/**
 * Hamiltonian with terms bucketed by X mask; each bucket holds its
 * accumulated diagonal factor so one pass over the amplitudes evaluates the
 * whole bucket.
 */
class CompiledHamiltonian {
public:
    explicit CompiledHamiltonian(const QubitHamiltonian& h) : n_(h.n_qubits) {
        if (n_ > 20) throw std::invalid_argument("compiled Hamiltonian limited to 20 qubits");
        const u64 dim = u64{1} << n_;
        std::map<u64, std::vector<cplx>> buckets;
        for (const auto& t : h.terms) {
            auto& d = buckets[t.string.x_mask()];
            if (d.empty()) d.assign(dim, cplx{});
            for (u64 b = 0; b < dim; ++b) d[b] += t.coeff * i_power(pauli_basis_phase(t.string, b));
        }
        for (auto& [x, d] : buckets) buckets_.emplace_back(x, std::move(d));
    }

    int n_qubits() const noexcept { return n_; }
    std::size_t bucket_count() const noexcept { return buckets_.size(); }

    double expectation(const StateVector& s) const {
        if (s.n_qubits() != n_) throw std::invalid_argument("state and Hamiltonian differ in qubit count");
        cplx e{};
        const auto& a = s.amplitudes();
        for (const auto& [x, d] : buckets_)
            for (u64 b = 0; b < a.size(); ++b) e += std::conj(a[b ^ x]) * d[b] * a[b];
        return e.real();
    }

    /// H|s>
    std::vector<cplx> apply(const StateVector& s) const {
        const auto& a = s.amplitudes();
        std::vector<cplx> out(a.size());
        for (const auto& [x, d] : buckets_)
            for (u64 b = 0; b < a.size(); ++b) out[b ^ x] += d[b] * a[b];
        return out;
    }

private:
    int n_ = 0;
    std::vector<std::pair<u64, std::vector<cplx>>> buckets_;
};

/// sum_i w_i <s|P_i|s>; the imaginary residue is discarded.
inline double expectation(const StateVector& s, const QubitHamiltonian& h) {
    if (s.n_qubits() != h.n_qubits) throw std::invalid_argument("state and Hamiltonian differ in qubit count");
    cplx e{};
    for (const auto& t : h.terms) e += t.coeff * s.expectation(t.string);
    return e.real();
}

}  // namespace qsd
