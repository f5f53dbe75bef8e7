// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pauli.hpp
 * @brief Symplectic Pauli strings and their products.
 *
 * A string is stored as (x, z) bitmasks: X on qubit q iff only the x bit is
 * set, Z iff only the z bit, Y iff both.  As an operator the string equals
 * i^{|x & z|} X^x Z^z.  Text form lists qubits 0..n-1 left to right.
 */
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsd {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

class PauliString {
public:
    PauliString() = default;

    PauliString(int n_qubits, u64 x, u64 z) : n_(n_qubits), x_(x), z_(z) {
        if (n_qubits < 0 || n_qubits > 64) throw std::invalid_argument("n_qubits must lie in [0, 64]");
        const u64 mask = n_qubits == 64 ? ~u64{0} : (u64{1} << n_qubits) - 1;
        if ((x & ~mask) || (z & ~mask)) throw std::invalid_argument("Pauli masks exceed n_qubits");
    }

    static PauliString identity(int n_qubits) { return {n_qubits, 0, 0}; }

    /// Single-qubit letter at qubit q, padded with identities.
    static PauliString single(int n_qubits, int q, char letter) {
        if (q < 0 || q >= n_qubits) throw std::out_of_range("qubit index out of range");
        const u64 b = u64{1} << q;
        switch (letter) {
            case 'I': return {n_qubits, 0, 0};
            case 'X': return {n_qubits, b, 0};
            case 'Y': return {n_qubits, b, b};
            case 'Z': return {n_qubits, 0, b};
            default: throw std::invalid_argument("Pauli letter must be one of IXYZ");
        }
    }

    static PauliString parse(std::string_view text) {
        PauliString p(static_cast<int>(text.size()), 0, 0);
        for (std::size_t q = 0; q < text.size(); ++q) {
            const u64 b = u64{1} << q;
            switch (text[q]) {
                case 'I': break;
                case 'X': p.x_ |= b; break;
                case 'Y': p.x_ |= b; p.z_ |= b; break;
                case 'Z': p.z_ |= b; break;
                default: throw std::invalid_argument("Pauli letter must be one of IXYZ");
            }
        }
        return p;
    }

    int n_qubits() const noexcept { return n_; }
    u64 x_mask() const noexcept { return x_; }
    u64 z_mask() const noexcept { return z_; }
    u64 support() const noexcept { return x_ | z_; }
    int weight() const noexcept { return std::popcount(x_ | z_); }
    bool is_identity() const noexcept { return (x_ | z_) == 0; }
    bool is_diagonal() const noexcept { return x_ == 0; }

    char letter(int q) const noexcept {
        const bool xb = (x_ >> q) & 1u, zb = (z_ >> q) & 1u;
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }

    std::string str() const {
        std::string s(static_cast<std::size_t>(n_), 'I');
        for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
        return s;
    }

    /// Rank of the letter used by the canonical order: I < X < Y < Z.
    int letter_rank(int q) const noexcept {
        switch (letter(q)) {
            case 'X': return 1;
            case 'Y': return 2;
            case 'Z': return 3;
            default: return 0;
        }
    }

    friend bool operator==(const PauliString& a, const PauliString& b) noexcept {
        return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
    }

    /// Canonical order: lexicographic on the text form with I < X < Y < Z.
    friend bool canonical_less(const PauliString& a, const PauliString& b) noexcept {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (int q = 0; q < a.n_; ++q) {
            const int ra = a.letter_rank(q), rb = b.letter_rank(q);
            if (ra != rb) return ra < rb;
        }
        return false;
    }

    /// Strings commute iff they anticommute on an even number of qubits.
    friend bool commutes(const PauliString& a, const PauliString& b) noexcept {
        return (std::popcount((a.x_ & b.z_) ^ (a.z_ & b.x_)) & 1) == 0;
    }

    /// On every qubit the letters agree or at least one is I.
    friend bool qubitwise_commutes(const PauliString& a, const PauliString& b) noexcept {
        const u64 overlap = a.support() & b.support();
        return (((a.x_ ^ b.x_) | (a.z_ ^ b.z_)) & overlap) == 0;
    }

private:
    int n_ = 0;
    u64 x_ = 0;
    u64 z_ = 0;
};

struct PauliStringHash {
    std::size_t operator()(const PauliString& p) const noexcept {
        const u64 h = p.x_mask() * 0x9E3779B97F4A7C15ULL ^ (p.z_mask() + 0x632BE59BD9B4E019ULL + (p.x_mask() << 6));
        return std::hash<u64>{}(h ^ static_cast<u64>(p.n_qubits()));
    }
};

/// i^k for k mod 4.
inline cplx i_power(int k) noexcept {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

struct PauliProduct {
    int phase_power = 0;  ///< product phase is i^phase_power, in {0,1,2,3}
    PauliString string;
    cplx phase() const noexcept { return i_power(phase_power); }
};

/// a * b = i^k P with P = (x_a ^ x_b, z_a ^ z_b).
inline PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("Pauli strings differ in size");
    const u64 x = a.x_mask() ^ b.x_mask();
    const u64 z = a.z_mask() ^ b.z_mask();
    const int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
                  2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
    return {((k % 4) + 4) % 4, PauliString(a.n_qubits(), x, z)};
}

/**
 * Action on a computational basis state: P|b> = phase * |b ^ x>.
 * Returns the phase as a power of i.
 */
inline int pauli_basis_phase(const PauliString& p, u64 basis) noexcept {
    return std::popcount(p.x_mask() & p.z_mask()) + 2 * std::popcount(p.z_mask() & basis);
}

}  // namespace qsd
