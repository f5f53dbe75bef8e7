// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file determinant.hpp
 * @brief Bitmask Slater determinants, Slater-Condon rules, subspace projection.
 *
 * Ordering convention ("blocked"): the creation string of a determinant lists
 * alpha spin-orbitals in ascending orbital index, then beta spin-orbitals in
 * ascending index.  Spin-orbital p (alpha) maps to qubit p and spin-orbital p
 * (beta) to qubit n_orb + p, so the qubit basis index of a determinant is
 * `alpha | beta << n_orb`.
 *
 * Display convention: a string of 2*n_orb characters; character q is the
 * occupation of qubit q.  For two orbitals "1001" is alpha in orbital 0 and
 * beta in orbital 1.
 */
#pragma once

#include "eigensolvers.hpp"
#include "fcidump.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsd {

using u64 = std::uint64_t;

struct Determinant {
    u64 alpha = 0;
    u64 beta = 0;

    friend constexpr bool operator==(const Determinant&, const Determinant&) = default;
    friend constexpr auto operator<=>(const Determinant&, const Determinant&) = default;

    int n_alpha() const noexcept { return std::popcount(alpha); }
    int n_beta() const noexcept { return std::popcount(beta); }

    bool valid_for(int n_alpha_target, int n_beta_target) const noexcept {
        return n_alpha() == n_alpha_target && n_beta() == n_beta_target;
    }

    /// Computational-basis index under the blocked qubit layout.
    u64 qubit_index(int n_orb) const noexcept { return alpha | (beta << n_orb); }

    static Determinant from_qubit_index(u64 index, int n_orb) noexcept {
        const u64 mask = low_mask(n_orb);
        return {index & mask, (index >> n_orb) & mask};
    }

    static constexpr u64 low_mask(int n) noexcept { return n >= 64 ? ~u64{0} : (u64{1} << n) - 1; }
};

/// Hartree-Fock determinant: lowest orbitals filled in each sector.
inline Determinant hartree_fock(int n_alpha, int n_beta) noexcept {
    return {Determinant::low_mask(n_alpha), Determinant::low_mask(n_beta)};
}

/// Characters 0..n-1 show bits 0..n-1 of `mask`.
inline std::string mask_to_string(u64 mask, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
        if ((mask >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

inline u64 mask_from_string(std::string_view s) {
    if (s.size() > 64) throw std::invalid_argument("bitstring longer than 64 characters");
    u64 m = 0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '1')
            m |= u64{1} << q;
        else if (s[q] != '0')
            throw std::invalid_argument("bitstring must contain only '0' and '1'");
    }
    return m;
}

inline std::string to_string(const Determinant& d, int n_orb) {
    return mask_to_string(d.alpha, n_orb) + mask_to_string(d.beta, n_orb);
}

inline Determinant determinant_from_string(std::string_view s) {
    if (s.size() % 2 != 0) throw std::invalid_argument("determinant string must have even length");
    const std::size_t n = s.size() / 2;
    return {mask_from_string(s.substr(0, n)), mask_from_string(s.substr(n))};
}

struct ExcitationDegree {
    int alpha = 0;
    int beta = 0;
    int total() const noexcept { return alpha + beta; }
};

inline ExcitationDegree excitation_degree(const Determinant& a, const Determinant& b) noexcept {
    return {std::popcount(a.alpha ^ b.alpha) / 2, std::popcount(a.beta ^ b.beta) / 2};
}

namespace detail {

/// Bits strictly between positions i and j.
inline u64 between_mask(int i, int j) noexcept {
    const int lo = std::min(i, j), hi = std::max(i, j);
    if (hi - lo < 2) return 0;
    return ((u64{1} << hi) - 1) & ~((u64{1} << (lo + 1)) - 1);
}

/// Sign of a_a^dagger a_i acting on the ordered string `mask` (i occupied, a empty).
inline double hop_sign(u64 mask, int i, int a) noexcept {
    return (std::popcount(mask & between_mask(i, a)) & 1) ? -1.0 : 1.0;
}

inline std::vector<int> occupied(u64 mask) {
    std::vector<int> occ;
    while (mask) {
        occ.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return occ;
}

inline double diagonal_element(const Determinant& d, const MolecularIntegrals& ints) {
    const auto oa = occupied(d.alpha);
    const auto ob = occupied(d.beta);
    double e = 0.0;
    for (int i : oa) e += ints.h1(i, i);
    for (int i : ob) e += ints.h1(i, i);
    auto same_spin = [&](const std::vector<int>& occ) {
        double s = 0.0;
        for (std::size_t x = 0; x < occ.size(); ++x)
            for (std::size_t y = x + 1; y < occ.size(); ++y) {
                const int i = occ[x], j = occ[y];
                s += ints.eri(i, i, j, j) - ints.eri(i, j, j, i);
            }
        return s;
    };
    e += same_spin(oa) + same_spin(ob);
    for (int i : oa)
        for (int j : ob) e += ints.eri(i, i, j, j);
    return e;
}

/// <bra|H|ket> for a single excitation i -> a inside one spin sector.
inline double single_element(u64 ket_same, u64 ket_other, int i, int a, const MolecularIntegrals& ints) {
    double v = ints.h1(a, i);
    for (u64 m = ket_same; m; m &= m - 1) {
        const int k = std::countr_zero(m);
        if (k == i) continue;
        v += ints.eri(a, i, k, k) - ints.eri(a, k, k, i);
    }
    for (u64 m = ket_other; m; m &= m - 1) {
        const int k = std::countr_zero(m);
        v += ints.eri(a, i, k, k);
    }
    return hop_sign(ket_same, i, a) * v;
}

/// Same-spin double: holes i<j, particles a<b, all in one sector of the ket.
inline double same_spin_double(u64 ket, int i, int j, int a, int b, const MolecularIntegrals& ints) {
    const double s1 = hop_sign(ket, i, a);
    const u64 mid = ket ^ (u64{1} << i) ^ (u64{1} << a);
    const double s2 = hop_sign(mid, j, b);
    return s1 * s2 * (ints.eri(a, i, b, j) - ints.eri(a, j, b, i));
}

}  // namespace detail

/**
 * Matrix element <bra|H|ket> of the electronic Hamiltonian, core energy
 * excluded.  Zero beyond double excitations.
 */
inline double slater_condon_element(const Determinant& bra, const Determinant& ket,
                                    const MolecularIntegrals& ints) {
    if (bra.n_alpha() != ket.n_alpha() || bra.n_beta() != ket.n_beta())
        throw std::invalid_argument("determinants belong to different particle-number sectors");
    const auto deg = excitation_degree(bra, ket);
    if (deg.total() > 2) return 0.0;
    if (deg.total() == 0) return detail::diagonal_element(ket, ints);

    const u64 ha = ket.alpha & ~bra.alpha, pa = bra.alpha & ~ket.alpha;
    const u64 hb = ket.beta & ~bra.beta, pb = bra.beta & ~ket.beta;

    if (deg.total() == 1) {
        if (deg.alpha == 1)
            return detail::single_element(ket.alpha, ket.beta, std::countr_zero(ha), std::countr_zero(pa), ints);
        return detail::single_element(ket.beta, ket.alpha, std::countr_zero(hb), std::countr_zero(pb), ints);
    }

    if (deg.alpha == 1 && deg.beta == 1) {
        const int i = std::countr_zero(ha), a = std::countr_zero(pa);
        const int j = std::countr_zero(hb), b = std::countr_zero(pb);
        return detail::hop_sign(ket.alpha, i, a) * detail::hop_sign(ket.beta, j, b) * ints.eri(a, i, b, j);
    }
    const bool in_alpha = deg.alpha == 2;
    const u64 holes = in_alpha ? ha : hb;
    const u64 parts = in_alpha ? pa : pb;
    const int i = std::countr_zero(holes), j = 63 - std::countl_zero(holes);
    const int a = std::countr_zero(parts), b = 63 - std::countl_zero(parts);
    return detail::same_spin_double(in_alpha ? ket.alpha : ket.beta, i, j, a, b, ints);
}

/// Ordered, duplicate-free determinant list (lexicographic on (alpha, beta)).
class Subspace {
public:
    Subspace() = default;

    Subspace(int n_orb, std::vector<Determinant> dets) : n_orb_(n_orb), dets_(std::move(dets)) {
        std::sort(dets_.begin(), dets_.end());
        dets_.erase(std::unique(dets_.begin(), dets_.end()), dets_.end());
        const u64 mask = Determinant::low_mask(n_orb);
        for (const auto& d : dets_)
            if ((d.alpha & ~mask) || (d.beta & ~mask))
                throw std::invalid_argument("determinant occupies orbitals beyond n_orb");
    }

    int n_orbitals() const noexcept { return n_orb_; }
    std::size_t size() const noexcept { return dets_.size(); }
    bool empty() const noexcept { return dets_.empty(); }
    const Determinant& operator[](std::size_t i) const noexcept { return dets_[i]; }
    const std::vector<Determinant>& determinants() const noexcept { return dets_; }
    auto begin() const noexcept { return dets_.begin(); }
    auto end() const noexcept { return dets_.end(); }

    bool contains(const Determinant& d) const { return std::binary_search(dets_.begin(), dets_.end(), d); }

    /// Position of d, or size() when absent.
    std::size_t index_of(const Determinant& d) const {
        auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
        return (it != dets_.end() && *it == d) ? static_cast<std::size_t>(it - dets_.begin()) : dets_.size();
    }

private:
    int n_orb_ = 0;
    std::vector<Determinant> dets_;
};

/// All n-bit masks with popcount k, ascending.
inline std::vector<u64> combinations(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("popcount larger than bit count");
    std::vector<u64> out;
    if (k == 0) return {0};
    u64 v = Determinant::low_mask(k);
    const u64 limit = u64{1} << n;
    while (v < limit) {
        out.push_back(v);
        const u64 t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

inline Subspace enumerate_fci_space(int n_orb, int n_alpha, int n_beta) {
    if (n_orb < 1 || n_orb > 32) throw std::invalid_argument("n_orb must lie in [1, 32]");
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orb || n_beta > n_orb)
        throw std::invalid_argument("sector larger than orbital count");
    const auto as = combinations(n_orb, n_alpha);
    const auto bs = combinations(n_orb, n_beta);
    std::vector<Determinant> dets;
    dets.reserve(as.size() * bs.size());
    for (u64 a : as)
        for (u64 b : bs) dets.push_back({a, b});
    return Subspace(n_orb, std::move(dets));
}

/**
 * H restricted to a subspace.  Dense storage below kSparseThreshold,
 * upper-triangle coordinate storage (including the diagonal) above.
 */
class ProjectedHamiltonian {
public:
    static constexpr std::size_t kSparseThreshold = 512;

    struct Entry {
        std::uint32_t row;
        std::uint32_t col;
        double value;
    };

    std::size_t dim() const noexcept { return dim_; }
    bool is_dense() const noexcept { return dense_; }
    const Eigen::VectorXd& diagonal() const noexcept { return diag_; }
    const std::vector<Entry>& entries() const noexcept { return coo_; }

    double operator()(std::size_t i, std::size_t j) const {
        if (dense_) return mat_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (i > j) std::swap(i, j);
        for (const auto& e : coo_)
            if (e.row == i && e.col == j) return e.value;
        return 0.0;
    }

    Eigen::MatrixXd to_dense() const {
        if (dense_) return mat_;
        const auto n = static_cast<Eigen::Index>(dim_);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (const auto& e : coo_) {
            m(e.row, e.col) = e.value;
            m(e.col, e.row) = e.value;
        }
        return m;
    }

    SymmetricOperator to_operator() const {
        if (dense_) return SymmetricOperator(mat_);
        return SymmetricOperator(
            dim_,
            [coo = coo_](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
                y.setZero();
                for (const auto& e : coo) {
                    y[e.row] += e.value * x[e.col];
                    if (e.row != e.col) y[e.col] += e.value * x[e.row];
                }
            },
            diag_);
    }

private:
    friend ProjectedHamiltonian project_hamiltonian(const Subspace&, const MolecularIntegrals&);

    std::size_t dim_ = 0;
    bool dense_ = true;
    Eigen::MatrixXd mat_;
    Eigen::VectorXd diag_;
    std::vector<Entry> coo_;
};

inline ProjectedHamiltonian project_hamiltonian(const Subspace& s, const MolecularIntegrals& ints) {
    if (s.empty()) throw std::invalid_argument("cannot project onto an empty subspace");
    const int na = s[0].n_alpha(), nb = s[0].n_beta();
    for (const auto& d : s)
        if (!d.valid_for(na, nb)) throw std::invalid_argument("subspace mixes particle-number sectors");

    ProjectedHamiltonian h;
    const std::size_t n = s.size();
    h.dim_ = n;
    h.dense_ = n < ProjectedHamiltonian::kSparseThreshold;
    h.diag_.resize(static_cast<Eigen::Index>(n));
    if (h.dense_) h.mat_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (excitation_degree(s[i], s[j]).total() > 2) continue;
            const double v = slater_condon_element(s[i], s[j], ints);
            if (i == j) h.diag_[static_cast<Eigen::Index>(i)] = v;
            if (h.dense_) {
                h.mat_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                h.mat_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            } else if (v != 0.0 || i == j) {
                h.coo_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
            }
        }
    }
    return h;
}

}  // namespace qsd
