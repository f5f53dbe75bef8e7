// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracles.hpp
 * @brief Test-only reference implementations, deliberately naive and
 *        independent of the library code paths they check.
 */
#pragma once

#include <qsd/fcidump.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

/// Apply a_mode (or a_mode^dagger) to an occupation-number basis state; sign 0 means the result vanishes.
inline std::pair<int, u64> ladder(u64 state, int mode, bool create) {
    const u64 bit = u64{1} << mode;
    const bool occ = state & bit;
    if (occ == create) return {0, state};
    int below = 0;
    for (int k = 0; k < mode; ++k) below += (state >> k) & 1u;
    return {(below % 2) ? -1 : 1, state ^ bit};
}

/**
 * Second-quantized electronic Hamiltonian over the whole Fock space of
 * 2*n_orb spin-orbitals (mode p: alpha orbital p, mode n_orb+p: beta),
 * built by applying ladder operators to occupation strings one by one.
 */
inline Eigen::MatrixXd fock_space_hamiltonian(const qsd::MolecularIntegrals& ints) {
    const int n = ints.n_orbitals();
    const int nm = 2 * n;
    const auto dim = static_cast<Eigen::Index>(u64{1} << nm);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (u64 ket = 0; ket < static_cast<u64>(dim); ++ket) {
        H(static_cast<Eigen::Index>(ket), static_cast<Eigen::Index>(ket)) += ints.core_energy();
        for (int sp = 0; sp < 2; ++sp)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    auto [s1, k1] = ladder(ket, q + sp * n, false);
                    if (!s1) continue;
                    auto [s2, k2] = ladder(k1, p + sp * n, true);
                    if (!s2) continue;
                    H(static_cast<Eigen::Index>(k2), static_cast<Eigen::Index>(ket)) += s1 * s2 * ints.h1(p, q);
                }
        // 1/2 sum (pq|rs) a+_p,s a+_r,t a_s,t a_q,s
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q)
                        for (int r = 0; r < n; ++r)
                            for (int x = 0; x < n; ++x) {
                                const double v = ints.eri(p, q, r, x);
                                if (v == 0.0) continue;
                                auto [a, k1] = ladder(ket, q + s * n, false);
                                if (!a) continue;
                                auto [b, k2] = ladder(k1, x + t * n, false);
                                if (!b) continue;
                                auto [c, k3] = ladder(k2, r + t * n, true);
                                if (!c) continue;
                                auto [d, k4] = ladder(k3, p + s * n, true);
                                if (!d) continue;
                                H(static_cast<Eigen::Index>(k4), static_cast<Eigen::Index>(ket)) += 0.5 * a * b * c * d * v;
                            }
    }
    return H;
}

/// Cyclic Jacobi rotations; returns eigenvalues ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, double tol = 1e-14, int max_sweeps = 100) {
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) < tol * std::max(1.0, a.norm())) break;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Random integrals with the full 8-fold symmetry and a positive-ish ERI diagonal.
inline qsd::MolecularIntegrals random_integrals(int n_orb, int na, int nb, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    qsd::MolecularIntegrals ints(n_orb, na, nb, u(rng));
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q <= p; ++q) ints.set_h1(p, q, p == q ? -2.0 + 0.5 * u(rng) : 0.3 * u(rng));
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q < n_orb; ++q)
            for (int r = 0; r < n_orb; ++r)
                for (int s = 0; s < n_orb; ++s) {
                    const auto c = qsd::MolecularIntegrals::canonical(p, q, r, s);
                    if (c != std::array<int, 4>{p, q, r, s}) continue;
                    ints.set_eri(p, q, r, s, (p == q && r == s ? 0.6 : 0.0) + 0.1 * u(rng));
                }
    return ints;
}

/// Coupon-collector expectation through the subset Markov chain:
/// E[S] = (1 + sum_{i not in S} p_i E[S+i]) / (1 - P(S)), E[full] = 0.
inline double coupon_markov_chain(const std::vector<double>& p) {
    const std::size_t m = p.size();
    const std::size_t full = (std::size_t{1} << m) - 1;
    std::vector<long double> e(full + 1, 0.0L);
    for (std::size_t s = full; s-- > 0;) {
        long double out = 0.0L, acc = 1.0L;
        for (std::size_t i = 0; i < m; ++i) {
            if (s & (std::size_t{1} << i)) continue;
            out += p[i];
            acc += p[i] * e[s | (std::size_t{1} << i)];
        }
        e[s] = acc / out;
    }
    return static_cast<double>(e[0]);
}

}  // namespace oracle
