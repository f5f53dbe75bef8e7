// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file vqe.hpp
 * @brief UCCSD-type excitation ansatz and a sequential analytic optimizer.
 *
 * Each generator is G = i(T - T^dagger) for a fermionic excitation T,
 * mapped through Jordan-Wigner to a real Pauli sum, and enters the circuit
 * as exp(-i theta G).  Because G has spectrum {-1, 0, 1}, the energy as a
 * function of one parameter is a trigonometric polynomial of degree two;
 * the optimizer samples it at five equidistant angles, reconstructs it
 * exactly and jumps to its global minimum.
 */
#pragma once

#include "determinant.hpp"
#include "qubit_hamiltonian.hpp"
#include "statevector.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qsd {

struct Excitation {
    std::vector<int> holes;      ///< annihilated spin-orbitals (qubit indices)
    std::vector<int> particles;  ///< created spin-orbitals
    std::vector<PauliTerm> strings;
    bool commuting = true;  ///< false: the exponential is a first-order Trotter product
};

struct Ansatz {
    int n_qubits = 0;
    std::vector<Excitation> generators;
    std::vector<double> theta;
};

namespace detail {

/// i(T - T^dagger) with T = a_p1^+ ... a_pk^+ a_hk ... a_h1.
inline std::vector<PauliTerm> excitation_generator(const std::vector<int>& holes, const std::vector<int>& particles,
                                                   int nq) {
    PauliSum t(nq);
    t.add(PauliString::identity(nq), 1.0);
    for (int p : particles) t = t * jw_ladder_sum(p, nq, Ladder::Create);
    for (auto it = holes.rbegin(); it != holes.rend(); ++it) t = t * jw_ladder_sum(*it, nq, Ladder::Annihilate);
    // T^dagger = a_h1^+ ... a_hk^+ a_pk ... a_p1
    PauliSum td(nq);
    td.add(PauliString::identity(nq), 1.0);
    for (int h : holes) td = td * jw_ladder_sum(h, nq, Ladder::Create);
    for (auto it = particles.rbegin(); it != particles.rend(); ++it)
        td = td * jw_ladder_sum(*it, nq, Ladder::Annihilate);
    PauliSum g = t;
    g += td.scaled(-1.0);
    const auto h = to_qubit_hamiltonian(g.scaled(cplx{0.0, 1.0}), 1e-14);
    return h.terms;
}

}  // namespace detail

/**
 * Spin-preserving singles and doubles out of the HF determinant:
 * alpha singles, beta singles, alpha-alpha doubles, beta-beta doubles,
 * alpha-beta doubles, each block in ascending index order.  theta = 0.
 */
inline Ansatz uccsd_excitations(int n_orb, int n_alpha, int n_beta) {
    if (n_orb < 1 || n_alpha < 0 || n_beta < 0 || n_alpha > n_orb || n_beta > n_orb)
        throw std::invalid_argument("invalid sector");
    const int nq = 2 * n_orb;
    Ansatz a;
    a.n_qubits = nq;
    auto occ = [&](int spin) {
        std::vector<int> v;
        for (int p = 0; p < (spin ? n_beta : n_alpha); ++p) v.push_back(p + spin * n_orb);
        return v;
    };
    auto vir = [&](int spin) {
        std::vector<int> v;
        for (int p = spin ? n_beta : n_alpha; p < n_orb; ++p) v.push_back(p + spin * n_orb);
        return v;
    };
    auto push = [&](std::vector<int> holes, std::vector<int> parts) {
        Excitation e{holes, parts, detail::excitation_generator(holes, parts, nq), true};
        for (std::size_t x = 0; x < e.strings.size(); ++x)
            for (std::size_t y = x + 1; y < e.strings.size(); ++y)
                if (!commutes(e.strings[x].string, e.strings[y].string)) e.commuting = false;
        a.generators.push_back(std::move(e));
    };
    for (int s = 0; s < 2; ++s)
        for (int i : occ(s))
            for (int p : vir(s)) push({i}, {p});
    for (int s = 0; s < 2; ++s) {
        const auto o = occ(s), v = vir(s);
        for (std::size_t i = 0; i < o.size(); ++i)
            for (std::size_t j = i + 1; j < o.size(); ++j)
                for (std::size_t p = 0; p < v.size(); ++p)
                    for (std::size_t q = p + 1; q < v.size(); ++q) push({o[i], o[j]}, {v[p], v[q]});
    }
    for (int i : occ(0))
        for (int j : occ(1))
            for (int p : vir(0))
                for (int q : vir(1)) push({i, j}, {p, q});
    a.theta.assign(a.generators.size(), 0.0);
    return a;
}

/// exp(-i theta G) applied as a product of per-string rotations.
inline void apply_generator(StateVector& s, const Excitation& g, double theta) {
    for (const auto& t : g.strings) s.apply_pauli_rotation(t.string, theta * t.coeff);
}

inline StateVector apply_ansatz(StateVector s, const Ansatz& a, std::size_t first = 0) {
    if (a.theta.size() != a.generators.size()) throw std::invalid_argument("one parameter per generator");
    for (std::size_t k = first; k < a.generators.size(); ++k) apply_generator(s, a.generators[k], a.theta[k]);
    return s;
}

struct VqeResult {
    std::vector<double> theta;
    double energy = 0.0;
    std::vector<double> trace;  ///< energy after each sweep (entry 0: initial)
    int sweeps = 0;
    bool converged = false;
};

namespace detail {

/// Coefficients of a0 + a1 cos x + b1 sin x + a2 cos 2x + b2 sin 2x from samples at x_j = 2 pi j / 5.
struct TrigPoly2 {
    double a0, a1, b1, a2, b2;

    static TrigPoly2 fit(const std::array<double, 5>& e) {
        TrigPoly2 t{0, 0, 0, 0, 0};
        for (int j = 0; j < 5; ++j) {
            const double x = 2.0 * std::numbers::pi * j / 5.0;
            t.a0 += e[static_cast<std::size_t>(j)] / 5.0;
            t.a1 += 0.4 * e[static_cast<std::size_t>(j)] * std::cos(x);
            t.b1 += 0.4 * e[static_cast<std::size_t>(j)] * std::sin(x);
            t.a2 += 0.4 * e[static_cast<std::size_t>(j)] * std::cos(2 * x);
            t.b2 += 0.4 * e[static_cast<std::size_t>(j)] * std::sin(2 * x);
        }
        return t;
    }
    double operator()(double x) const {
        return a0 + a1 * std::cos(x) + b1 * std::sin(x) + a2 * std::cos(2 * x) + b2 * std::sin(2 * x);
    }
    double d1(double x) const {
        return -a1 * std::sin(x) + b1 * std::cos(x) - 2 * a2 * std::sin(2 * x) + 2 * b2 * std::cos(2 * x);
    }
    double d2(double x) const {
        return -a1 * std::cos(x) - b1 * std::sin(x) - 4 * a2 * std::cos(2 * x) - 4 * b2 * std::sin(2 * x);
    }

    /// Global minimizer on (-pi, pi].
    double argmin() const {
        constexpr int kGrid = 720;
        double best = 0.0, fbest = (*this)(0.0);
        for (int k = 1; k < kGrid; ++k) {
            const double x = -std::numbers::pi + 2.0 * std::numbers::pi * k / kGrid;
            if (const double f = (*this)(x); f < fbest) {
                fbest = f;
                best = x;
            }
        }
        for (int it = 0; it < 20; ++it) {
            const double h = d2(best);
            if (h <= 0.0) break;
            const double step = d1(best) / h;
            const double cand = best - step;
            if ((*this)(cand) > fbest) break;
            best = cand;
            fbest = (*this)(cand);
            if (std::abs(step) < 1e-15) break;
        }
        return best;
    }
};

}  // namespace detail

/**
 * Sequential single-parameter minimization.  Stops after `sweeps` sweeps or
 * when one sweep lowers the energy by less than `tol`.
 */
inline VqeResult vqe_optimize(const QubitHamiltonian& h, Ansatz a, const StateVector& reference, int sweeps = 3,
                              double tol = 1e-8) {
    if (sweeps < 1) throw std::invalid_argument("need at least one sweep");
    if (reference.n_qubits() != h.n_qubits || a.n_qubits != h.n_qubits)
        throw std::invalid_argument("ansatz, reference and Hamiltonian differ in qubit count");
    const CompiledHamiltonian ch(h);
    const std::size_t K = a.generators.size();

    VqeResult r;
    double current = ch.expectation(apply_ansatz(reference, a));
    r.trace.push_back(current);
    for (int sweep = 1; sweep <= sweeps; ++sweep) {
        const double start = current;
        StateVector prefix = reference;  // generators < k applied
        for (std::size_t k = 0; k < K; ++k) {
            const double theta0 = a.theta[k];
            std::array<double, 5> e{};
            e[0] = current;
            for (int j = 1; j < 5; ++j) {
                StateVector s = prefix;
                apply_generator(s, a.generators[k], theta0 + 2.0 * std::numbers::pi * j / 5.0);
                for (std::size_t m = k + 1; m < K; ++m) apply_generator(s, a.generators[m], a.theta[m]);
                e[static_cast<std::size_t>(j)] = ch.expectation(s);
            }
            const auto poly = detail::TrigPoly2::fit(e);
            const double shift = poly.argmin();
            if (poly(shift) < current) {
                a.theta[k] = std::remainder(theta0 + shift, 2.0 * std::numbers::pi);
                current = poly(shift);
            }
            apply_generator(prefix, a.generators[k], a.theta[k]);
        }
        current = ch.expectation(prefix);
        r.trace.push_back(current);
        r.sweeps = sweep;
        if (start - current < tol) {
            r.converged = true;
            break;
        }
    }
    r.theta = a.theta;
    r.energy = current;
    return r;
}

}  // namespace qsd
