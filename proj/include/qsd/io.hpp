// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON and CSV export of distributions, states, Hamiltonians, results.
 *
 * Bitstrings are written in display order: character q is qubit q, so the
 * alpha half comes first and reads left to right from orbital 0.
 */
#pragma once

#include "coupon.hpp"
#include "determinant.hpp"
#include "qsci.hpp"
#include "qubit_hamiltonian.hpp"
#include "sampling.hpp"
#include "sqd.hpp"
#include "statevector.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace qsd {

using json = nlohmann::json;

inline json to_json(const EmpiricalDistribution& d) {
    json counts = json::object();
    for (const auto& [bits, c] : d.counts) counts[mask_to_string(bits, d.n_qubits)] = c;
    return {{"n_qubits", d.n_qubits}, {"total", d.total}, {"counts", counts}};
}

inline EmpiricalDistribution distribution_from_json(const json& j) {
    EmpiricalDistribution d;
    d.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& [key, c] : j.at("counts").items()) {
        if (static_cast<int>(key.size()) != d.n_qubits) throw std::invalid_argument("bitstring length mismatch");
        d.add(mask_from_string(key), c.get<u64>());
    }
    if (j.contains("total") && j.at("total").get<u64>() != d.total)
        throw std::invalid_argument("counts do not sum to total");
    return d;
}

/// [[re, im], ...] in basis-index order.
inline json to_json(const StateVector& s) {
    json a = json::array();
    for (const auto& z : s.amplitudes()) a.push_back({z.real(), z.imag()});
    return {{"n_qubits", s.n_qubits()}, {"amplitudes", a}};
}

inline StateVector state_from_json(const json& j) {
    const int n = j.at("n_qubits").get<int>();
    std::vector<cplx> amps;
    for (const auto& z : j.at("amplitudes")) amps.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    return StateVector(n, std::move(amps));
}

inline json to_json(const QubitHamiltonian& h) {
    json terms = json::array();
    for (const auto& t : h.terms) terms.push_back({{"string", t.string.str()}, {"coeff", t.coeff}});
    return {{"n_qubits", h.n_qubits}, {"terms", terms}};
}

/// Coefficients are included up to `max_coefficients` determinants.
inline json to_json(const QsciResult& r, std::size_t max_coefficients = 4096) {
    json j{{"energy", r.energy},
           {"subspace_size", r.subspace_size},
           {"pool_sizes", {r.n_alpha_strings, r.n_beta_strings}}};
    if (r.subspace_size <= max_coefficients) {
        const int n = r.subspace.n_orbitals();
        json c = json::array();
        for (std::size_t i = 0; i < r.subspace.size(); ++i)
            c.push_back({{"det", to_string(r.subspace[i], n)}, {"c", r.coefficients[static_cast<Eigen::Index>(i)]}});
        j["coefficients"] = c;
    }
    return j;
}

inline json to_json(const SqdResult& r) {
    json its = json::array();
    for (const auto& it : r.iterations)
        its.push_back({{"batch_energies", it.batch_energies},
                       {"subspace_sizes", it.subspace_sizes},
                       {"pool_size", it.pool_size},
                       {"n_recovered", it.n_recovered},
                       {"n_new", it.n_new},
                       {"n_fallback", it.n_fallback}});
    return {{"energy", r.energy},         {"subspace_size", r.subspace_size}, {"iterations", its},
            {"occupations", r.occupations}, {"pool_size", r.pool_size},       {"converged", r.converged},
            {"occupation_fallback", r.occupation_fallback}};
}

inline std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream os;
    os.precision(10);
    os << "shots,mean_unique,stderr\n";
    for (const auto& c : curve) os << c.shots << ',' << c.mean_unique << ',' << c.std_error << '\n';
    return os.str();
}

}  // namespace qsd
