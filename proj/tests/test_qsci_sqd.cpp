// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <qsd/ground_state.hpp>
#include <qsd/qsci.hpp>
#include <qsd/sqd.hpp>

#include "support.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace qsd;

namespace {

std::vector<u64> masks(std::initializer_list<const char*> strings) {
    std::vector<u64> out;
    for (const char* s : strings) out.push_back(mask_from_string(s));
    return out;
}

std::set<std::string> as_strings(const Subspace& s) {
    std::set<std::string> out;
    for (const auto& d : s) out.insert(to_string(d, s.n_orbitals()));
    return out;
}

std::vector<u64> random_pool(const std::vector<u64>& all, std::mt19937_64& rng) {
    std::vector<u64> v = all;
    std::shuffle(v.begin(), v.end(), rng);
    std::uniform_int_distribution<std::size_t> k(1, v.size());
    v.resize(k(rng));
    return v;
}

}  // namespace

TEST_CASE("QSCI cross product", "[qsci]") {
    const auto s = qsci_subspace(2, masks({"10"}), masks({"10", "01"}));
    CHECK(as_strings(s) == std::set<std::string>{"1010", "1001"});
    CHECK(qsci_subspace(2, masks({"01"}), masks({"10"})).size() == 1);
    const auto all = combinations(6, 4);
    CHECK(qsci_subspace(6, all, all).size() == 225);
    CHECK_THROWS_AS(qsci_subspace(2, {}, masks({"10"})), std::invalid_argument);
    CHECK_THROWS_AS(qsci_subspace(3, masks({"100", "110"}), masks({"100"})), std::invalid_argument);
}

TEST_CASE("SQD merges the spin pools", "[sqd]") {
    const auto s = sqd_subspace(2, masks({"10"}), masks({"10", "01"}), 1, 1);
    CHECK(as_strings(s) == std::set<std::string>{"1010", "1001", "0110", "0101"});

    const auto u = masks({"1100", "1010", "0011"});
    CHECK(as_strings(sqd_subspace(4, u, u, 2, 2)) == as_strings(qsci_subspace(4, u, u)));
    CHECK(sqd_subspace(4, u, masks({"0101"}), 2, 2).size() == 16);
    CHECK_THROWS_AS(sqd_subspace(4, {}, {}, 2, 2), std::invalid_argument);
}

TEST_CASE("QSCI energies on the water fixture", "[qsci]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const auto hf = qsci_energy(Subspace(6, {hartree_fock(4, 4)}), ints);
    CHECK(std::abs(hf.energy - testing::kHfWater) < 1e-3);
    CHECK(hf.subspace_size == 1);

    const auto all = combinations(6, 4);
    const auto full = qsci_energy(qsci_subspace(6, all, all), ints);
    CHECK(std::abs(full.energy - testing::kFciWater) < 1e-3);
    CHECK(full.subspace_size == 225);
    CHECK(full.n_alpha_strings == 15);
    CHECK(full.n_beta_strings == 15);
    CHECK(std::abs(full.coefficients.norm() - 1.0) < 1e-10);
    CHECK(std::abs(full.energy - fci_ground_state(ints).energy) < 1e-10);
}

TEST_CASE("QSCI from ideal samples of the water ground state", "[qsci]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const auto fci = fci_ground_state(ints);
    int accurate = 0;
    for (u64 seed = 0; seed < 10; ++seed) {
        const auto r = qsci_from_samples(sample_bitstrings(fci.state, 10'000, std::nullopt, seed), ints);
        CHECK(r.energy >= fci.energy - 1e-9);
        CHECK(r.subspace_size == r.n_alpha_strings * r.n_beta_strings);
        accurate += std::abs(r.energy - fci.energy) < 1.6e-3;
    }
    CHECK(accurate >= 9);
}

TEST_CASE("raw top-R selection", "[qsci]") {
    EmpiricalDistribution d;
    d.n_qubits = 4;
    d.add(mask_from_string("1010"), 5);
    d.add(mask_from_string("0101"), 3);
    d.add(mask_from_string("1001"), 3);
    d.add(mask_from_string("1100"), 9);  // invalid for (1, 1)
    const auto s = qsci_top_r_subspace(d, 2, 1, 1, 2);
    REQUIRE(s.size() == 2);
    CHECK(s.contains(determinant_from_string("1010")));
    CHECK(qsci_top_r_subspace(d, 2, 1, 1, 10).size() == 3);
}

TEST_CASE("QSCI and SQD are variational and ordered on random pools", "[qsci][sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const double e_fci = fci_ground_state(ints).energy;
    const auto all = combinations(6, 4);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ua = random_pool(all, rng), ub = random_pool(all, rng);
        const auto q = qsci_energy(qsci_subspace(6, ua, ub), ints);
        const auto s = qsci_energy(sqd_subspace(6, ua, ub, 4, 4), ints);
        CHECK(q.energy >= e_fci - 1e-9);
        CHECK(s.energy >= e_fci - 1e-9);
        CHECK(s.energy <= q.energy + 1e-10);

        // Enlarging a pool never raises the energy.
        auto bigger = ua;
        bigger.push_back(all[static_cast<std::size_t>(trial) % all.size()]);
        std::sort(bigger.begin(), bigger.end());
        bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
        CHECK(qsci_energy(qsci_subspace(6, bigger, ub), ints).energy <= q.energy + 1e-10);
    }
}

TEST_CASE("average occupations", "[sqd]") {
    const Subspace hf(3, {hartree_fock(2, 1)});
    CHECK(average_occupations(Eigen::VectorXd::Ones(1), hf, 3) == std::vector<double>{1, 1, 0, 1, 0, 0});

    const Subspace pair(2, {determinant_from_string("1001"), determinant_from_string("0110")});
    for (double o : average_occupations(Eigen::Vector2d(std::sqrt(0.5), -std::sqrt(0.5)), pair, 2))
        CHECK(o == Catch::Approx(0.5));
    CHECK_THROWS_AS(average_occupations(Eigen::VectorXd::Ones(3), pair, 2), std::invalid_argument);

    const auto fci = fci_ground_state(testing::load("h2o_sto3g_8e6o.fcidump"));
    const auto occ = average_occupations(fci.coefficients, fci.space, 6);
    CHECK(std::abs(std::accumulate(occ.begin(), occ.begin() + 6, 0.0) - 4.0) < 1e-10);
    CHECK(std::abs(std::accumulate(occ.begin() + 6, occ.end(), 0.0) - 4.0) < 1e-10);
    for (int p = 0; p < 4; ++p) {
        CHECK(occ[static_cast<std::size_t>(p)] > 0.9);
        CHECK(occ[static_cast<std::size_t>(6 + p)] > 0.9);
    }
}

TEST_CASE("configuration recovery", "[sqd]") {
    const std::vector<double> occ{1, 1, 0, 0, 1, 1, 0, 0};
    const u64 valid = Determinant{0b0011, 0b0011}.qubit_index(4);
    CHECK(recover_configurations({valid}, occ, 4, 2, 2, 1).determinants[0].qubit_index(4) == valid);

    const u64 extra = Determinant{0b0111, 0b0011}.qubit_index(4);
    const u64 missing = Determinant{0b0001, 0b0011}.qubit_index(4);
    for (u64 seed = 0; seed < 20; ++seed) {
        const auto r = recover_configurations({extra, missing}, occ, 4, 2, 2, seed);
        CHECK(r.determinants[0] == Determinant{0b0011, 0b0011});
        CHECK(r.determinants[1] == Determinant{0b0011, 0b0011});
        CHECK(r.n_fallback == 0);
    }

    // Removing from a string whose bits all have occupation one: zero weights, uniform fallback.
    const auto fb = recover_configurations({Determinant{0b0111, 0b0011}.qubit_index(4)}, {1, 1, 1, 0, 1, 1, 0, 0}, 4, 2, 2, 3);
    CHECK(fb.n_fallback == 1);
    CHECK(fb.determinants[0].valid_for(2, 2));

    CHECK_THROWS_AS(recover_configurations({valid}, {1, 1}, 4, 2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(recover_configurations({valid}, {1, 1, 0, 0, 1, 1, 0, 2}, 4, 2, 2, 0), std::invalid_argument);
}

TEST_CASE("recovery repairs noisy water samples", "[sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const auto fci = fci_ground_state(ints);
    const auto occ = average_occupations(fci.coefficients, fci.space, 6);
    const auto d = sample_bitstrings(fci.state, 1000, NoiseModel{0.01, 0.01}, 12);
    const auto filtered = symmetry_filter(d, 6, 4, 4);
    std::vector<u64> invalid;
    std::set<Determinant> pool;
    for (const auto& [bits, c] : d.counts) {
        const auto det = Determinant::from_qubit_index(bits, 6);
        if (det.valid_for(4, 4))
            pool.insert(det);
        else
            invalid.push_back(bits);
    }
    REQUIRE(pool.size() == filtered.valid.unique());
    const auto r = recover_configurations(invalid, occ, 6, 4, 4, 5);
    std::size_t ok = 0;
    for (const auto& det : r.determinants) {
        ok += det.valid_for(4, 4);
        pool.insert(det);
    }
    CHECK(ok >= invalid.size() * 99 / 100);
    CHECK(pool.size() > filtered.valid.unique());
    CHECK(recover_configurations(invalid, occ, 6, 4, 4, 5).determinants == r.determinants);
}

TEST_CASE("SQD on a Hartree-Fock-only distribution", "[sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    EmpiricalDistribution d;
    d.n_qubits = 12;
    d.add(hartree_fock(4, 4).qubit_index(6), 500);
    const auto r = sqd_run(d, ints, SqdConfig{});
    CHECK(r.iterations.size() == 1);
    CHECK(r.converged);
    CHECK(r.subspace_size == 1);
    CHECK(std::abs(r.energy - testing::kHfWater) < 1e-3);
    CHECK(r.occupations == std::vector<double>{1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0});
}

TEST_CASE("SQD loop invariants on noisy samples", "[sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const auto fci = fci_ground_state(ints);
    SqdConfig cfg;
    cfg.seed = 4;
    for (u64 seed : {1u, 2u, 3u}) {
        const auto d = sample_bitstrings(fci.state, 300, NoiseModel{0.02, 0.02}, seed);
        const auto r = sqd_run(d, ints, cfg);
        REQUIRE_FALSE(r.iterations.empty());
        CHECK(static_cast<int>(r.iterations.size()) <= cfg.max_iterations);
        for (std::size_t i = 1; i < r.iterations.size(); ++i) CHECK(r.iterations[i].pool_size >= r.iterations[i - 1].pool_size);
        CHECK(r.pool_size >= r.iterations.back().pool_size);
        for (const auto& it : r.iterations)
            for (double e : it.batch_energies) CHECK(r.energy <= e);
        CHECK(r.energy >= fci.energy - 1e-9);
        const auto q = qsci_from_samples(d, ints);
        CHECK(r.energy <= q.energy + 1e-10);
        CHECK(sqd_run(d, ints, cfg).energy == r.energy);
    }
}

TEST_CASE("SQD reaches chemical accuracy from ideal samples", "[sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    const auto fci = fci_ground_state(ints);
    SqdConfig cfg;
    cfg.n_batches = 1;
    cfg.batch_size = 300;
    const auto r = sqd_run(sample_bitstrings(fci.state, 10'000, std::nullopt, 21), ints, cfg);
    CHECK(std::abs(r.energy - fci.energy) < 1.6e-3);
}

TEST_CASE("SQD seeds from recovery when no sample is valid", "[sqd]") {
    const auto ints = testing::load("h2o_sto3g_8e6o.fcidump");
    EmpiricalDistribution d;
    d.n_qubits = 12;
    d.add(mask_from_string("111000111100"), 3);
    d.add(mask_from_string("111110111100"), 2);
    const auto r = sqd_run(d, ints, SqdConfig{});
    CHECK(r.occupation_fallback);
    CHECK(std::isfinite(r.energy));

    EmpiricalDistribution none;
    none.n_qubits = 12;
    CHECK_THROWS_AS(sqd_run(none, ints, SqdConfig{}), std::invalid_argument);
    SqdConfig bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(sqd_run(d, ints, bad), std::invalid_argument);
}
