// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <qsd/coupon.hpp>
#include <qsd/ground_state.hpp>

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <random>

using namespace qsd;

namespace {

AmplitudeDistribution random_distribution(std::size_t m, std::mt19937_64& rng, double skew = 1.0) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(m);
    double s = 0.0;
    for (auto& x : p) s += (x = std::pow(e(rng), skew) + 1e-6);
    for (auto& x : p) x /= s;
    return AmplitudeDistribution(p);
}

double harmonic_cost(std::size_t m) {
    double h = 0.0;
    for (std::size_t k = 1; k <= m; ++k) h += 1.0 / static_cast<double>(k);
    return static_cast<double>(m) * h;
}

}  // namespace

TEST_CASE("distribution validation", "[coupon]") {
    CHECK_THROWS_AS(AmplitudeDistribution({}), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeDistribution({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeDistribution::skewed(1.0, 4), std::invalid_argument);
    const auto s = AmplitudeDistribution::skewed(0.972, 50);
    CHECK(s.size() == 50);
    CHECK(s.max() == 0.972);
}

TEST_CASE("single outcome", "[coupon]") {
    const AmplitudeDistribution one({1.0});
    CHECK(expected_shots_exact(one) == 1.0);
    CHECK(expected_shots_integral(one) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(expected_shots_uniform(1) == 1.0);
    const auto st = simulate_discovery(one, 100, 1);
    CHECK(st.mean == 1.0);
    CHECK(st.std_error == 0.0);
    CHECK_THROWS_AS(expected_shots_lower_bound(one), std::invalid_argument);
}

TEST_CASE("uniform closed form", "[coupon]") {
    CHECK(expected_shots_uniform(2) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(expected_shots_uniform(3) == Catch::Approx(5.5).epsilon(1e-15));
    CHECK(expected_shots_exact(AmplitudeDistribution::uniform(3)) == Catch::Approx(5.5).epsilon(1e-14));
    CHECK(expected_shots_integral(AmplitudeDistribution::uniform(50)) == Catch::Approx(harmonic_cost(50)).epsilon(1e-9));
    CHECK(expected_shots_uniform(50) == Catch::Approx(224.96).margin(0.005));
    for (std::size_t m : {2u, 5u, 17u, 60u, 200u}) {
        const auto u = AmplitudeDistribution::uniform(m);
        CHECK(std::abs(expected_shots_lower_bound(u) - harmonic_cost(m)) < 1e-9 * harmonic_cost(m));
        CHECK(std::abs(expected_shots_uniform(m) - harmonic_cost(m)) < 1e-12 * harmonic_cost(m));
    }
}

TEST_CASE("exact sum against the subset Markov chain", "[coupon][oracle]") {
    const AmplitudeDistribution p({0.5, 0.3, 0.2});
    CHECK(expected_shots_exact(p) == Catch::Approx(oracle::coupon_markov_chain({0.5, 0.3, 0.2})).epsilon(1e-13));
    CHECK(expected_shots_exact(p) == Catch::Approx(6.6548).margin(1e-4));
    std::mt19937_64 rng(4);
    for (std::size_t m = 2; m <= 14; ++m) {
        const auto d = random_distribution(m, rng, 2.0);
        CHECK(expected_shots_exact(d) == Catch::Approx(oracle::coupon_markov_chain(d.probabilities())).epsilon(1e-11));
        CHECK(expected_shots_exact(d) >= static_cast<double>(m));
    }
    CHECK_THROWS_AS(expected_shots_exact(AmplitudeDistribution::uniform(21)), std::invalid_argument);
}

TEST_CASE("integral form agrees with the exact sum", "[coupon]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(trial) % 19;
        const auto d = random_distribution(m, rng, 1.0 + trial % 3);
        const double exact = expected_shots_exact(d);
        CHECK(std::abs(expected_shots_integral(d) - exact) < 1e-6 * exact);
    }
    const auto sk = AmplitudeDistribution::skewed(0.972, 20);
    CHECK(std::abs(expected_shots_integral(sk) - expected_shots_exact(sk)) < 1e-6 * expected_shots_exact(sk));
}

TEST_CASE("skew lower bound", "[coupon]") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(trial) % 14;
        const auto d = random_distribution(m, rng, 3.0);
        // m = 2 is the equality case.  p sums to one only up to rounding, and
        // 1 - p_max then differs from the tail mass by ~1e-16 absolute.
        const double exact = expected_shots_exact(d);
        CHECK(expected_shots_lower_bound(d) <= exact * (1 + 1e-9) + 1e-6);
    }
    for (std::size_t m : {10u, 30u, 50u, 120u}) {
        const auto sk = AmplitudeDistribution::skewed(0.972, m);
        const double exact_rational = expected_shots_lower_bound(sk);
        CHECK(std::abs(exact_rational - expected_shots_lower_bound_integral(sk)) < 1e-8 * exact_rational);
    }
}

TEST_CASE("Monte-Carlo discovery agrees with the exact expectation", "[coupon]") {
    const auto u = simulate_discovery(AmplitudeDistribution::uniform(3), 200000, 11);
    CHECK(std::abs(u.mean - 5.5) < 3 * u.std_error);
    CHECK(u.q50 <= u.q90);
    CHECK(u.q90 <= u.q99);
    CHECK(u.n_trials == 200000);

    const AmplitudeDistribution p({0.9, 0.05, 0.05});
    const auto st = simulate_discovery(p, 200000, 12);
    CHECK(std::abs(st.mean - expected_shots_exact(p)) < 3 * st.std_error);

    const auto again = simulate_discovery(p, 1000, 12);
    CHECK(again.mean == simulate_discovery(p, 1000, 12).mean);
}

TEST_CASE("discovery curves", "[coupon]") {
    const std::vector<std::size_t> grid{1, 3, 10, 100, 1000, 10000};
    const auto flat = discovery_curve(AmplitudeDistribution({1.0}), grid, 50, 1);
    for (const auto& c : flat) CHECK(c.mean_unique == 1.0);

    const auto u10 = discovery_curve(AmplitudeDistribution::uniform(10), grid, 500, 2);
    CHECK(u10.back().mean_unique == 10.0);
    CHECK(u10.front().mean_unique == 1.0);

    std::mt19937_64 rng(3);
    const auto d = random_distribution(40, rng, 3.0);
    const auto c = discovery_curve(d, grid, 300, 4);
    for (std::size_t g = 1; g < c.size(); ++g) CHECK(c[g].mean_unique >= c[g - 1].mean_unique);
    for (const auto& x : c) CHECK(x.mean_unique <= 40.0);

    // Expected distinct count after n draws: sum_i 1 - (1 - p_i)^n.
    for (const auto& x : c) {
        double expect = 0.0;
        for (double pi : d.probabilities()) expect += 1.0 - std::pow(1.0 - pi, static_cast<double>(x.shots));
        CHECK(std::abs(x.mean_unique - expect) < 4 * x.std_error + 1e-9);
    }
    CHECK_THROWS_AS(discovery_curve(d, {}, 3, 1), std::invalid_argument);
}

TEST_CASE("curve from a statevector", "[coupon]") {
    const auto fci = fci_ground_state(testing::load("h2o_sto3g_8e6o.fcidump"));
    const auto c = discovery_curve(fci.state, {100, 1000, 10000}, 50, 8);
    CHECK(c[0].mean_unique >= 1.0);
    CHECK(c[2].mean_unique <= 225.0);
    CHECK(c[0].mean_unique <= c[1].mean_unique);
    CHECK(AmplitudeDistribution::from_state(fci.state).size() <= 225);
}
