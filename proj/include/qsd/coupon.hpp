// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file coupon.hpp
 * @brief Waiting time until every outcome of a categorical distribution is seen.
 *
 * Precision regimes:
 *  - expected_shots_exact: inclusion-exclusion over all 2^m subsets, each
 *    denominator formed as a sum of the complementary probabilities (no
 *    subtraction), accumulated in binary128.  m <= 20.
 *  - expected_shots_lower_bound: the two-term alternating sum over r for the
 *    flattened tail, evaluated in exact rational arithmetic (GMP) from the
 *    binary64 inputs and rounded once.  Any m >= 2; validated to m = 200.
 *  - expected_shots_integral: E[T] = int_0^inf 1 - prod_i (1 - e^{-p_i t}) dt
 *    with the integrand formed through expm1/log, adaptive Gauss-Kronrod on
 *    log-spaced pieces.  Any m.
 */
#pragma once

#include "rng.hpp"
#include "statevector.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace qsd {

class AmplitudeDistribution {
public:
    explicit AmplitudeDistribution(std::vector<double> p) : p_(std::move(p)) {
        if (p_.empty()) throw std::invalid_argument("empty distribution");
        double s = 0.0;
        for (double x : p_) {
            if (!(x > 0.0)) throw std::invalid_argument("probabilities must be positive");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-10) throw std::invalid_argument("probabilities must sum to 1");
    }

    /// Basis-state probabilities of `s` above `threshold`, renormalized.
    static AmplitudeDistribution from_state(const StateVector& s, double threshold = 0.0) {
        std::vector<double> p;
        double total = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            const double x = s.probability(i);
            if (x > threshold) {
                p.push_back(x);
                total += x;
            }
        }
        for (double& x : p) x /= total;
        return AmplitudeDistribution(std::move(p));
    }

    /// (p_max, (1 - p_max)/(m - 1), ...) with m outcomes.
    static AmplitudeDistribution skewed(double p_max, std::size_t m) {
        if (m < 2) throw std::invalid_argument("need m >= 2");
        if (!(p_max > 0.0 && p_max < 1.0)) throw std::invalid_argument("p_max must lie in (0, 1)");
        std::vector<double> p(m, (1.0 - p_max) / static_cast<double>(m - 1));
        p[0] = p_max;
        return AmplitudeDistribution(std::move(p));
    }

    static AmplitudeDistribution uniform(std::size_t m) {
        return AmplitudeDistribution(std::vector<double>(m, 1.0 / static_cast<double>(m)));
    }

    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& probabilities() const noexcept { return p_; }
    double max() const noexcept { return *std::max_element(p_.begin(), p_.end()); }

private:
    std::vector<double> p_;
};

inline constexpr std::size_t kExactMaxOutcomes = 20;

/**
 * sum_{r=0}^{m-1} (-1)^{m-1-r} sum_{|J|=r} 1 / (1 - P(J)), with
 * 1 - P(J) taken as the mass of the complement of J.
 */
inline double expected_shots_exact(const AmplitudeDistribution& dist, std::size_t m_max = kExactMaxOutcomes) {
    const auto& p = dist.probabilities();
    const std::size_t m = p.size();
    if (m > m_max || m > 30) throw std::invalid_argument("too many outcomes for the exact sum");
    if (m == 1) return 1.0;
    const std::size_t full = (std::size_t{1} << m) - 1;
    // mass[S] over subsets S; J's complement is full ^ J.
    std::vector<__float128> mass(full + 1);
    mass[0] = 0;
    for (std::size_t s = 1; s <= full; ++s)
        mass[s] = mass[s & (s - 1)] + static_cast<__float128>(p[static_cast<std::size_t>(std::countr_zero(s))]);
    __float128 acc = 0;
    for (std::size_t j = 0; j < full; ++j) {
        const auto r = static_cast<std::size_t>(std::popcount(j));
        const __float128 term = 1 / mass[full ^ j];
        if ((m - 1 - r) % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return static_cast<double>(acc);
}

/// m (1 + 1/2 + ... + 1/m)
inline double expected_shots_uniform(std::size_t m) {
    if (m < 1) throw std::invalid_argument("need m >= 1");
    long double h = 0.0L;
    for (std::size_t k = m; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
    return static_cast<double>(static_cast<long double>(m) * h);
}

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IntegralOptions {
    double rel_tol = 1e-10;
    unsigned max_depth = 20;
};

inline double expected_shots_integral(const AmplitudeDistribution& dist, const IntegralOptions& opt = {}) {
    const auto& p = dist.probabilities();
    const std::size_t m = p.size();
    if (m == 1) return 1.0;
    const double p_min = *std::min_element(p.begin(), p.end());
    const double p_max = dist.max();

    // 1 - prod_i (1 - e^{-p_i t}) = -expm1(sum_i log(1 - e^{-p_i t})), with
    // log(1 - e^{-a}) split at ln 2 so neither branch cancels.
    auto log1mexp = [](double a) { return a < std::numbers::ln2 ? std::log(-std::expm1(-a)) : std::log1p(-std::exp(-a)); };
    auto f = [&](double t) {
        if (t <= 0.0) return 1.0;
        double l = 0.0;
        for (double x : p) l += log1mexp(x * t);
        return -std::expm1(l);
    };

    // Integrand is below m e^{-p_min t}; stop once that is negligible.
    const double t_end = (std::log(static_cast<double>(m)) + 60.0) / p_min;
    std::vector<double> cuts{0.0};
    for (double t = 0.25 / p_max; t < t_end; t *= 2.0) cuts.push_back(t);
    cuts.push_back(t_end);

    double total = 0.0, err_total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double err = 0.0;
        const double piece = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, cuts[k], cuts[k + 1], opt.max_depth, opt.rel_tol * 1e-2, &err);
        total += piece;
        err_total += err;
    }
    if (!(err_total <= opt.rel_tol * total)) throw QuadratureError("coupon integral did not reach its tolerance");
    return total;
}

/**
 * Waiting time for q = (p_max, q~, ..., q~), q~ = (1 - p_max)/(m - 1):
 * sum_r (-1)^{m-1-r} [C(m-1, r-1) / ((m-r) q~) + C(m-1, r) / (1 - r q~)].
 * q is majorized by p, so this never exceeds the true waiting time.
 */
inline double expected_shots_lower_bound(const AmplitudeDistribution& dist) {
    const std::size_t m = dist.size();
    if (m < 2) throw std::invalid_argument("lower bound needs m >= 2");
    const mpq_class pmax(dist.max());  // exact binary64 value
    mpq_class qt = (1 - pmax) / mpq_class(static_cast<unsigned long>(m - 1));
    qt.canonicalize();
    if (qt <= 0) throw std::invalid_argument("p_max must be below 1");

    mpq_class acc(0);
    mpz_class c_prev(0);  // C(m-1, r-1)
    mpz_class c_cur(1);   // C(m-1, r)
    for (std::size_t r = 0; r < m; ++r) {
        mpq_class term(0);
        if (r >= 1) term += mpq_class(c_prev) / (mpq_class(static_cast<unsigned long>(m - r)) * qt);
        term += mpq_class(c_cur) / (1 - mpq_class(static_cast<unsigned long>(r)) * qt);
        if ((m - 1 - r) % 2 == 0)
            acc += term;
        else
            acc -= term;
        // advance: C(m-1, r) -> C(m-1, r+1)
        c_prev = c_cur;
        if (r + 1 <= m - 1) {
            c_cur = c_cur * static_cast<unsigned long>(m - 1 - r) / static_cast<unsigned long>(r + 1);
        } else {
            c_cur = 0;
        }
    }
    return acc.get_d();
}

/// Same bound through the stable integral of the flattened distribution.
inline double expected_shots_lower_bound_integral(const AmplitudeDistribution& dist) {
    return expected_shots_integral(AmplitudeDistribution::skewed(dist.max(), dist.size()));
}

struct DiscoveryStats {
    double mean = 0.0;
    double std_error = 0.0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
    std::size_t n_trials = 0;
};

namespace detail {

/**
 * Discovery times of one trial: between discoveries the number of draws is
 * geometric in the unseen mass, and the new outcome is drawn among the
 * unseen ones proportionally to p.  Stops after `limit` draws.
 */
template <class OnDiscovery>
void discovery_trial(std::span<const double> p, CounterRng& rng, double limit, OnDiscovery&& on) {
    const std::size_t m = p.size();
    std::vector<char> seen(m, 0);
    std::vector<std::size_t> unseen(m);
    std::iota(unseen.begin(), unseen.end(), std::size_t{0});
    double t = 0.0;
    while (!unseen.empty()) {
        double rest = 0.0;
        for (std::size_t i : unseen) rest += p[i];
        double gap = 1.0;
        if (rest < 1.0) {
            const double u = 1.0 - rng.uniform();  // (0, 1]
            gap = 1.0 + std::floor(std::log(u) / std::log1p(-rest));
        }
        t += gap;
        if (t > limit) return;
        double x = rng.uniform() * rest;
        std::size_t pick = unseen.size() - 1;
        for (std::size_t k = 0; k < unseen.size(); ++k) {
            if (x < p[unseen[k]]) {
                pick = k;
                break;
            }
            x -= p[unseen[k]];
        }
        on(t);
        unseen.erase(unseen.begin() + static_cast<std::ptrdiff_t>(pick));
    }
}

inline double quantile_sorted(const std::vector<double>& v, double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(k, 1, v.size()) - 1];
}

}  // namespace detail

/// Monte-Carlo draws-until-complete; trial k uses its own counter stream.
inline DiscoveryStats simulate_discovery(const AmplitudeDistribution& dist, std::size_t n_trials, u64 seed) {
    if (n_trials < 1) throw std::invalid_argument("need at least one trial");
    const auto& p = dist.probabilities();
    std::vector<double> draws(n_trials);
    for (std::size_t k = 0; k < n_trials; ++k) {
        CounterRng rng(derive_key(seed, k));
        double last = 0.0;
        detail::discovery_trial(p, rng, std::numeric_limits<double>::infinity(), [&](double t) { last = t; });
        draws[k] = last;
    }
    DiscoveryStats st;
    st.n_trials = n_trials;
    long double s = 0.0L, s2 = 0.0L;
    for (double x : draws) s += x;
    st.mean = static_cast<double>(s / static_cast<long double>(n_trials));
    for (double x : draws) s2 += (x - st.mean) * (x - st.mean);
    st.std_error = n_trials > 1 ? std::sqrt(static_cast<double>(s2 / static_cast<long double>(n_trials - 1)) /
                                            static_cast<double>(n_trials))
                                : 0.0;
    std::sort(draws.begin(), draws.end());
    st.q50 = detail::quantile_sorted(draws, 0.5);
    st.q90 = detail::quantile_sorted(draws, 0.9);
    st.q99 = detail::quantile_sorted(draws, 0.99);
    return st;
}

struct CurvePoint {
    std::size_t shots = 0;
    double mean_unique = 0.0;
    double std_error = 0.0;
};

/// Expected number of distinct outcomes after each budget in `grid`.
inline std::vector<CurvePoint> discovery_curve(const AmplitudeDistribution& dist, const std::vector<std::size_t>& grid,
                                               std::size_t n_trials, u64 seed) {
    if (grid.empty()) throw std::invalid_argument("empty shot grid");
    if (n_trials < 1) throw std::invalid_argument("need at least one trial");
    const auto& p = dist.probabilities();
    const double limit = static_cast<double>(*std::max_element(grid.begin(), grid.end()));
    std::vector<long double> s(grid.size(), 0.0L), s2(grid.size(), 0.0L);
    std::vector<double> times;
    for (std::size_t k = 0; k < n_trials; ++k) {
        CounterRng rng(derive_key(seed, k));
        times.clear();
        detail::discovery_trial(p, rng, limit, [&](double t) { times.push_back(t); });
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto n = static_cast<long double>(
                std::upper_bound(times.begin(), times.end(), static_cast<double>(grid[g])) - times.begin());
            s[g] += n;
            s2[g] += n * n;
        }
    }
    std::vector<CurvePoint> out;
    const auto nt = static_cast<long double>(n_trials);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const long double mean = s[g] / nt;
        const long double var = n_trials > 1 ? std::max(0.0L, (s2[g] - nt * mean * mean) / (nt - 1)) : 0.0L;
        out.push_back({grid[g], static_cast<double>(mean), static_cast<double>(std::sqrt(var / nt))});
    }
    return out;
}

inline std::vector<CurvePoint> discovery_curve(const StateVector& s, const std::vector<std::size_t>& grid,
                                               std::size_t n_trials, u64 seed) {
    return discovery_curve(AmplitudeDistribution::from_state(s), grid, n_trials, seed);
}

}  // namespace qsd
