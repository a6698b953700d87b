#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "maxmart/rng.hpp"
#include "maxmart/stats.hpp"

namespace maxmart {
namespace {

// Counting oracle: no sorting, no binary search.
double brute_ecdf(const std::vector<double>& xs, double x) {
    std::size_t count = 0;
    for (double v : xs) count += v <= x ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(xs.size());
}

std::vector<double> uniform_draws(std::size_t n, Seed seed) {
    StreamEngine engine(seed);
    std::vector<double> u(n);
    for (double& v : u) v = engine.uniform();
    return u;
}

TEST(Ecdf, SinglePoint) {
    const Ecdf f = ecdf(std::vector<double>{0.5});
    EXPECT_EQ(f(0.5), 1.0);
    EXPECT_EQ(f(0.49), 0.0);
}

TEST(Ecdf, TwoPoints) {
    const Ecdf f = ecdf(std::vector<double>{0.75, 0.25});
    EXPECT_EQ(f(0.25), 0.5);
    EXPECT_EQ(f(0.75), 1.0);
}

TEST(Ecdf, EmptyThrows) { EXPECT_THROW(ecdf(std::vector<double>{}), std::invalid_argument); }

TEST(Ecdf, MatchesCountingOracle) {
    const auto u = uniform_draws(100000, Seed{11, 0});
    const Ecdf f = ecdf(u);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        EXPECT_EQ(f(x), brute_ecdf(u, x));
        worst = std::max(worst, std::abs(f(x) - x));
    }
    EXPECT_LT(worst, 3.0 / std::sqrt(100000.0));
}

TEST(Ecdf, NondecreasingAndEndsAtOne) {
    const auto u = uniform_draws(1000, Seed{12, 0});
    const Ecdf f = ecdf(u);
    double prev = 0.0;
    for (double x : f.sorted()) {
        EXPECT_GE(f(x), prev);
        prev = f(x);
    }
    EXPECT_EQ(f(f.sorted().back()), 1.0);
}

TEST(KolmogorovCritical, TabulatedLevels) {
    EXPECT_EQ(kolmogorov_critical_value(0.01), 1.628);
    EXPECT_EQ(kolmogorov_critical_value(0.05), 1.358);
    EXPECT_NEAR(kolmogorov_critical_value(0.10), 1.2239, 1e-4);
    EXPECT_THROW(kolmogorov_critical_value(0.0), std::invalid_argument);
}

TEST(KsUniform, SingleSample) {
    const KsVerdict v = ks_uniform(std::vector<double>{0.5}, 0.01);
    EXPECT_EQ(v.d_stat, 0.5);
    EXPECT_EQ(v.threshold, 1.628);
    EXPECT_TRUE(v.pass);
}

TEST(KsUniform, EquallySpacedMidpoints) {
    std::vector<double> u;
    for (int i = 1; i <= 100; ++i) u.push_back((i - 0.5) / 100.0);
    const KsVerdict v = ks_uniform(u, 0.01);
    EXPECT_NEAR(v.d_stat, 0.005, 1e-15);
    EXPECT_TRUE(v.pass);
}

TEST(KsUniform, ShiftedSampleFails) {
    const int n = 10000;
    std::vector<double> u;
    for (int i = 1; i <= n; ++i) u.push_back(std::min(1.0, i / (n + 1.0) + 0.2));
    EXPECT_FALSE(ks_uniform(u, 0.01).pass);
}

TEST(KsUniform, OutOfRangeThrows) {
    EXPECT_THROW(ks_uniform(std::vector<double>{0.5, 1.5}, 0.01), std::invalid_argument);
    EXPECT_THROW(ks_uniform(std::vector<double>{}, 0.01), std::invalid_argument);
}

TEST(KsUniform, EngineStreamPasses) {
    for (std::size_t n : {std::size_t{1000}, std::size_t{100000}}) {
        const KsVerdict v = ks_uniform(uniform_draws(n, Seed{13, n}), 0.01);
        EXPECT_TRUE(v.pass) << "n=" << n << " d=" << v.d_stat;
    }
}

TEST(KsDominates, UniformPassesAndShiftedDownFails) {
    EXPECT_TRUE(ks_dominates_uniform(uniform_draws(20000, Seed{14, 0}), 0.01).pass);
    auto low = uniform_draws(20000, Seed{14, 1});
    for (double& v : low) v *= 0.9;
    EXPECT_FALSE(ks_dominates_uniform(low, 0.01).pass);
    // Shifting upward only makes the sample larger; the one-sided test accepts it.
    auto high = uniform_draws(20000, Seed{14, 2});
    for (double& v : high) v = std::sqrt(v);
    EXPECT_TRUE(ks_dominates_uniform(high, 0.01).pass);
}

TEST(MeanCi, ConstantSample) {
    const MeanCi m = mean_ci(std::vector<double>{1, 1, 1}, 3.0);
    EXPECT_EQ(m.mean, 1.0);
    EXPECT_EQ(m.halfwidth, 0.0);
}

TEST(MeanCi, TwoPoints) {
    const MeanCi m = mean_ci(std::vector<double>{0, 2}, 2.5);
    EXPECT_EQ(m.mean, 1.0);
    EXPECT_NEAR(m.halfwidth, 2.5, 1e-15);
}

TEST(MeanCi, TooSmallThrows) { EXPECT_THROW(mean_ci(std::vector<double>{1.0}, 3.0), std::invalid_argument); }

TEST(MeanCi, ExponentialMeanCovered) {
    StreamEngine engine(Seed{15, 0});
    std::vector<double> xs(200000);
    for (double& x : xs) x = engine.exponential();
    const MeanCi m = mean_ci(xs, 3.0);
    EXPECT_NEAR(m.halfwidth, 3.0 / std::sqrt(200000.0), 2e-4);
    EXPECT_LE(std::abs(m.mean - 1.0), m.halfwidth);
}

TEST(Proportion, Arithmetic) {
    const Proportion p = proportion(25, 100);
    EXPECT_EQ(p.p, 0.25);
    EXPECT_NEAR(p.std_error, std::sqrt(0.25 * 0.75 / 100.0), 1e-15);
    EXPECT_THROW(proportion(0, 0), std::invalid_argument);
}

}  // namespace
}  // namespace maxmart
