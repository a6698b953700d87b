#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "maxmart/azema.hpp"
#include "maxmart/models.hpp"

namespace maxmart {
namespace {

MarkovState state(ModelSpec m, double current, double runsup, bool alive = true) {
    MarkovState s;
    s.model = m;
    s.t = 0.5;
    s.current = current;
    s.runsup = runsup;
    s.alive = alive;
    return s;
}

TEST(ZRatio, Examples) {
    EXPECT_EQ(z_ratio(state(ContinuousExp{}, 1.2, 2.0)), 0.6);
    EXPECT_EQ(z_ratio(state(PoissonDeath{}, 0.0, 1.5, false)), 0.0);
}

TEST(ValidateState, Rejects) {
    EXPECT_THROW(validate_state(state(ContinuousExp{}, 2.5, 2.0)), ParameterError);
    EXPECT_THROW(validate_state(state(ContinuousExp{}, 0.5, 0.9)), ParameterError);
    EXPECT_THROW(validate_state(state(PoissonDeath{}, 1.0, 1.5, false)), ParameterError);
    EXPECT_THROW(validate_state(state(PoissonDeath{}, 0.0, 1.5, true)), ParameterError);
}

TEST(StateAt, ReadsPath) {
    const CadlagPath p = poisson_death_path(1.0, 0.7);
    const MarkovState a = state_at(PoissonDeath{}, p, 0.5);
    EXPECT_NEAR(a.current, std::exp(0.5), 1e-15);
    EXPECT_EQ(a.current, a.runsup);
    EXPECT_TRUE(a.alive);
    const MarkovState d = state_at(PoissonDeath{}, p, 2.0);
    EXPECT_EQ(d.current, 0.0);
    EXPECT_FALSE(d.alive);
    EXPECT_NEAR(d.runsup, std::exp(0.7), 1e-15);
}

TEST(NestedZ, ContinuousExpMatchesRatio) {
    const AzemaEstimate e = nested_z_estimate(state(ContinuousExp{}, 1.2, 2.0), 10000, Seed{30, 0});
    EXPECT_EQ(e.z_ratio, 0.6);
    EXPECT_LE(std::abs(e.z_hat - 0.6), azema_tolerance(e));
    EXPECT_EQ(e.z_hat, e.z_hat_strict);
}

TEST(NestedZ, PoissonDeathIsIndicator) {
    const MarkovState alive = state(PoissonDeath{}, std::exp(0.5), std::exp(0.5));
    EXPECT_EQ(nested_z_estimate(alive, 1000, Seed{31, 0}).z_hat, 1.0);
    EXPECT_EQ(nested_z_estimate(alive, 1000, Seed{31, 0}).z_hat_strict, 1.0);
    const MarkovState dead = state(PoissonDeath{}, 0.0, std::exp(0.3), false);
    EXPECT_EQ(nested_z_estimate(dead, 1000, Seed{31, 1}).z_hat, 0.0);
}

TEST(NestedZ, PoissonUpBelowRatio) {
    const AzemaEstimate e = nested_z_estimate(state(PoissonUp{}, 0.9, 1.5), 10000, Seed{32, 0});
    EXPECT_LE(e.z_hat, 0.6 + 3.0 * e.std_error);
}

TEST(NestedZ, ScaleInvariance) {
    const AzemaEstimate a = nested_z_estimate(state(ContinuousExp{}, 1.2, 2.0), 2000, Seed{33, 0});
    const AzemaEstimate b = nested_z_estimate(state(ContinuousExp{}, 3.6, 6.0), 2000, Seed{33, 0});
    EXPECT_NEAR(a.z_hat, b.z_hat, 3.0 / 2000.0);
}

TEST(NestedZ, Preconditions) {
    EXPECT_THROW(nested_z_estimate(state(ContinuousExp{}, 1.2, 2.0), 99, Seed{1, 0}), ParameterError);
    EXPECT_EQ(nested_z_estimate(state(ContinuousExp{}, 0.0, 2.0), 100, Seed{1, 0}).z_hat, 0.0);
}

TEST(NestedZ, Deterministic) {
    const MarkovState s = state(PoissonUp{}, 0.9, 1.5);
    EXPECT_EQ(nested_z_estimate(s, 500, Seed{34, 2}).z_hat, nested_z_estimate(s, 500, Seed{34, 2}).z_hat);
}

TEST(SampleState, ConsistentWithModel) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        for (const ModelSpec& m : {ModelSpec{PoissonDeath{}}, ModelSpec{ContinuousExp{}}, ModelSpec{PoissonUp{}}}) {
            const MarkovState s = sample_state(m, 0.5, Seed{35, i});
            EXPECT_NO_THROW(validate_state(s));
            EXPECT_EQ(s.t, 0.5);
        }
    }
}

TEST(Additive, PoissonDeathStates) {
    const AdditiveRow alive = additive_check_state(state(PoissonDeath{}, std::exp(0.5), std::exp(0.5)), 20000, Seed{36, 0});
    EXPECT_TRUE(alive.pass);
    EXPECT_EQ(alive.z_ratio, 1.0);
    const AdditiveRow dead = additive_check_state(state(PoissonDeath{}, 0.0, std::exp(0.3), false), 1000, Seed{36, 1});
    EXPECT_EQ(dead.estimate, 0.0);
    EXPECT_TRUE(dead.pass);
}

TEST(Additive, ContinuousExpState) {
    const AdditiveRow r = additive_check_state(state(ContinuousExp{}, 1.2, 2.0), 5000, Seed{37, 0});
    EXPECT_TRUE(r.pass) << r.estimate << " vs " << r.z_ratio << " tol " << r.tolerance;
    EXPECT_THROW(additive_check_state(state(ContinuousExp{}, 1.2, 2.0), 999, Seed{37, 0}), ParameterError);
}

TEST(BeforeRho, TentPath) {
    // Rises as e^t to time 0.7, then dies: L/L* = 1 just before rho.
    const std::vector<CadlagPath> paths{poisson_death_path(1.0, 0.7)};
    const BeforeRhoSummary s = z_before_rho(paths, PoissonDeath{}, 0.1, 100, Seed{38, 0});
    EXPECT_EQ(s.n_used, 1u);
    EXPECT_EQ(s.mean_ratio, 1.0);
    EXPECT_EQ(s.mean_z_hat, 1.0);
    EXPECT_EQ(s.ratio_below_one, 0u);
}

TEST(BeforeRho, SkipsEarlyMaxima) {
    const std::vector<CadlagPath> paths{poisson_death_path(1.0, 0.05)};
    const BeforeRhoSummary s = z_before_rho(paths, PoissonDeath{}, 0.1, 0, Seed{38, 1});
    EXPECT_EQ(s.n_skipped, 1u);
    EXPECT_EQ(s.n_used, 0u);
}

TEST(BeforeRho, LeftRatioOnPoissonUp) {
    const std::vector<double> jumps{0.3, 0.4};
    const auto r = ratio_at_rho_left_limit(poisson_up_path(1.0, jumps, 5.0));
    ASSERT_TRUE(r.has_value());
    EXPECT_LT(*r, 1.0);
    const auto m0 = ratio_at_rho_left_limit(poisson_death_path(1.0, 0.7));
    ASSERT_TRUE(m0.has_value());
    EXPECT_EQ(*m0, 1.0);
}

TEST(ConditionalDoob, ContinuousExpSmall) {
    const ConditionalDoobReport r = conditional_doob_check(ContinuousExp{}, 0.5, 100, 200, Seed{39, 0});
    EXPECT_EQ(r.rows.size(), 100u);
    // One-sided 3-sigma exceedances occur with probability about 0.00135 per state.
    EXPECT_LE(r.violations, 1u);
    const std::string csv = conditional_doob_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,current,runsup,z_hat,stderr,z_ratio,violation_flag");
    EXPECT_THROW(conditional_doob_check(ContinuousExp{}, 0.5, 99, 200, Seed{39, 0}), ParameterError);
}

}  // namespace
}  // namespace maxmart
