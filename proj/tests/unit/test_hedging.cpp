#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "maxmart/hedging.hpp"
#include "maxmart/models.hpp"

namespace maxmart {
namespace {

TEST(FirstPassage, PoissonDeathCrossesBeforeDeath) {
    const FirstPassage fp = first_passage(poisson_death_path(1.0, 0.7), 2.0);
    EXPECT_NEAR(fp.time, std::log(2.0), 1e-15);
    EXPECT_NEAR(fp.value, 2.0, 1e-15);
}

TEST(FirstPassage, PoissonDeathDiesFirst) {
    EXPECT_EQ(first_passage(poisson_death_path(1.0, 0.5), 2.0).time, kInfinity);
}

TEST(FirstPassage, ConstantPathNever) {
    const CadlagPath p({{0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}, 1.0, Interpolation::PiecewiseConstant);
    EXPECT_FALSE(first_passage(p, 2.0).finite());
}

TEST(FirstPassage, StrikeMustExceedOne) {
    EXPECT_THROW(first_passage(poisson_death_path(1.0, 0.7), 1.0), ParameterError);
    EXPECT_THROW(first_passage(poisson_death_path(1.0, 0.7), 0.5), ParameterError);
}

TEST(FirstPassage, GridCrossingUsesPeak) {
    // Endpoints stay below 2 but the step's peak reaches 3.
    const CadlagPath p({{0.0, 1.0, 1.0}, {1.0, 1.5, 1.5}, {2.0, 0.5, 0.5}}, 0.0, Interpolation::GridSampled, 0.0,
                       {{1, 3.0}});
    const FirstPassage fp = first_passage(p, 2.0);
    EXPECT_EQ(fp.value, 2.0);
    EXPECT_GT(fp.time, 1.0);
    EXPECT_LT(fp.time, 2.0);
}

TEST(SuperReplicate, PoissonDeathEqualityCase) {
    const HedgeResult h = super_replicate(poisson_death_path(1.0, 0.7), 2.0);
    EXPECT_EQ(h.payoff_ge, 1);
    EXPECT_EQ(h.payoff_gt, 1);
    EXPECT_NEAR(h.portfolio, 1.0, 1e-15);
    EXPECT_NEAR(h.gap, 0.0, 1e-15);
}

TEST(SuperReplicate, PoissonDeathNoCrossing) {
    const HedgeResult h = super_replicate(poisson_death_path(1.0, 0.5), 2.0);
    EXPECT_EQ(h.payoff_ge, 0);
    EXPECT_EQ(h.portfolio, 0.0);
    EXPECT_EQ(h.gap, 0.0);
}

TEST(SuperReplicate, PoissonUpOvershootIsStrict) {
    // 1 -> 2e^{-0.05} at t = 0.05 overshoots x = 1.5.
    const std::vector<double> jumps{0.05};
    const HedgeResult h = super_replicate(poisson_up_path(1.0, jumps, 10.0), 1.5);
    EXPECT_EQ(h.tau_x, 0.05);
    EXPECT_EQ(h.payoff_ge, 1);
    EXPECT_GT(h.portfolio, 1.0);
    EXPECT_GT(h.gap, 0.0);
}

TEST(SuperReplicate, GapNonnegativeOnSimulatedPaths) {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        for (double x : {1.5, 3.0}) {
            EXPECT_GE(super_replicate(simulate_poisson_up(PoissonUp{1.0, 9.0}, Seed{12, i}), x).gap, 0.0);
            EXPECT_NEAR(super_replicate(simulate_poisson_death(1.0, Seed{12, i}), x).gap, 0.0, 1e-9);
        }
    }
    for (std::uint64_t i = 0; i < 100; ++i)
        EXPECT_NEAR(super_replicate(simulate_continuous_exp(ContinuousExp{}, Seed{13, i}), 2.0).gap, 0.0, 1e-9);
}

TEST(DigitalPrice, PoissonDeathAtTwo) {
    const DigitalPrice d = digital_price(PoissonDeath{1.0}, 2.0, 200000, 28);
    EXPECT_EQ(d.initial_capital, 0.5);
    EXPECT_LE(std::abs(d.estimate.p - 0.5), 3.0 * d.estimate.std_error);
}

TEST(DigitalPrice, PoissonUpBelowCapital) {
    const DigitalPrice d = digital_price(PoissonUp{1.0, 9.0}, 3.0, 50000, 29);
    EXPECT_LE(d.estimate.p + 3.0 * d.estimate.std_error, 1.0 / 3.0);
}

TEST(DigitalPrice, Preconditions) {
    EXPECT_THROW(digital_price(PoissonDeath{1.0}, 2.0, 999, 1), ParameterError);
    EXPECT_THROW(digital_price(PoissonDeath{1.0}, 1.0, 1000, 1), ParameterError);
}

TEST(HedgeCsv, Layout) {
    EXPECT_EQ(hedge_csv_header(), "x,tau_x,payoff_ge,payoff_gt,portfolio,gap");
    EXPECT_EQ(to_csv_row(super_replicate(poisson_death_path(1.0, 0.5), 2.0)), "2,inf,0,0,0,0");
}

}  // namespace
}  // namespace maxmart
