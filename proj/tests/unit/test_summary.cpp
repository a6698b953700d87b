#include <gtest/gtest.h>

#include <vector>

#include "maxmart/summary.hpp"

namespace maxmart {
namespace {

void expect_same(const PathSummary& a, const PathSummary& b) {
    EXPECT_EQ(a.record.rho_left, b.record.rho_left);
    EXPECT_EQ(a.record.rho_right, b.record.rho_right);
    EXPECT_EQ(a.record.l_star_inf, b.record.l_star_inf);
    EXPECT_EQ(a.record.left_at_rho, b.record.left_at_rho);
    EXPECT_EQ(a.record.right_at_rho, b.record.right_at_rho);
    EXPECT_EQ(a.record.truncated_before_jump, b.record.truncated_before_jump);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.horizon, b.horizon);
    ASSERT_EQ(a.hedges.size(), b.hedges.size());
    for (std::size_t j = 0; j < a.hedges.size(); ++j) {
        EXPECT_EQ(a.hedges[j].tau_x, b.hedges[j].tau_x);
        EXPECT_EQ(a.hedges[j].payoff_ge, b.hedges[j].payoff_ge);
        EXPECT_EQ(a.hedges[j].portfolio, b.hedges[j].portfolio);
        EXPECT_EQ(a.hedges[j].gap, b.hedges[j].gap);
    }
}

TEST(Summarize, StreamingMatchesMaterialized) {
    const std::vector<double> strikes{1.5, 2.0, 5.0, 10.0};
    for (const ModelSpec& m : {ModelSpec{PoissonDeath{}}, ModelSpec{ContinuousExp{}}, ModelSpec{PoissonUp{}},
                               ModelSpec{ContinuousExp{0.5, 1e-2, 6.0, false}}}) {
        for (std::uint64_t i = 0; i < 60; ++i) {
            SCOPED_TRACE(i);
            expect_same(summarize(m, Seed{40, i}, strikes), summarize_path(simulate(m, Seed{40, i}), strikes));
        }
    }
}

TEST(SummaryMap, IndependentOfJobs) {
    const std::vector<double> strikes{2.0};
    auto stars = [&](unsigned jobs) {
        return summary_map(ContinuousExp{}, 64, 41, jobs, strikes,
                           [](std::size_t, const PathSummary& s) { return s.record.l_star_inf; });
    };
    EXPECT_EQ(stars(1), stars(4));
}

}  // namespace
}  // namespace maxmart
