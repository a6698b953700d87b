#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "maxmart/models.hpp"
#include "maxmart/paths.hpp"
#include "maxmart/stats.hpp"

namespace maxmart {

/// tau_x = inf{t > 0 : L_t > x} and L at that time; time is +inf if never.
struct FirstPassage {
    double time = kInfinity;
    double value = 0.0;
    bool finite() const noexcept { return time != kInfinity; }
};

/**
 * First passage strictly above x > 1.
 *
 * Jumps across x are found at the jump time with the post-jump value.
 * Exponential segments cross at t_k + log(x / L_{t_k}) / rate, and the value
 * there is the segment's closed form. Grid paths are continuous between
 * samples, so the crossing value is x itself; the reported time interpolates
 * linearly from the step start towards the step's peak (or end value).
 */
FirstPassage first_passage(const CadlagPath& path, double x);

struct HedgeResult {
    double x = 0.0;
    double tau_x = kInfinity;
    int payoff_ge = 0;  ///< 1{L*_inf >= x}
    int payoff_gt = 0;  ///< 1{L*_inf > x}
    double portfolio = 0.0;  ///< 1/x shares held until tau_x
    double gap = 0.0;        ///< portfolio - payoff_ge
};

/// Hedge outcome from a first passage, the final sup and the terminal value.
HedgeResult hedge_outcome(double x, const FirstPassage& passage, double l_star_inf,
                          double terminal_value);

/// Buy 1/x shares at time 0 and sell them at tau_x.
HedgeResult super_replicate(const CadlagPath& path, double x);

struct DigitalPrice {
    double x = 0.0;
    Proportion estimate;  ///< frequency of {L*_inf >= x}
    double initial_capital = 0.0;  ///< 1/x
};

/// Monte Carlo price of 1{L*_inf >= x} over paths Seed{master_seed, i}.
DigitalPrice digital_price(const ModelSpec& spec, double x, std::size_t n,
                           std::uint64_t master_seed, unsigned jobs = 0);

std::string hedge_csv_header();
std::string to_csv_row(const HedgeResult& result);

}  // namespace maxmart
