#include "maxmart/hedging.hpp"

#include <cmath>

#include "maxmart/summary.hpp"

namespace maxmart {

namespace {

void require_strike(double x) {
    if (!(x > 1.0) || !std::isfinite(x)) throw ParameterError("strike must be a finite number above 1");
}

}  // namespace

FirstPassage first_passage(const CadlagPath& path, double x) {
    require_strike(x);
    const auto samples = path.samples();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Sample& s = samples[k];
        if (s.right > x) return {s.time, s.right};
        if (k + 1 == samples.size()) break;
        const Sample& next = samples[k + 1];
        switch (path.interpolation()) {
            case Interpolation::ExponentialInTime: {
                if (!(path.rate() > 0.0) || !(s.right > 0.0)) break;
                const double crossing = s.time + std::log(x / s.right) / path.rate();
                if (crossing < next.time)
                    return {crossing, s.right * std::exp(path.rate() * (crossing - s.time))};
                break;
            }
            case Interpolation::GridSampled: {
                const auto peak = path.peak_in_segment(k);
                const double target = peak && *peak > x ? *peak : next.left;
                if (target > x)
                    return {s.time + (next.time - s.time) * (x - s.right) / (target - s.right), x};
                break;
            }
            case Interpolation::PiecewiseConstant:
                break;
        }
    }
    return {};
}

HedgeResult hedge_outcome(double x, const FirstPassage& passage, double l_star_inf,
                          double terminal_value) {
    require_strike(x);
    HedgeResult r;
    r.x = x;
    r.tau_x = passage.time;
    r.payoff_ge = l_star_inf >= x ? 1 : 0;
    r.payoff_gt = l_star_inf > x ? 1 : 0;
    r.portfolio = (passage.finite() ? passage.value : terminal_value) / x;
    r.gap = r.portfolio - r.payoff_ge;
    return r;
}

HedgeResult super_replicate(const CadlagPath& path, double x) {
    return hedge_outcome(x, first_passage(path, x), SupPath(path).final_value(),
                         path.terminal_value());
}

DigitalPrice digital_price(const ModelSpec& spec, double x, std::size_t n,
                           std::uint64_t master_seed, unsigned jobs) {
    require_strike(x);
    if (n < 1000) throw ParameterError("digital price needs at least 1000 paths");
    const auto sups = summary_map(spec, n, master_seed, jobs, {},
                                  [](std::size_t, const PathSummary& s) { return s.record.l_star_inf; });
    std::size_t hits = 0;
    for (double s : sups) hits += s >= x ? 1 : 0;
    return {x, proportion(hits, n), 1.0 / x};
}

std::string hedge_csv_header() { return "x,tau_x,payoff_ge,payoff_gt,portfolio,gap"; }

std::string to_csv_row(const HedgeResult& r) {
    return format_double(r.x) + ',' + format_double(r.tau_x) + ',' + std::to_string(r.payoff_ge) +
           ',' + std::to_string(r.payoff_gt) + ',' + format_double(r.portfolio) + ',' +
           format_double(r.gap);
}

}  // namespace maxmart
