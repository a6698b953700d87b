#include "maxmart/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace maxmart {

PathSummary summarize_path(const CadlagPath& path, std::span<const double> strikes) {
    PathSummary out;
    out.record = max_record(path);
    out.samples = path.size();
    out.horizon = path.horizon();
    for (double x : strikes) out.hedges.push_back(super_replicate(path, x));
    return out;
}

namespace {

// A grid time where the path may sit on its running max. Candidates whose
// value is not exactly the running max are confirmed against the final
// tolerance once L*_inf is known.
struct GridCandidate {
    double time;
    double log_value;
    double log_sup;
    bool from_peak;
};

// Slack for the log-space prefilters; far wider than the value tolerances.
constexpr double kLogSlack = 1e-9;

PathSummary summarize_continuous_exp(const ContinuousExp& spec, Seed seed,
                                     std::span<const double> strikes) {
    std::vector<double> log_strikes;
    for (double x : strikes) {
        if (!(x > 1.0) || !std::isfinite(x)) throw ParameterError("strike must be a finite number above 1");
        log_strikes.push_back(std::log(x));
    }
    std::vector<FirstPassage> passages(strikes.size());
    // Lowest log strike not yet crossed, less the slack.
    auto next_threshold = [&] {
        double low = kInfinity;
        for (std::size_t j = 0; j < strikes.size(); ++j)
            if (!passages[j].finite()) low = std::min(low, log_strikes[j] - kLogSlack);
        return low;
    };
    double threshold = next_threshold();
    std::vector<GridCandidate> candidates;
    double log_prev = 0.0;
    const std::size_t steps = walk_continuous_exp(
        spec, seed, [&](std::size_t k, double log_end, double log_peak, double log_sup) {
            if (log_end >= log_sup - kLogSlack || log_peak > -kInfinity) {
                const double time = static_cast<double>(k + 1) * spec.dt;
                const bool from_peak = log_peak > -kInfinity;
                if (from_peak || log_end >= log_sup) candidates.clear();
                candidates.push_back({time, from_peak ? log_peak : log_end, log_sup, from_peak});
            }
            if (std::max(log_peak, log_end) > threshold) {
                const double time = static_cast<double>(k + 1) * spec.dt;
                const double peak = log_peak > -kInfinity ? std::exp(log_peak) : -kInfinity;
                const double target = std::max(peak, std::exp(log_end));
                for (std::size_t j = 0; j < strikes.size(); ++j) {
                    const double x = strikes[j];
                    if (passages[j].finite() || !(target > x)) continue;
                    const double hit = peak > x ? peak : std::exp(log_end);
                    const double t0 = static_cast<double>(k) * spec.dt;
                    const double v0 = k == 0 ? 1.0 : std::exp(log_prev);
                    passages[j] = {t0 + (time - t0) * (x - v0) / (hit - v0), x};
                }
                threshold = next_threshold();
            }
            log_prev = log_end;
        });

    PathSummary out;
    out.samples = steps + 1;
    out.horizon = static_cast<double>(steps) * spec.dt;
    MaxRecord& rec = out.record;
    const double log_star = candidates.empty() ? 0.0 : candidates.front().log_sup;
    rec.l_star_inf = std::max(1.0, std::exp(log_star));
    const double tol = kGridEqualityTolerance * rec.l_star_inf;
    rec.truncated_before_jump = true;
    rec.left_at_rho = rec.right_at_rho = 1.0;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        const double value = std::exp(it->log_value);
        if (it->from_peak || std::abs(value - std::exp(it->log_sup)) <= tol) {
            rec.rho_left = rec.rho_right = it->time;
            rec.left_at_rho = rec.right_at_rho = value;
            rec.truncated_before_jump = false;
            break;
        }
    }
    for (std::size_t j = 0; j < strikes.size(); ++j)
        out.hedges.push_back(hedge_outcome(strikes[j], passages[j], rec.l_star_inf, 0.0));
    return out;
}

}  // namespace

PathSummary summarize(const ModelSpec& spec, Seed seed, std::span<const double> strikes) {
    if (const auto* m = std::get_if<ContinuousExp>(&spec))
        return summarize_continuous_exp(*m, seed, strikes);
    return summarize_path(simulate(spec, seed), strikes);
}

}  // namespace maxmart
