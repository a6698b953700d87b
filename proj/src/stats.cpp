#include "maxmart/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxmart {

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("ECDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(std::distance(sorted_.begin(), it)) /
           static_cast<double>(sorted_.size());
}

Ecdf ecdf(std::span<const double> samples) {
    return Ecdf(std::vector<double>(samples.begin(), samples.end()));
}

double kolmogorov_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (alpha == 0.01) return 1.628;
    if (alpha == 0.05) return 1.358;
    return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

namespace {

std::vector<double> sorted_unit_sample(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("KS test of an empty sample");
    std::vector<double> u(samples.begin(), samples.end());
    for (double v : u)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("KS sample value outside [0, 1]");
    std::sort(u.begin(), u.end());
    return u;
}

}  // namespace

KsVerdict ks_uniform(std::span<const double> samples, double alpha, double slack) {
    const auto u = sorted_unit_sample(samples);
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double above = static_cast<double>(i + 1) / n - u[i];
        const double below = u[i] - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    KsVerdict v{u.size(), d, kolmogorov_critical_value(alpha) / std::sqrt(n) + slack, alpha, false};
    v.pass = v.d_stat < v.threshold;
    return v;
}

KsVerdict ks_dominates_uniform(std::span<const double> samples, double alpha, double slack) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const auto u = sorted_unit_sample(samples);
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        d = std::max(d, static_cast<double>(i + 1) / n - u[i]);
    KsVerdict v{u.size(), d, std::sqrt(-0.5 * std::log(alpha)) / std::sqrt(n) + slack, alpha, false};
    v.pass = v.d_stat < v.threshold;
    return v;
}

MeanCi mean_ci(std::span<const double> samples, double k_sigma) {
    if (samples.size() < 2) throw std::invalid_argument("mean CI needs at least two samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return {mean, k_sigma * se, se, samples.size()};
}

Proportion proportion(std::size_t hits, std::size_t n) {
    if (n == 0) throw std::invalid_argument("proportion of zero trials");
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), hits, n};
}

}  // namespace maxmart
