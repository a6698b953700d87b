#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maxmart {

/// Right-continuous empirical CDF.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> samples);

    /// Fraction of samples <= x.
    double operator()(double x) const;
    std::span<const double> sorted() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

Ecdf ecdf(std::span<const double> samples);

/// Asymptotic Kolmogorov critical value c(alpha): 1.628 at 0.01, 1.358 at 0.05,
/// otherwise sqrt(-ln(alpha / 2) / 2).
double kolmogorov_critical_value(double alpha);

struct KsVerdict {
    std::size_t n = 0;
    double d_stat = 0.0;
    double threshold = 0.0;
    double alpha = 0.0;
    bool pass = false;
};

/// Two-sided KS test against Uniform(0, 1); pass iff d < c(alpha)/sqrt(n) + slack.
KsVerdict ks_uniform(std::span<const double> samples, double alpha, double slack = 0.0);

/// One-sided test of F_n(u) <= u (the sample is stochastically at least
/// uniform). d = sup(F_n(u) - u); threshold sqrt(-ln(alpha) / 2)/sqrt(n) + slack.
KsVerdict ks_dominates_uniform(std::span<const double> samples, double alpha, double slack = 0.0);

struct MeanCi {
    double mean = 0.0;
    double halfwidth = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean +- k * sd / sqrt(n). Requires n >= 2.
MeanCi mean_ci(std::span<const double> samples, double k_sigma);

struct Proportion {
    double p = 0.0;
    double std_error = 0.0;
    std::size_t hits = 0;
    std::size_t n = 0;
};

/// Binomial frequency with standard error sqrt(p (1 - p) / n).
Proportion proportion(std::size_t hits, std::size_t n);

}  // namespace maxmart
