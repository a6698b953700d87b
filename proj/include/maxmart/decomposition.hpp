#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxmart/maxtime.hpp"
#include "maxmart/paths.hpp"
#include "maxmart/stats.hpp"

namespace maxmart {

/// A path does not come from the generator an operation requires.
class ModelMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// D = 1 / L*: nonincreasing, D_0 = 1 when L_0 = 1.
class DProcess {
public:
    explicit DProcess(const CadlagPath& path);

    /// (time, D_{t-}, D_t) at the path's sample times.
    std::span<const Sample> samples() const noexcept { return samples_; }
    double value_at(double t) const { return 1.0 / sup_.value_at(t); }
    const SupPath& sup() const noexcept { return sup_; }

    bool nonincreasing() const noexcept;
    bool within_unit_interval() const noexcept;
    bool continuous() const noexcept;

private:
    SupPath sup_;
    std::vector<Sample> samples_;
};

DProcess d_process(const CadlagPath& path);

struct FunctionTable {
    std::vector<double> times;
    std::vector<double> values;
};

/// Relative level step of the Riemann-Stieltjes partition on grid segments.
inline constexpr double kStieltjesLevelStep = 1e-3;

/**
 * a_t = -int_{[0,t]} L_{s-} dD_s with D = 1/L* and L_{0-} := 1, at every
 * sample time. Exponential-in-time segments are integrated in closed form;
 * other continuous increases use a trapezoid Riemann-Stieltjes sum whose
 * partition points are the hitting times of a geometric level grid; sup
 * jumps contribute -L_{t-} (D_t - D_{t-}).
 */
FunctionTable stieltjes_a(const CadlagPath& path);
double stieltjes_a_at(const CadlagPath& path, double t);

struct CompensatorTable {
    std::vector<double> times;
    std::vector<double> a;  ///< lambda (t ^ tau)
    std::vector<double> y;  ///< -lambda (t ^ tau)
    bool reproduces_path = false;  ///< L_t == exp(-Y_t) 1{t < tau} at every time
};

/// Closed-form compensator of a PoissonDeath path at its sample times and
/// any extra query times. Throws ModelMismatch for other paths.
CompensatorTable compensator_poisson_death(const CadlagPath& path, double lambda,
                                           std::span<const double> extra_times = {});

/// D_rho = 1 / L*_inf for every record not flagged as truncated.
std::vector<double> d_at_rho_samples(std::span<const MaxRecord> records);

/// Mean of log L*_inf with a 3-sigma half-width (infinite below two records).
MeanCi log_lstar_mean(std::span<const MaxRecord> records, std::size_t min_records = 1000);

/// Pathwise checks of the (L, D) pair and of a = log L*.
struct DecompositionCheck {
    bool d_starts_at_one = false;
    bool d_nonincreasing = false;
    bool d_in_unit_interval = false;
    bool d_continuous = false;
    double max_product_error = 0.0;  ///< max |L D - L / L*| over samples
    double max_a_error = 0.0;        ///< max |a_t - log L*_t| / (1 + |log L*_t|)
};

DecompositionCheck check_decomposition(const CadlagPath& path);

/// "t,L,Lstar,D,a_stieltjes,a_closed_form" rows at the path's sample times;
/// the closed form is only filled when `lambda` is given (PoissonDeath).
std::string decomposition_csv(const CadlagPath& path, std::optional<double> lambda = std::nullopt);

}  // namespace maxmart
