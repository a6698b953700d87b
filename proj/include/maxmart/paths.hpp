#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxmart {

/// Raised for malformed inputs that have no valid interpretation (empty paths etc.).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// How a path moves strictly between two stored samples.
enum class Interpolation {
    ExponentialInTime,  ///< right_value * exp(rate * (t - t_k))
    PiecewiseConstant,  ///< right_value held until the next sample
    GridSampled,        ///< linear between grid points; optional per-step peaks
};

std::string_view to_string(Interpolation) noexcept;
Interpolation interpolation_from_string(std::string_view);

struct Sample {
    double time = 0.0;
    double left = 0.0;   ///< value just before `time`
    double right = 0.0;  ///< value at `time`

    bool is_jump() const noexcept { return left != right; }
    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Sup of a grid-sampled path strictly inside step `segment` (between samples
/// segment and segment+1). The time at which it is attained is not recorded.
struct Refinement {
    std::size_t segment = 0;
    double peak = 0.0;

    friend bool operator==(const Refinement&, const Refinement&) = default;
};

/// Attached to paths whose infinite tail was cut by a drawdown stop rule.
/// The conditional probability of a new maximum after `stop_time` is at most
/// `bias_bound`, so statistics of L*_inf carry at most that bias.
struct StopCertificate {
    double stop_gap = 0.0;
    double bias_bound = 0.0;
    double stop_time = 0.0;

    friend bool operator==(const StopCertificate&, const StopCertificate&) = default;
};

/**
 * Immutable right-continuous path with left limits.
 *
 * Samples hold exact left and right values, so jumps are explicit. Values
 * between samples follow the path's interpolation rule; `terminal_value` is
 * the value assigned at t = +inf. Evaluation is allowed on [0, horizon] and
 * at +inf.
 */
class CadlagPath {
public:
    CadlagPath(std::vector<Sample> samples, double terminal_value, Interpolation interpolation,
               double rate = 0.0, std::vector<Refinement> refinements = {},
               std::optional<StopCertificate> certificate = std::nullopt);

    std::span<const Sample> samples() const noexcept { return samples_; }
    const std::vector<Refinement>& refinements() const noexcept { return refinements_; }
    double horizon() const noexcept { return samples_.back().time; }
    double terminal_value() const noexcept { return terminal_value_; }
    double initial_value() const noexcept { return samples_.front().right; }
    Interpolation interpolation() const noexcept { return interpolation_; }
    /// Growth rate of ExponentialInTime segments (negative for decay).
    double rate() const noexcept { return rate_; }
    const std::optional<StopCertificate>& certificate() const noexcept { return certificate_; }
    std::size_t size() const noexcept { return samples_.size(); }

    /// Peak recorded inside step k, if any.
    std::optional<double> peak_in_segment(std::size_t k) const;

    /// Value at an interior point of segment k (t_k < t < t_{k+1}).
    double segment_value(std::size_t k, double t) const;

    /// Index of the last sample with time <= t. Requires 0 <= t <= horizon.
    std::size_t segment_index(double t) const;

    friend bool operator==(const CadlagPath&, const CadlagPath&) = default;

private:
    std::vector<Sample> samples_;
    double terminal_value_;
    Interpolation interpolation_;
    double rate_;
    std::vector<Refinement> refinements_;
    std::optional<StopCertificate> certificate_;
};

/// Running supremum at sample times: left = sup over [0, t), right = sup over [0, t].
/// The base path's values are kept alongside for evaluation between samples.
struct SupSample {
    double time = 0.0;
    double left = 0.0;
    double right = 0.0;
    double base_left = 0.0;
    double base_right = 0.0;
};

/**
 * Running supremum L*_t of a path. Between samples the sup is
 * max(sup at t_k, base value at t); grid peaks take effect at the end of
 * their step.
 */
class SupPath {
public:
    explicit SupPath(const CadlagPath& base);

    std::span<const SupSample> samples() const noexcept { return samples_; }
    double value_at(double t) const;
    double left_limit_at(double t) const;
    /// L*_inf.
    double final_value() const noexcept { return samples_.back().right; }
    bool is_continuous() const noexcept;

private:
    double interior(std::size_t k, double t) const;

    Interpolation interpolation_;
    double rate_;
    std::vector<SupSample> samples_;
};

double value_at(const CadlagPath& path, double t);
double left_limit_at(const CadlagPath& path, double t);
SupPath running_sup(const CadlagPath& path);
std::vector<Sample> jump_list(const CadlagPath& path);
bool sup_is_continuous(const CadlagPath& path);

// Text serialization: a JSON header line followed by one CSV row per sample,
// "time,left_value,right_value,is_jump". Doubles use shortest round-trip form.
void encode_path(std::ostream& out, const CadlagPath& path);
std::string encode_path(const CadlagPath& path);
/// Reads every path in the stream (each starts with its header line).
std::vector<CadlagPath> decode_paths(std::istream& in);
CadlagPath decode_path(std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace maxmart
