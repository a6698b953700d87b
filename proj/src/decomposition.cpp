#include "maxmart/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace maxmart {

DProcess::DProcess(const CadlagPath& path) : sup_(path) {
    const auto sup = sup_.samples();
    samples_.reserve(sup.size());
    for (const SupSample& s : sup) samples_.push_back({s.time, 1.0 / s.left, 1.0 / s.right});
}

bool DProcess::nonincreasing() const noexcept {
    double prev = samples_.front().left;
    for (const Sample& s : samples_) {
        if (s.left > prev || s.right > s.left) return false;
        prev = s.right;
    }
    return true;
}

bool DProcess::within_unit_interval() const noexcept {
    return std::all_of(samples_.begin(), samples_.end(), [](const Sample& s) {
        return s.left >= 0.0 && s.left <= 1.0 && s.right >= 0.0 && s.right <= 1.0;
    });
}

bool DProcess::continuous() const noexcept { return sup_.is_continuous(); }

DProcess d_process(const CadlagPath& path) { return DProcess(path); }

namespace {

// Trapezoid Riemann-Stieltjes sum of -int L dD over a continuous rise of L*
// from `from` to `to`. Partition points are hitting times of a geometric
// level grid; there L_{s-} = L*_s = level and D = 1 / level.
double level_partition_sum(double from, double to) {
    const double span = std::log(to / from);
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / kStieltjesLevelStep)));
    const double ratio = std::exp(span / static_cast<double>(pieces));
    double sum = 0.0;
    double y = from;
    for (std::size_t i = 0; i < pieces; ++i) {
        const double next = i + 1 == pieces ? to : y * ratio;
        sum += 0.5 * (y + next) * (1.0 / y - 1.0 / next);
        y = next;
    }
    return sum;
}

// Contribution of segment k (from t_k to `until`) where L* rises continuously
// from sup_from to sup_to.
double continuous_increase(const CadlagPath& path, std::size_t k, double sup_from, double sup_to,
                           double until) {
    if (!(sup_to > sup_from)) return 0.0;
    if (path.interpolation() == Interpolation::ExponentialInTime && path.rate() > 0.0) {
        const Sample& s = path.samples()[k];
        // L = L* from the moment the segment reaches the old sup; there
        // -L dD = L * rate / L ds.
        const double start =
            s.right >= sup_from ? s.time : s.time + std::log(sup_from / s.right) / path.rate();
        return path.rate() * (until - start);
    }
    return level_partition_sum(sup_from, sup_to);
}

}  // namespace

FunctionTable stieltjes_a(const CadlagPath& path) {
    const SupPath sup(path);
    const auto samples = path.samples();
    const auto sups = sup.samples();
    FunctionTable table;
    table.times.reserve(samples.size());
    table.values.reserve(samples.size());
    // Atom at 0 with L_{0-} := 1 and D_{0-} := 1.
    double a = 1.0 * (1.0 - 1.0 / sups.front().right);
    table.times.push_back(0.0);
    table.values.push_back(a);
    for (std::size_t k = 1; k < samples.size(); ++k) {
        a += continuous_increase(path, k - 1, sups[k - 1].right, sups[k].left, samples[k].time);
        a += samples[k].left * (1.0 / sups[k].left - 1.0 / sups[k].right);
        table.times.push_back(samples[k].time);
        table.values.push_back(a);
    }
    return table;
}

double stieltjes_a_at(const CadlagPath& path, double t) {
    const FunctionTable table = stieltjes_a(path);
    if (t == kInfinity) return table.values.back();
    (void)value_at(path, t);  // domain check
    const std::size_t k = path.segment_index(t);
    if (table.times[k] == t) return table.values[k];
    const SupPath sup(path);
    return table.values[k] +
           continuous_increase(path, k, sup.samples()[k].right, sup.value_at(t), t);
}

CompensatorTable compensator_poisson_death(const CadlagPath& path, double lambda,
                                           std::span<const double> extra_times) {
    const auto samples = path.samples();
    const bool shaped = path.interpolation() == Interpolation::ExponentialInTime &&
                        path.rate() == lambda && samples.size() == 2 &&
                        samples[1].is_jump() && samples[1].right == 0.0 &&
                        path.terminal_value() == 0.0;
    if (!shaped) throw ModelMismatch("path is not a PoissonDeath path with this rate");
    const double tau = path.horizon();
    CompensatorTable out;
    out.times = {0.0, tau};
    out.times.insert(out.times.end(), extra_times.begin(), extra_times.end());
    out.reproduces_path = true;
    for (double t : out.times) {
        const double a = lambda * std::min(t, tau);
        out.a.push_back(a);
        out.y.push_back(-a);
        const double expected = t < tau ? std::exp(-(-a)) : 0.0;
        const double actual = t <= tau ? value_at(path, t) : path.terminal_value();
        if (actual != expected) out.reproduces_path = false;
    }
    return out;
}

std::vector<double> d_at_rho_samples(std::span<const MaxRecord> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const MaxRecord& r : records)
        if (!r.truncated_before_jump) out.push_back(1.0 / r.l_star_inf);
    if (out.empty()) throw std::invalid_argument("no usable max records");
    return out;
}

MeanCi log_lstar_mean(std::span<const MaxRecord> records, std::size_t min_records) {
    if (records.empty() || records.size() < min_records)
        throw std::invalid_argument("insufficient sample for the mean of log L*_inf");
    std::vector<double> logs;
    logs.reserve(records.size());
    for (const MaxRecord& r : records) logs.push_back(std::log(r.l_star_inf));
    if (logs.size() < 2)
        return {logs.front(), std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), 1};
    return mean_ci(logs, 3.0);
}

DecompositionCheck check_decomposition(const CadlagPath& path) {
    const DProcess d(path);
    DecompositionCheck out;
    out.d_starts_at_one = d.samples().front().right == 1.0;
    out.d_nonincreasing = d.nonincreasing();
    out.d_in_unit_interval = d.within_unit_interval();
    out.d_continuous = d.continuous();
    const auto samples = path.samples();
    const auto sups = d.sup().samples();
    const FunctionTable a = stieltjes_a(path);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double z = samples[k].right / sups[k].right;
        out.max_product_error =
            std::max(out.max_product_error, std::abs(samples[k].right * d.samples()[k].right - z));
        const double log_sup = std::log(sups[k].right);
        out.max_a_error =
            std::max(out.max_a_error, std::abs(a.values[k] - log_sup) / (1.0 + std::abs(log_sup)));
    }
    return out;
}

std::string decomposition_csv(const CadlagPath& path, std::optional<double> lambda) {
    const DProcess d(path);
    const FunctionTable a = stieltjes_a(path);
    std::optional<CompensatorTable> closed;
    if (lambda) closed = compensator_poisson_death(path, *lambda);
    std::ostringstream out;
    out << "t,L,Lstar,D,a_stieltjes,a_closed_form\n";
    const auto samples = path.samples();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        out << format_double(samples[k].time) << ',' << format_double(samples[k].right) << ','
            << format_double(d.sup().samples()[k].right) << ','
            << format_double(d.samples()[k].right) << ',' << format_double(a.values[k]) << ',';
        if (closed) out << format_double(closed->a[k]);
        out << '\n';
    }
    return out.str();
}

}  // namespace maxmart
