#include "maxmart/paths.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace maxmart {

namespace {

bool valid_value(double v) { return std::isfinite(v) && v >= 0.0; }

double interpolate(Interpolation rule, double rate, double t0, double v0, double t1, double v1,
                   double t) {
    switch (rule) {
        case Interpolation::ExponentialInTime:
            return v0 * std::exp(rate * (t - t0));
        case Interpolation::PiecewiseConstant:
            return v0;
        case Interpolation::GridSampled:
            return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
    }
    return v0;
}

void require_time(double t) {
    if (std::isnan(t) || t < 0.0) throw std::domain_error("path time must be nonnegative");
}

double parse_double(std::string_view field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw StructuralError("malformed number in path CSV: '" + std::string(field) + "'");
    return v;
}

}  // namespace

std::string_view to_string(Interpolation rule) noexcept {
    switch (rule) {
        case Interpolation::ExponentialInTime:
            return "exponential-in-time";
        case Interpolation::PiecewiseConstant:
            return "piecewise-constant";
        case Interpolation::GridSampled:
            return "grid-sampled";
    }
    return "unknown";
}

Interpolation interpolation_from_string(std::string_view s) {
    if (s == "exponential-in-time") return Interpolation::ExponentialInTime;
    if (s == "piecewise-constant") return Interpolation::PiecewiseConstant;
    if (s == "grid-sampled") return Interpolation::GridSampled;
    throw StructuralError("unknown interpolation tag '" + std::string(s) + "'");
}

CadlagPath::CadlagPath(std::vector<Sample> samples, double terminal_value,
                       Interpolation interpolation, double rate,
                       std::vector<Refinement> refinements,
                       std::optional<StopCertificate> certificate)
    : samples_(std::move(samples)),
      terminal_value_(terminal_value),
      interpolation_(interpolation),
      rate_(rate),
      refinements_(std::move(refinements)),
      certificate_(certificate) {
    if (samples_.empty()) throw StructuralError("path has no samples");
    const Sample& first = samples_.front();
    if (first.time != 0.0) throw StructuralError("first sample must be at time 0");
    if (first.left != first.right) throw StructuralError("path cannot jump at time 0");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Sample& s = samples_[i];
        if (!valid_value(s.left) || !valid_value(s.right))
            throw StructuralError("path values must be finite and nonnegative");
        if (!std::isfinite(s.time)) throw StructuralError("sample times must be finite");
        if (i > 0 && !(s.time > samples_[i - 1].time))
            throw StructuralError("sample times must be strictly increasing");
    }
    if (!valid_value(terminal_value_)) throw StructuralError("terminal value must be nonnegative");
    if (!std::isfinite(rate_)) throw StructuralError("interpolation rate must be finite");
    if (!refinements_.empty() && interpolation_ != Interpolation::GridSampled)
        throw StructuralError("peak refinements only apply to grid-sampled paths");
    for (std::size_t i = 0; i < refinements_.size(); ++i) {
        const Refinement& r = refinements_[i];
        if (r.segment + 1 >= samples_.size())
            throw StructuralError("refinement refers to a missing step");
        if (i > 0 && r.segment <= refinements_[i - 1].segment)
            throw StructuralError("refinements must be ordered by step");
        const double ends = std::max(samples_[r.segment].right, samples_[r.segment + 1].left);
        if (!valid_value(r.peak) || r.peak < ends)
            throw StructuralError("refinement peak below its step endpoints");
    }
}

std::optional<double> CadlagPath::peak_in_segment(std::size_t k) const {
    auto it = std::lower_bound(refinements_.begin(), refinements_.end(), k,
                               [](const Refinement& r, std::size_t s) { return r.segment < s; });
    if (it != refinements_.end() && it->segment == k) return it->peak;
    return std::nullopt;
}

double CadlagPath::segment_value(std::size_t k, double t) const {
    const Sample& a = samples_[k];
    const Sample& b = samples_[std::min(k + 1, samples_.size() - 1)];
    return interpolate(interpolation_, rate_, a.time, a.right, b.time, b.left, t);
}

std::size_t CadlagPath::segment_index(double t) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const Sample& s) { return v < s.time; });
    return static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1;
}

double value_at(const CadlagPath& path, double t) {
    if (t == kInfinity) return path.terminal_value();
    require_time(t);
    if (t > path.horizon())
        throw std::domain_error("time lies between the horizon and +inf");
    const std::size_t k = path.segment_index(t);
    const Sample& s = path.samples()[k];
    if (s.time == t) return s.right;
    return path.segment_value(k, t);
}

double left_limit_at(const CadlagPath& path, double t) {
    require_time(t);
    if (t == 0.0) throw std::domain_error("left limit at time 0 is not a path value");
    if (t > path.horizon()) throw std::domain_error("left limit requested beyond the horizon");
    const auto samples = path.samples();
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const Sample& s, double v) { return s.time < v; });
    if (it->time == t) return it->left;
    const auto k = static_cast<std::size_t>(std::distance(samples.begin(), it)) - 1;
    return path.segment_value(k, t);
}

SupPath::SupPath(const CadlagPath& base)
    : interpolation_(base.interpolation()), rate_(base.rate()) {
    const auto samples = base.samples();
    samples_.reserve(samples.size());
    const Sample& s0 = samples.front();
    samples_.push_back({s0.time, s0.right, s0.right, s0.left, s0.right});
    const auto& refinements = base.refinements();
    auto next_ref = refinements.begin();
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const Sample& s = samples[k];
        double sup = std::max(samples_.back().right, s.left);
        if (next_ref != refinements.end() && next_ref->segment == k - 1) {
            sup = std::max(sup, next_ref->peak);
            ++next_ref;
        }
        samples_.push_back({s.time, sup, std::max(sup, s.right), s.left, s.right});
    }
}

double SupPath::interior(std::size_t k, double t) const {
    const SupSample& a = samples_[k];
    const SupSample& b = samples_[k + 1];
    return std::max(a.right,
                    interpolate(interpolation_, rate_, a.time, a.base_right, b.time, b.base_left, t));
}

double SupPath::value_at(double t) const {
    if (t == kInfinity) return final_value();
    require_time(t);
    if (t > samples_.back().time) throw std::domain_error("time lies between the horizon and +inf");
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const SupSample& s) { return v < s.time; });
    const auto k = static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1;
    if (samples_[k].time == t) return samples_[k].right;
    return interior(k, t);
}

double SupPath::left_limit_at(double t) const {
    require_time(t);
    if (t == 0.0) throw std::domain_error("left limit at time 0 is not a path value");
    if (t > samples_.back().time) throw std::domain_error("left limit requested beyond the horizon");
    auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                               [](const SupSample& s, double v) { return s.time < v; });
    if (it->time == t) return it->left;
    return interior(static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1, t);
}

bool SupPath::is_continuous() const noexcept {
    return std::all_of(samples_.begin(), samples_.end(),
                       [](const SupSample& s) { return s.left == s.right; });
}

SupPath running_sup(const CadlagPath& path) { return SupPath(path); }

std::vector<Sample> jump_list(const CadlagPath& path) {
    std::vector<Sample> jumps;
    for (const Sample& s : path.samples())
        if (s.is_jump()) jumps.push_back(s);
    return jumps;
}

bool sup_is_continuous(const CadlagPath& path) {
    const auto samples = path.samples();
    double sup = samples.front().right;
    std::size_t ref = 0;
    const auto& refs = path.refinements();
    for (std::size_t k = 1; k < samples.size(); ++k) {
        sup = std::max(sup, samples[k].left);
        if (ref < refs.size() && refs[ref].segment == k - 1) sup = std::max(sup, refs[ref++].peak);
        if (samples[k].is_jump() && samples[k].right > sup) return false;
        sup = std::max(sup, samples[k].right);
    }
    return true;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
    return std::string(buf, ptr);
}

void encode_path(std::ostream& out, const CadlagPath& path) {
    nlohmann::json header;
    header["horizon"] = path.horizon();
    header["terminal_value"] = path.terminal_value();
    header["interpolation"] = std::string(to_string(path.interpolation()));
    header["rate"] = path.rate();
    header["samples"] = path.size();
    auto refs = nlohmann::json::array();
    for (const auto& r : path.refinements()) refs.push_back({r.segment, r.peak});
    header["refinements"] = std::move(refs);
    if (const auto& c = path.certificate()) {
        header["certificate"] = {{"stop_gap", c->stop_gap},
                                 {"bias_bound", c->bias_bound},
                                 {"stop_time", c->stop_time}};
    } else {
        header["certificate"] = nullptr;
    }
    out << header.dump() << '\n';
    for (const Sample& s : path.samples()) {
        out << format_double(s.time) << ',' << format_double(s.left) << ','
            << format_double(s.right) << ',' << (s.is_jump() ? 1 : 0) << '\n';
    }
}

std::string encode_path(const CadlagPath& path) {
    std::ostringstream out;
    encode_path(out, path);
    return out.str();
}

std::vector<CadlagPath> decode_paths(std::istream& in) {
    std::vector<CadlagPath> paths;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() != '{') throw StructuralError("expected a path header line");
        nlohmann::json header;
        try {
            header = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw StructuralError(std::string("bad path header: ") + e.what());
        }
        const auto n = header.at("samples").get<std::size_t>();
        std::vector<Sample> samples;
        samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(in, line)) throw StructuralError("path CSV truncated");
            std::string_view row(line);
            std::array<std::string_view, 4> fields;
            for (std::size_t f = 0; f < 4; ++f) {
                const auto comma = row.find(',');
                if ((comma == std::string_view::npos) != (f == 3))
                    throw StructuralError("path CSV row must have 4 columns");
                fields[f] = row.substr(0, comma);
                row = comma == std::string_view::npos ? std::string_view{} : row.substr(comma + 1);
            }
            Sample s{parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2])};
            if ((fields[3] == "1") != s.is_jump())
                throw StructuralError("is_jump column disagrees with values");
            samples.push_back(s);
        }
        std::vector<Refinement> refs;
        for (const auto& r : header.at("refinements"))
            refs.push_back({r.at(0).get<std::size_t>(), r.at(1).get<double>()});
        std::optional<StopCertificate> cert;
        if (const auto& c = header.at("certificate"); !c.is_null())
            cert = StopCertificate{c.at("stop_gap").get<double>(), c.at("bias_bound").get<double>(),
                                   c.at("stop_time").get<double>()};
        paths.emplace_back(std::move(samples), header.at("terminal_value").get<double>(),
                           interpolation_from_string(header.at("interpolation").get<std::string>()),
                           header.at("rate").get<double>(), std::move(refs), cert);
    }
    return paths;
}

CadlagPath decode_path(std::string_view text) {
    std::istringstream in{std::string(text)};
    auto paths = decode_paths(in);
    if (paths.size() != 1) throw StructuralError("expected exactly one path");
    return std::move(paths.front());
}

}  // namespace maxmart
