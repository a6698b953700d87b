#include "maxmart/maxtime.hpp"

#include <algorithm>
#include <cmath>

namespace maxmart {

namespace {

struct Hit {
    double time = 0.0;
    bool found = false;
    bool from_peak = false;
    double peak = 0.0;
};

struct RhoScan {
    Hit left;
    Hit right;
    double l_star = 0.0;
};

double overall_sup(const CadlagPath& path) {
    double sup = 0.0;
    for (const Sample& s : path.samples()) sup = std::max({sup, s.left, s.right});
    for (const Refinement& r : path.refinements()) sup = std::max(sup, r.peak);
    return sup;
}

// Equality with the running sup is exact on jump models, where the generator
// writes the same double into the path and the sup. Grid paths use a
// relative tolerance.
RhoScan scan_rho(const CadlagPath& path) {
    const auto samples = path.samples();
    if (samples.size() < 2) throw StructuralError("path has no samples beyond time 0");
    RhoScan out;
    out.l_star = overall_sup(path);
    const double tol = path.interpolation() == Interpolation::GridSampled
                           ? kGridEqualityTolerance * out.l_star
                           : 0.0;
    const auto& refs = path.refinements();
    std::size_t ref = 0;
    double sup = samples.front().right;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const Sample& s = samples[k];
        double sup_left = std::max(sup, s.left);
        bool peak_here = false;
        double peak = 0.0;
        if (ref < refs.size() && refs[ref].segment == k - 1) {
            peak = refs[ref++].peak;
            sup_left = std::max(sup_left, peak);
            peak_here = peak >= sup_left - tol;
        }
        if (peak_here) {
            out.left = {s.time, true, true, peak};
            out.right = out.left;
        } else if (std::abs(s.left - sup_left) <= tol) {
            // Also the right end of an interval where L = L* inside the segment.
            out.left = {s.time, true, false, 0.0};
            out.right = out.left;
        }
        const double sup_right = std::max(sup_left, s.right);
        if (std::abs(s.right - sup_right) <= tol) out.right = {s.time, true, false, 0.0};
        sup = sup_right;
    }
    return out;
}

}  // namespace

double rho_left(const CadlagPath& path) { return scan_rho(path).left.time; }

double rho_right(const CadlagPath& path) { return scan_rho(path).right.time; }

MaxRecord max_record(const CadlagPath& path) {
    const RhoScan scan = scan_rho(path);
    MaxRecord rec;
    rec.rho_left = scan.left.time;
    rec.rho_right = scan.right.time;
    rec.l_star_inf = scan.l_star;
    const Hit& hit = sup_is_continuous(path) ? scan.left : scan.right;
    rec.truncated_before_jump = !hit.found;
    if (!hit.found) {
        rec.left_at_rho = rec.right_at_rho = path.initial_value();
    } else if (hit.from_peak) {
        rec.left_at_rho = rec.right_at_rho = hit.peak;
    } else {
        rec.left_at_rho = left_limit_at(path, hit.time);
        rec.right_at_rho = value_at(path, hit.time);
    }
    rec.jumped_at_max = rec.left_at_rho != rec.right_at_rho;
    return rec;
}

bool check_rho_identity(const MaxRecord& record, double tol) {
    return std::abs(record.rho_left - record.rho_right) <= tol;
}

bool max_attained(const MaxRecord& record) { return record.right_at_rho == record.l_star_inf; }

MaxLevelSet max_level_set(const CadlagPath& path, double rel_tol) {
    const auto samples = path.samples();
    const double threshold = (1.0 - rel_tol) * overall_sup(path);
    MaxLevelSet out;
    bool previous_in = false;
    // Walk the set in time order: just after t_{k-1}, the step interior,
    // just before t_k, then the left limit at t_k itself.
    auto visit = [&](bool in, double report_time) {
        if (in && !previous_in) ++out.components;
        if (in) out.last_time = report_time;
        previous_in = in;
    };
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const bool start = samples[k - 1].right >= threshold;
        const bool end = samples[k].left >= threshold;
        const auto peak = path.peak_in_segment(k - 1);
        const bool middle = (start && end) || (peak && *peak >= threshold);
        visit(start, samples[k - 1].time);
        visit(middle, samples[k].time);
        visit(end, samples[k].time);
        visit(end, samples[k].time);
    }
    return out;
}

std::string max_record_csv_header() {
    return "rho_left,rho_right,l_star_inf,left_at_rho,right_at_rho,jumped_at_max,truncated";
}

std::string to_csv_row(const MaxRecord& r) {
    return format_double(r.rho_left) + ',' + format_double(r.rho_right) + ',' +
           format_double(r.l_star_inf) + ',' + format_double(r.left_at_rho) + ',' +
           format_double(r.right_at_rho) + ',' + (r.jumped_at_max ? "1" : "0") + ',' +
           (r.truncated_before_jump ? "1" : "0");
}

}  // namespace maxmart
