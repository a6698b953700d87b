#pragma once

#include <cstddef>
#include <string>

#include "maxmart/paths.hpp"

namespace maxmart {

/**
 * Per-path summary of the time of maximum.
 *
 * `left_at_rho`/`right_at_rho` are the path's left limit and value at rho,
 * where rho is rho_left for paths with continuous sup and rho_right
 * otherwise. On grid paths whose maximum lies inside a step (a bridge peak),
 * rho is the grid time closing that step and both values are the peak: the
 * underlying path is continuous and attains the peak inside the step.
 *
 * `truncated_before_jump` marks paths whose maximum is the initial value,
 * i.e. rho = sup of an empty set, reported as 0.
 */
struct MaxRecord {
    double rho_left = 0.0;
    double rho_right = 0.0;
    double l_star_inf = 0.0;
    double left_at_rho = 0.0;
    double right_at_rho = 0.0;
    bool jumped_at_max = false;
    bool truncated_before_jump = false;
};

/// Relative tolerance for L_{t-} = L*_{t-} on grid-sampled paths.
inline constexpr double kGridEqualityTolerance = 1e-12;

/// sup{t > 0 : L_{t-} = L*_{t-}}; 0 if the set is empty.
double rho_left(const CadlagPath& path);
/// sup{t > 0 : L_t = L*_t}; 0 if the set is empty.
double rho_right(const CadlagPath& path);

/// Throws StructuralError for a path with no samples past time 0.
MaxRecord max_record(const CadlagPath& path);

bool check_rho_identity(const MaxRecord& record, double tol);
bool max_attained(const MaxRecord& record);

/// Connected components of {t > 0 : max(L_{t-}, L_t) >= (1 - rel_tol) L*_inf}.
struct MaxLevelSet {
    std::size_t components = 0;
    double last_time = 0.0;
};
MaxLevelSet max_level_set(const CadlagPath& path, double rel_tol);

std::string max_record_csv_header();
std::string to_csv_row(const MaxRecord& record);

}  // namespace maxmart
