#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "maxmart/hedging.hpp"
#include "maxmart/maxtime.hpp"
#include "maxmart/models.hpp"

namespace maxmart {

/// Per-path quantities used by the batch checks.
struct PathSummary {
    MaxRecord record;
    std::vector<HedgeResult> hedges;  ///< one per requested strike
    std::size_t samples = 0;
    double horizon = 0.0;
};

PathSummary summarize_path(const CadlagPath& path, std::span<const double> strikes);

/// Equal to summarize_path(simulate(spec, seed), strikes). ContinuousExp
/// paths are summarized while they are generated and never stored.
PathSummary summarize(const ModelSpec& spec, Seed seed, std::span<const double> strikes);

/// Index-ordered f(i, summary of path i) for paths Seed{master_seed, i}.
template <class F>
auto summary_map(const ModelSpec& spec, std::size_t n, std::uint64_t master_seed, unsigned jobs,
                 std::span<const double> strikes, F&& f) {
    using R = std::decay_t<std::invoke_result_t<F&, std::size_t, const PathSummary&>>;
    validate(spec);
    if (n == 0) throw ParameterError("batch size must be at least 1");
    return parallel_map<R>(n, jobs, [&](std::size_t i) {
        return f(i, summarize(spec, Seed{master_seed, i}, strikes));
    });
}

}  // namespace maxmart
