#pragma once

#include <vector>

#include "flowsched/core.hpp"

namespace flowsched {

struct LowerBoundDetail {
    Cost trivial = 0;             ///< Σ w·p
    std::size_t late_count = 0;   ///< b, a lower bound on the number of late jobs
    Time min_p = 0;
    std::vector<JobId> sigma;     ///< job ids by ascending weight, id ties
    Cost value = 0;
};

/// Largest k such that the k shortest jobs can all start strictly before d,
/// i.e. the sum of the k − 1 shortest is < d. Requires m == 1.
[[nodiscard]] std::size_t max_priority_count(const Instance& instance);

/// Single machine lower bound on the optimum.
///
/// At least b = n − max_priority_count jobs are late, every late job waits for
/// the late jobs before it, and each of those lasts at least min p. The
/// cheapest way to charge those waits is to put the b lightest jobs late with
/// the heaviest of them first, giving
///     value = Σ w·p + min p · Σ_{t=1..b} (b − t)·w_{σ(t)}
/// with σ ascending by weight. Requires m == 1.
[[nodiscard]] LowerBoundDetail lower_bound(const Instance& instance);

}  // namespace flowsched
