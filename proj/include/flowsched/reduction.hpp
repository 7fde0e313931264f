#pragma once

// Giant-job machinery and the executable reduction from subset sum to the
// single machine decision problem.
//
// A giant job g has p_g > 2·(Σ_{J−g} w)(Σ_{J−g} p) and w_g > p_g·max_{J−g} w.
// It must start no later than d, and with it present a cost threshold y exists
// that is reachable iff the other jobs' priority set can fill [0, d) exactly.
// Threshold arithmetic is carried in arbitrary precision.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flowsched/core.hpp"

namespace flowsched {

using BigInt = boost::multiprecision::cpp_int;

struct SubsetSumInstance {
    std::vector<std::int64_t> values;
    std::int64_t target = 0;
};

struct ReductionOutput {
    Instance instance;
    BigInt threshold;
    JobId giant_id;
};

inline constexpr std::int64_t default_reduction_magnitude_cap = 1000;

/// Both giant conditions in exact arithmetic. A single-job instance has no
/// giant.
[[nodiscard]] bool is_giant(const Instance& instance, JobId job);

/// The giant job of an instance, if any (it is unique when it exists).
[[nodiscard]] std::optional<JobId> find_giant(const Instance& instance);

/// Jobs 0..n−1 with p = w = a_i, giant n with p_g = 2A² + 1 and
/// w_g = p_g·max a + 1, d = target, y = A² + p_g·(A − target + w_g).
/// Throws InvalidInput on non-positive values or target and InstanceTooLarge
/// when A exceeds `magnitude_cap`.
[[nodiscard]] ReductionOutput encode_subset_sum(const SubsetSumInstance& ssi,
                                                std::int64_t magnitude_cap = default_reduction_magnitude_cap);

/// w_g p_g + (Σ_{J−g} w)(Σ_{J−g} p) + p_g·Σ_{k∈late} w_k. Throws
/// ContractViolation if the instance has no giant or `late_without_giant`
/// contains the giant or an unknown id.
[[nodiscard]] BigInt giant_upper_bound(const Instance& instance, const std::vector<JobId>& late_without_giant);

enum class GiantRule {
    starts_after_deadline,  ///< the giant starts strictly later than d
    fits_before_giant,      ///< a job after the giant would finish by d if moved directly before it
};

struct GiantViolation {
    GiantRule rule;
    JobId job;

    friend bool operator==(const GiantViolation&, const GiantViolation&) = default;
};

[[nodiscard]] std::string to_string(GiantRule rule);

/// Empty iff the single machine schedule satisfies both dominance rules of
/// optimal schedules with a giant. Throws ContractViolation when there is no
/// giant or the schedule uses more than one machine.
[[nodiscard]] std::vector<GiantViolation> giant_dominance_violations(const Instance& instance,
                                                                     const Schedule& schedule);

}  // namespace flowsched
