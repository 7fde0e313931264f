#pragma once

// JSON documents for instances and solutions. Output is compact with a fixed
// key order so identical inputs give identical bytes.

#include <string>
#include <string_view>

#include "flowsched/core.hpp"
#include "flowsched/reduction.hpp"

namespace flowsched {

/// {"m":int,"d":int,"jobs":[{"p":int,"w":int},...]}. Throws InvalidInput.
[[nodiscard]] Instance parse_instance(std::string_view text);
[[nodiscard]] std::string instance_to_json(const Instance& instance);

struct SolutionDocument {
    CostBreakdown cost;
    Schedule schedule;
};

/// Canonical schedule and cost of a feasible genome.
[[nodiscard]] SolutionDocument make_solution(const Instance& instance, const Genome& genome);

/// {"objective":int,"priority_term":int,"late_term":int,
///  "machines":[[{"job":id,"start":int,"release":int},...],...]}
[[nodiscard]] std::string solution_to_json(const SolutionDocument& solution);
[[nodiscard]] SolutionDocument parse_solution(std::string_view text);

/// Empty iff the schedule meets every invariant for the instance and the
/// objective matches the recomputed physical flowtime.
[[nodiscard]] std::vector<std::string> validate_solution(const Instance& instance, const SolutionDocument& solution);

[[nodiscard]] SubsetSumInstance parse_subset_sum(std::string_view text);
/// {"giant":id,"instance":{...},"y":int}
[[nodiscard]] std::string reduction_to_json(const ReductionOutput& output);

}  // namespace flowsched
