#pragma once

// Exhaustive oracles. brute_force enumerates every (machine, priority bit)
// assignment, which by the partition argument covers every canonical schedule.

#include <cstdint>
#include <span>

#include "flowsched/core.hpp"

namespace flowsched {

inline constexpr std::uint64_t default_search_cap = std::uint64_t{1} << 24;

struct ExactResult {
    Genome genome;
    CostBreakdown cost;
};

/// Optimal genome under evaluate_genome; the lexicographically smallest one
/// among ties. Throws InstanceTooLarge when (2m)^n exceeds `cap`.
[[nodiscard]] ExactResult brute_force(const Instance& instance, std::uint64_t cap = default_search_cap);

/// Number of genomes brute_force would visit, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t search_space_size(const Instance& instance);

/// Whether some subset of `values` sums to exactly `target`.
[[nodiscard]] bool subset_sum_solvable(std::span<const std::int64_t> values, std::int64_t target);

}  // namespace flowsched
