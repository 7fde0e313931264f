#pragma once

// WSPT ordering and the constructive baselines: the deadline-blind naive
// solution, round robin and first free list scheduling.

#include <span>
#include <vector>

#include "flowsched/core.hpp"

namespace flowsched {

/// Job ids sorted by non-decreasing p/w, compared as p_j·w_k vs p_k·w_j, ties
/// by ascending id.
[[nodiscard]] std::vector<JobId> wspt_order(std::span<const Job> jobs);

/// True iff job a precedes job b under WSPT with id tie-break.
[[nodiscard]] bool wspt_before(std::span<const Job> jobs, JobId a, JobId b);

/// Single machine WSPT schedule that ignores the deadline. A job gets the
/// priority bit iff its WSPT start is < d. Throws ContractViolation if m != 1.
[[nodiscard]] Genome naive_single(const Instance& instance);

/// The deadline-blind baseline for any m: naive_single when m == 1, otherwise
/// WSPT list scheduling onto the first free machine with bits derived from the
/// resulting starts. No fill-up, so the genome may be dominated.
[[nodiscard]] Genome naive(const Instance& instance);

/// Job at WSPT position t goes to machine t mod m; bits from the starts, then
/// promote_in_wspt_order.
[[nodiscard]] Genome assign_round_robin(const Instance& instance);

/// WSPT list scheduling onto the least loaded machine (lowest index on ties);
/// bits from the starts, then promote_in_wspt_order.
[[nodiscard]] Genome assign_first_free(const Instance& instance);

/// Deterministic fill-up: visits late jobs in WSPT order and sets the priority
/// bit whenever the job's machine still admits it. The result is feasible and
/// non-dominated. Throws ContractViolation on infeasible input.
[[nodiscard]] Genome promote_in_wspt_order(const Instance& instance, Genome genome);

}  // namespace flowsched
