#pragma once

// Domain model for weighted-flowtime scheduling on identical machines where
// every job's release date is a decision variable bounded by a common arrival
// deadline d.
//
// A job starting strictly before d arrives just in time and costs w·p. A job
// starting at or after d arrives exactly at d and waits in the buffer until
// its machine is free. All arithmetic is exact over 64-bit integers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flowsched {

using JobId = std::size_t;
using MachineId = std::size_t;
using Time = std::int64_t;
using Weight = std::int64_t;
using Cost = std::int64_t;

struct Job {
    Time p = 1;
    Weight w = 1;

    friend bool operator==(const Job&, const Job&) = default;
};

/// An immutable problem instance. Job ids are the indices into jobs().
///
/// Construction rejects p < 1, w < 1, m < 1, d < 0, an empty job list, and
/// instances whose worst-case cost bound n·Σp·max(w) does not fit in Cost.
class Instance {
public:
    Instance(std::vector<Job> jobs, std::size_t machines, Time deadline);

    [[nodiscard]] std::span<const Job> jobs() const { return jobs_; }
    [[nodiscard]] const Job& job(JobId j) const { return jobs_[j]; }
    [[nodiscard]] std::size_t size() const { return jobs_.size(); }
    [[nodiscard]] std::size_t machines() const { return machines_; }
    [[nodiscard]] Time deadline() const { return deadline_; }
    [[nodiscard]] Time total_processing() const { return total_processing_; }
    /// Σ w_j p_j: every job flows for at least its own processing time.
    [[nodiscard]] Cost trivial_cost() const { return trivial_cost_; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<Job> jobs_;
    std::size_t machines_;
    Time deadline_;
    Time total_processing_ = 0;
    Cost trivial_cost_ = 0;
};

/// Canonical solution encoding: a machine and a priority bit per job. The bit
/// is set when the job starts strictly before the deadline.
struct Genome {
    std::vector<MachineId> machine;
    std::vector<std::uint8_t> priority;

    Genome() = default;
    explicit Genome(std::size_t n) : machine(n, 0), priority(n, 0) {}

    [[nodiscard]] std::size_t size() const { return machine.size(); }

    friend bool operator==(const Genome&, const Genome&) = default;
};

/// Lexicographic order over the per-job (machine, priority) pairs, job 0 first.
[[nodiscard]] bool lexicographic_less(const Genome& a, const Genome& b);

struct CostBreakdown {
    Cost priority_term = 0;
    Cost late_term = 0;
    Cost total = 0;

    friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

struct ScheduledJob {
    JobId job = 0;
    Time start = 0;
    Time release = 0;

    friend bool operator==(const ScheduledJob&, const ScheduledJob&) = default;
};

/// Explicit timetable: per machine, jobs in processing order with their start
/// times and release dates. Completion is start + p.
struct Schedule {
    std::vector<std::vector<ScheduledJob>> machines;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

using JobSequences = std::vector<std::vector<JobId>>;

/// Literal single-machine cost summed over machines: each machine is busy from
/// time 0 without idle, jobs whose start is < d count w·p, every other job
/// counts w·(C − d). Throws InvalidInput unless `sequences` has one entry per
/// machine and covers every job exactly once.
[[nodiscard]] CostBreakdown evaluate_sequences(const Instance& instance, const JobSequences& sequences);

/// Throws InvalidInput when the genome's shape does not match the instance.
void check_genome_shape(const Instance& instance, const Genome& genome);

/// True iff on every machine the priority set S is empty or Σ_S p − max_S p < d,
/// i.e. all priority jobs can start strictly before d with the longest last.
[[nodiscard]] bool is_feasible(const Instance& instance, const Genome& genome);

/// True iff some late job could have its priority bit set on its own machine
/// without breaking feasibility. Throws ContractViolation on infeasible input.
[[nodiscard]] bool is_dominated(const Instance& instance, const Genome& genome);

/// Cost of the canonical schedule of a feasible genome: per machine with
/// T = Σ_S p, late jobs run in WSPT order from max(T, d). Throws
/// ContractViolation on infeasible input.
[[nodiscard]] CostBreakdown evaluate_genome(const Instance& instance, const Genome& genome);

/// Canonical timetable of a feasible genome: priority jobs by ascending p (id
/// ties) then late jobs in WSPT order, the block shifted right by max(0, d − T)
/// so that late jobs never start before d.
[[nodiscard]] Schedule canonicalize(const Instance& instance, const Genome& genome);

/// Every violated schedule invariant, one message each. `canonical_releases`
/// additionally demands r = s for jobs starting before d and r = d otherwise.
[[nodiscard]] std::vector<std::string> schedule_violations(const Instance& instance, const Schedule& schedule,
                                                           bool canonical_releases = true);

/// Σ w_j (C_j − r_j) from explicit times. Throws InvalidSchedule when jobs are
/// missing or duplicated, intervals overlap, or some r_j > min(s_j, d).
[[nodiscard]] Cost physical_flowtime(const Instance& instance, const Schedule& schedule);

/// Per-machine job sequences of a schedule.
[[nodiscard]] JobSequences sequences_of(const Schedule& schedule);

/// Running Σp and max p of one machine's priority set.
struct PriorityLoad {
    Time sum = 0;
    Time longest = 0;

    /// Whether the set stays feasible after adding a job of length p.
    [[nodiscard]] bool admits(Time p, Time deadline) const {
        return sum + p - (p > longest ? p : longest) < deadline;
    }
    void add(Time p) {
        sum += p;
        if (p > longest) longest = p;
    }
};

/// Priority loads of every machine. Does not check feasibility.
[[nodiscard]] std::vector<PriorityLoad> priority_loads(const Instance& instance, const Genome& genome);

/// Reusable evaluator that caches the WSPT order. Skips all validation; the
/// caller guarantees a well-formed, feasible genome.
class GenomeEvaluator {
public:
    explicit GenomeEvaluator(const Instance& instance);

    [[nodiscard]] CostBreakdown breakdown(const Genome& genome) const;
    [[nodiscard]] Cost operator()(const Genome& genome) const { return breakdown(genome).total; }
    [[nodiscard]] const Instance& instance() const { return *instance_; }

private:
    const Instance* instance_;
    std::vector<JobId> wspt_;
};

}  // namespace flowsched
