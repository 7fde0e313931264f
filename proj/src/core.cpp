#include "flowsched/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "flowsched/errors.hpp"
#include "flowsched/rules.hpp"

namespace flowsched {

namespace {

bool fits_cost(unsigned __int128 value) {
    return value <= static_cast<unsigned __int128>(std::numeric_limits<Cost>::max());
}

void require_feasible(const Instance& instance, const Genome& genome, const char* op) {
    if (!is_feasible(instance, genome)) {
        throw ContractViolation(fmt::format("{}: genome is infeasible", op));
    }
}

}  // namespace

Instance::Instance(std::vector<Job> jobs, std::size_t machines, Time deadline)
    : jobs_(std::move(jobs)), machines_(machines), deadline_(deadline) {
    if (jobs_.empty()) throw InvalidInput("instance has no jobs");
    if (machines_ < 1) throw InvalidInput("instance needs at least one machine");
    if (deadline_ < 0) throw InvalidInput("deadline must be non-negative");

    unsigned __int128 sum_p = 0;
    Weight max_w = 0;
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
        const Job& job = jobs_[j];
        if (job.p < 1) throw InvalidInput(fmt::format("job {}: processing time must be >= 1", j));
        if (job.w < 1) throw InvalidInput(fmt::format("job {}: weight must be >= 1", j));
        sum_p += static_cast<unsigned __int128>(job.p);
        max_w = std::max(max_w, job.w);
    }
    // n·Σp·max w bounds every evaluated cost, including the shifted late block.
    const unsigned __int128 bound_p = sum_p + static_cast<unsigned __int128>(deadline_);
    if (!fits_cost(bound_p) || !fits_cost(bound_p * jobs_.size()) ||
        !fits_cost(bound_p * jobs_.size() * static_cast<unsigned __int128>(max_w))) {
        throw InstanceTooLarge("instance cost bound n·(Σp + d)·max(w) overflows 64-bit arithmetic");
    }
    total_processing_ = static_cast<Time>(sum_p);
    for (const Job& job : jobs_) trivial_cost_ += job.p * job.w;
}

bool lexicographic_less(const Genome& a, const Genome& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (a.machine[j] != b.machine[j]) return a.machine[j] < b.machine[j];
        if (a.priority[j] != b.priority[j]) return a.priority[j] < b.priority[j];
    }
    return a.size() < b.size();
}

CostBreakdown evaluate_sequences(const Instance& instance, const JobSequences& sequences) {
    if (sequences.size() != instance.machines()) {
        throw InvalidInput(fmt::format("expected {} machine sequences, got {}", instance.machines(), sequences.size()));
    }
    std::vector<std::uint8_t> seen(instance.size(), 0);
    CostBreakdown cost;
    const Time d = instance.deadline();
    for (const auto& sequence : sequences) {
        Time t = 0;
        for (JobId j : sequence) {
            if (j >= instance.size()) throw InvalidInput(fmt::format("unknown job id {}", j));
            if (seen[j]++) throw InvalidInput(fmt::format("job {} appears more than once", j));
            const Job& job = instance.job(j);
            if (t < d) {
                cost.priority_term += job.w * job.p;
            } else {
                cost.late_term += job.w * (t + job.p - d);
            }
            t += job.p;
        }
    }
    if (const auto missing = std::find(seen.begin(), seen.end(), 0); missing != seen.end()) {
        throw InvalidInput(fmt::format("job {} is not scheduled", missing - seen.begin()));
    }
    cost.total = cost.priority_term + cost.late_term;
    return cost;
}

void check_genome_shape(const Instance& instance, const Genome& genome) {
    if (genome.machine.size() != instance.size() || genome.priority.size() != instance.size()) {
        throw InvalidInput(fmt::format("genome has {} genes for {} jobs", genome.machine.size(), instance.size()));
    }
    for (std::size_t j = 0; j < genome.size(); ++j) {
        if (genome.machine[j] >= instance.machines()) {
            throw InvalidInput(fmt::format("job {} assigned to machine {} of {}", j, genome.machine[j],
                                           instance.machines()));
        }
    }
}

std::vector<PriorityLoad> priority_loads(const Instance& instance, const Genome& genome) {
    std::vector<PriorityLoad> loads(instance.machines());
    for (JobId j = 0; j < genome.size(); ++j) {
        if (genome.priority[j]) loads[genome.machine[j]].add(instance.job(j).p);
    }
    return loads;
}

bool is_feasible(const Instance& instance, const Genome& genome) {
    check_genome_shape(instance, genome);
    for (const PriorityLoad& load : priority_loads(instance, genome)) {
        if (load.sum > 0 && load.sum - load.longest >= instance.deadline()) return false;
    }
    return true;
}

bool is_dominated(const Instance& instance, const Genome& genome) {
    require_feasible(instance, genome, "is_dominated");
    const auto loads = priority_loads(instance, genome);
    for (JobId j = 0; j < genome.size(); ++j) {
        if (!genome.priority[j] && loads[genome.machine[j]].admits(instance.job(j).p, instance.deadline())) {
            return true;
        }
    }
    return false;
}

GenomeEvaluator::GenomeEvaluator(const Instance& instance)
    : instance_(&instance), wspt_(wspt_order(instance.jobs())) {}

CostBreakdown GenomeEvaluator::breakdown(const Genome& genome) const {
    const Instance& inst = *instance_;
    const Time d = inst.deadline();
    std::vector<Time> clock(inst.machines(), 0);
    CostBreakdown cost;
    for (JobId j = 0; j < genome.size(); ++j) {
        if (genome.priority[j]) {
            const Job& job = inst.job(j);
            clock[genome.machine[j]] += job.p;
            cost.priority_term += job.w * job.p;
        }
    }
    for (Time& t : clock) t = std::max(t, d);
    for (JobId j : wspt_) {
        if (genome.priority[j]) continue;
        const Job& job = inst.job(j);
        Time& t = clock[genome.machine[j]];
        t += job.p;
        cost.late_term += job.w * (t - d);
    }
    cost.total = cost.priority_term + cost.late_term;
    return cost;
}

CostBreakdown evaluate_genome(const Instance& instance, const Genome& genome) {
    require_feasible(instance, genome, "evaluate_genome");
    return GenomeEvaluator(instance).breakdown(genome);
}

Schedule canonicalize(const Instance& instance, const Genome& genome) {
    require_feasible(instance, genome, "canonicalize");
    const Time d = instance.deadline();
    std::vector<std::vector<JobId>> early(instance.machines());
    std::vector<std::vector<JobId>> late(instance.machines());
    for (JobId j : wspt_order(instance.jobs())) {
        (genome.priority[j] ? early : late)[genome.machine[j]].push_back(j);
    }

    Schedule schedule;
    schedule.machines.resize(instance.machines());
    for (MachineId i = 0; i < instance.machines(); ++i) {
        auto& prio = early[i];
        std::sort(prio.begin(), prio.end(), [&](JobId a, JobId b) {
            const Time pa = instance.job(a).p;
            const Time pb = instance.job(b).p;
            return pa != pb ? pa < pb : a < b;
        });
        Time block = 0;
        for (JobId j : prio) block += instance.job(j).p;
        Time t = std::max<Time>(0, d - block);
        auto& row = schedule.machines[i];
        for (JobId j : prio) {
            row.push_back({j, t, t});
            t += instance.job(j).p;
        }
        for (JobId j : late[i]) {
            row.push_back({j, t, d});
            t += instance.job(j).p;
        }
    }
    return schedule;
}

std::vector<std::string> schedule_violations(const Instance& instance, const Schedule& schedule,
                                             bool canonical_releases) {
    std::vector<std::string> out;
    if (schedule.machines.size() != instance.machines()) {
        out.push_back(fmt::format("schedule has {} machines, instance has {}", schedule.machines.size(),
                                  instance.machines()));
    }
    const Time d = instance.deadline();
    std::vector<int> seen(instance.size(), 0);
    for (std::size_t i = 0; i < schedule.machines.size(); ++i) {
        Time free_at = 0;
        for (const ScheduledJob& s : schedule.machines[i]) {
            if (s.job >= instance.size()) {
                out.push_back(fmt::format("machine {}: unknown job {}", i, s.job));
                continue;
            }
            ++seen[s.job];
            if (s.start < free_at) out.push_back(fmt::format("job {} overlaps its predecessor on machine {}", s.job, i));
            if (s.release < 0) out.push_back(fmt::format("job {} has a negative release date", s.job));
            if (s.release > s.start) out.push_back(fmt::format("job {} starts before its release", s.job));
            if (s.release > d) out.push_back(fmt::format("job {} is released after the deadline", s.job));
            if (canonical_releases) {
                const Time expected = s.start < d ? s.start : d;
                if (s.release != expected) {
                    out.push_back(fmt::format("job {} release {} is not the canonical {}", s.job, s.release, expected));
                }
            }
            free_at = s.start + instance.job(s.job).p;
        }
    }
    for (JobId j = 0; j < instance.size(); ++j) {
        if (seen[j] != 1) out.push_back(fmt::format("job {} is scheduled {} times", j, seen[j]));
    }
    return out;
}

Cost physical_flowtime(const Instance& instance, const Schedule& schedule) {
    if (auto problems = schedule_violations(instance, schedule, false); !problems.empty()) {
        throw InvalidSchedule(problems.front());
    }
    Cost total = 0;
    for (const auto& row : schedule.machines) {
        for (const ScheduledJob& s : row) {
            const Job& job = instance.job(s.job);
            total += job.w * (s.start + job.p - s.release);
        }
    }
    return total;
}

JobSequences sequences_of(const Schedule& schedule) {
    JobSequences out;
    out.reserve(schedule.machines.size());
    for (const auto& row : schedule.machines) {
        auto& seq = out.emplace_back();
        for (const ScheduledJob& s : row) seq.push_back(s.job);
    }
    return out;
}

}  // namespace flowsched
