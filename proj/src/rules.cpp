#include "flowsched/rules.hpp"

#include <algorithm>
#include <numeric>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

// Bits from the start times of a deadline-blind list schedule.
Genome list_schedule(const Instance& instance, bool round_robin) {
    const auto order = wspt_order(instance.jobs());
    Genome genome(instance.size());
    std::vector<Time> load(instance.machines(), 0);
    for (std::size_t t = 0; t < order.size(); ++t) {
        const JobId j = order[t];
        MachineId i = 0;
        if (round_robin) {
            i = t % instance.machines();
        } else {
            i = static_cast<MachineId>(std::min_element(load.begin(), load.end()) - load.begin());
        }
        genome.machine[j] = i;
        genome.priority[j] = load[i] < instance.deadline() ? 1 : 0;
        load[i] += instance.job(j).p;
    }
    return genome;
}

}  // namespace

bool wspt_before(std::span<const Job> jobs, JobId a, JobId b) {
    const Cost lhs = jobs[a].p * jobs[b].w;
    const Cost rhs = jobs[b].p * jobs[a].w;
    return lhs != rhs ? lhs < rhs : a < b;
}

std::vector<JobId> wspt_order(std::span<const Job> jobs) {
    std::vector<JobId> order(jobs.size());
    std::iota(order.begin(), order.end(), JobId{0});
    std::sort(order.begin(), order.end(), [&](JobId a, JobId b) { return wspt_before(jobs, a, b); });
    return order;
}

Genome naive_single(const Instance& instance) {
    if (instance.machines() != 1) throw ContractViolation("naive_single requires a single machine");
    return list_schedule(instance, false);
}

Genome naive(const Instance& instance) { return list_schedule(instance, false); }

Genome assign_round_robin(const Instance& instance) {
    return promote_in_wspt_order(instance, list_schedule(instance, true));
}

Genome assign_first_free(const Instance& instance) {
    return promote_in_wspt_order(instance, list_schedule(instance, false));
}

Genome promote_in_wspt_order(const Instance& instance, Genome genome) {
    if (!is_feasible(instance, genome)) throw ContractViolation("promote_in_wspt_order: genome is infeasible");
    auto loads = priority_loads(instance, genome);
    // Admission only gets harder as a priority set grows, so one pass suffices.
    for (JobId j : wspt_order(instance.jobs())) {
        if (genome.priority[j]) continue;
        PriorityLoad& load = loads[genome.machine[j]];
        if (load.admits(instance.job(j).p, instance.deadline())) {
            load.add(instance.job(j).p);
            genome.priority[j] = 1;
        }
    }
    return genome;
}

}  // namespace flowsched
