#include "flowsched/metaheuristics.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "flowsched/errors.hpp"
#include "flowsched/rules.hpp"

namespace flowsched {

namespace {

template <typename T>
std::size_t uniform_index(const std::vector<T>& items, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng);
}

std::size_t effective_max_machines(const Instance& instance, const MutationConfig& config) {
    const std::size_t m = instance.machines();
    const std::size_t requested = config.max_machines == 0 ? 2 : config.max_machines;
    return std::clamp<std::size_t>(requested, 1, m);
}

bool machine_feasible(const PriorityLoad& load, Time deadline) {
    return load.sum == 0 || load.sum - load.longest < deadline;
}

struct Member {
    Genome genome;
    CostBreakdown cost;
};

}  // namespace

Genome repair(const Instance& instance, Genome genome, Rng& rng) {
    check_genome_shape(instance, genome);
    const Time d = instance.deadline();
    for (MachineId i = 0; i < instance.machines(); ++i) {
        std::vector<JobId> prio;
        PriorityLoad load;
        for (JobId j = 0; j < genome.size(); ++j) {
            if (genome.machine[j] == i && genome.priority[j]) {
                prio.push_back(j);
                load.add(instance.job(j).p);
            }
        }
        if (machine_feasible(load, d)) continue;
        std::shuffle(prio.begin(), prio.end(), rng);
        for (std::size_t cleared = 0; !machine_feasible(load, d); ++cleared) {
            genome.priority[prio[cleared]] = 0;
            load = {};
            for (std::size_t t = cleared + 1; t < prio.size(); ++t) load.add(instance.job(prio[t]).p);
        }
    }
    return genome;
}

Genome fill_up(const Instance& instance, Genome genome, Rng& rng, const FillUpOptions& options) {
    if (!is_feasible(instance, genome)) throw ContractViolation("fill_up: genome is infeasible");
    std::vector<JobId> pool = options.pool;
    for (JobId j : pool) {
        if (j >= instance.size()) throw ContractViolation(fmt::format("fill_up: unknown job {}", j));
        if (genome.priority[j]) throw ContractViolation(fmt::format("fill_up: pool job {} already has priority", j));
    }
    std::vector<MachineId> machines = options.machines;
    if (machines.empty()) {
        machines.resize(instance.machines());
        std::iota(machines.begin(), machines.end(), MachineId{0});
    }

    auto loads = priority_loads(instance, genome);
    std::bernoulli_distribution stay_local(std::clamp(options.same_machine_prob, 0.0, 1.0));
    std::vector<std::size_t> candidates;
    std::vector<std::size_t> local;
    for (MachineId i : machines) {
        PriorityLoad& load = loads.at(i);
        while (!pool.empty()) {
            candidates.clear();
            for (std::size_t t = 0; t < pool.size(); ++t) {
                if (load.admits(instance.job(pool[t]).p, instance.deadline())) candidates.push_back(t);
            }
            if (candidates.empty()) break;
            if (stay_local(rng)) {
                local.clear();
                for (std::size_t t : candidates) {
                    if (genome.machine[pool[t]] == i) local.push_back(t);
                }
                if (!local.empty()) candidates.swap(local);
            }
            const std::size_t pick = candidates[uniform_index(candidates, rng)];
            const JobId j = pool[pick];
            genome.machine[j] = i;
            genome.priority[j] = 1;
            load.add(instance.job(j).p);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    }
    return genome;
}

Genome fill_up_all(const Instance& instance, Genome genome, Rng& rng, double same_machine_prob) {
    FillUpOptions options;
    options.same_machine_prob = same_machine_prob;
    for (JobId j = 0; j < genome.size(); ++j) {
        if (!genome.priority[j]) options.pool.push_back(j);
    }
    return fill_up(instance, std::move(genome), rng, options);
}

Genome mutate(const Instance& instance, Genome genome, Rng& rng, const MutationConfig& config) {
    const std::size_t m = instance.machines();
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, effective_max_machines(instance, config))(rng);
    std::vector<MachineId> machines(m);
    std::iota(machines.begin(), machines.end(), MachineId{0});
    std::shuffle(machines.begin(), machines.end(), rng);
    machines.resize(count);

    std::vector<std::uint8_t> selected(m, 0);
    for (MachineId i : machines) selected[i] = 1;

    std::vector<JobId> prio;
    for (MachineId i : machines) {
        prio.clear();
        for (JobId j = 0; j < genome.size(); ++j) {
            if (genome.machine[j] == i && genome.priority[j]) prio.push_back(j);
        }
        // A machine without priority jobs has nothing to give up but is still filled.
        if (!prio.empty()) genome.priority[prio[uniform_index(prio, rng)]] = 0;
    }

    FillUpOptions options;
    options.machines = machines;
    options.same_machine_prob = config.same_machine_prob;
    for (JobId j = 0; j < genome.size(); ++j) {
        if (selected[genome.machine[j]] && !genome.priority[j]) options.pool.push_back(j);
    }
    return fill_up(instance, std::move(genome), rng, options);
}

Genome random_genome(const Instance& instance, Rng& rng, double same_machine_prob) {
    Genome genome(instance.size());
    std::uniform_int_distribution<MachineId> machine(0, instance.machines() - 1);
    std::bernoulli_distribution bit(0.5);
    for (JobId j = 0; j < genome.size(); ++j) {
        genome.machine[j] = machine(rng);
        genome.priority[j] = bit(rng) ? 1 : 0;
    }
    return fill_up_all(instance, repair(instance, std::move(genome), rng), rng, same_machine_prob);
}

SolveResult run_ga(const Instance& instance, const GaConfig& config, Rng& rng, const Budget& budget,
                   const AnytimeObserver& observer) {
    if (config.population < 1) throw InvalidInput("GA population must be at least 1");
    if (config.stagnation_restart < 1) throw InvalidInput("GA stagnation horizon must be at least 1");
    const GenomeEvaluator evaluate(instance);
    RunMonitor monitor(budget, observer);
    const double keep = config.mutation.same_machine_prob;

    std::vector<Member> population;
    auto initialize = [&] {
        population.clear();
        for (const Genome& seed : config.seeds) {
            if (population.size() == config.population) break;
            Genome g = fill_up_all(instance, repair(instance, seed, rng), rng, keep);
            population.push_back({g, evaluate.breakdown(g)});
        }
        while (population.size() < config.population) {
            Genome g = random_genome(instance, rng, keep);
            population.push_back({g, evaluate.breakdown(g)});
        }
        for (const Member& member : population) monitor.offer(member.genome, member.cost);
    };
    initialize();

    std::uint64_t stagnant = 0;
    std::vector<Member> pool;
    while (!monitor.exhausted()) {
        pool = population;
        bool improved = false;
        for (const Member& parent : population) {
            if (monitor.out_of_time()) break;
            Genome child = mutate(instance, parent.genome, rng, config.mutation);
            const CostBreakdown cost = evaluate.breakdown(child);
            improved = monitor.offer(child, cost) || improved;
            pool.push_back({std::move(child), cost});
        }
        std::stable_sort(pool.begin(), pool.end(),
                         [](const Member& a, const Member& b) { return a.cost.total < b.cost.total; });
        pool.resize(config.population);
        population.swap(pool);
        monitor.next_iteration();

        stagnant = improved ? 0 : stagnant + 1;
        if (stagnant >= config.stagnation_restart && !monitor.exhausted()) {
            initialize();
            stagnant = 0;
        }
    }
    return monitor.result();
}

SolveResult run_ils(const Instance& instance, const IlsConfig& config, Rng& rng, const Budget& budget,
                    const AnytimeObserver& observer) {
    if (config.walk_max < 1) throw InvalidInput("ILS walk length bound must be at least 1");
    if (!is_feasible(instance, config.seed)) throw ContractViolation("run_ils: seed genome is infeasible");
    const std::uint64_t steps = config.improve_steps == 0 ? 10 * instance.size() : config.improve_steps;
    const GenomeEvaluator evaluate(instance);
    RunMonitor monitor(budget, observer);

    // Promotion can raise the cost, so the raw seed competes as well.
    monitor.offer(config.seed, evaluate.breakdown(config.seed));
    const Genome start = promote_in_wspt_order(instance, config.seed);
    monitor.offer(start, evaluate.breakdown(start));

    std::uniform_int_distribution<std::uint64_t> walk_length(1, config.walk_max);
    while (!monitor.exhausted()) {
        Genome current = start;
        const std::uint64_t walk = walk_length(rng);
        for (std::uint64_t t = 0; t < walk; ++t) current = mutate(instance, std::move(current), rng, config.mutation);
        CostBreakdown current_cost = evaluate.breakdown(current);

        for (std::uint64_t t = 0; t < steps && !monitor.out_of_time(); ++t) {
            Genome neighbor = mutate(instance, current, rng, config.mutation);
            const CostBreakdown neighbor_cost = evaluate.breakdown(neighbor);
            if (neighbor_cost.total <= current_cost.total) {
                current = std::move(neighbor);
                current_cost = neighbor_cost;
            }
        }
        monitor.next_iteration();
        monitor.offer(current, current_cost);
    }
    return monitor.result();
}

}  // namespace flowsched
