#pragma once

// Genome operators (repair, fill-up, mutation) and the two solvers built on
// them: a mutation-only genetic algorithm and an iterated local search.

#include <cstdint>
#include <random>
#include <vector>

#include "flowsched/anytime.hpp"
#include "flowsched/core.hpp"

namespace flowsched {

using Rng = std::mt19937_64;

struct MutationConfig {
    /// Upper bound on the machines touched by one mutation; 0 picks min(2, m).
    std::size_t max_machines = 0;
    /// Probability that a fill-up step only considers jobs already on the
    /// machine being filled.
    double same_machine_prob = 0.9;
};

struct GaConfig {
    std::size_t population = 50;
    std::uint64_t stagnation_restart = 200;
    std::vector<Genome> seeds;
    MutationConfig mutation;
};

struct IlsConfig {
    std::uint64_t walk_max = 10;    ///< k: random walks take rand(k) ∈ {1..k} steps
    std::uint64_t improve_steps = 0;  ///< l; 0 picks 10·n
    MutationConfig mutation;
    Genome seed;
};

/// Clears priority bits machine by machine in uniformly random order until the
/// machine is feasible. Feasible input comes back unchanged.
[[nodiscard]] Genome repair(const Instance& instance, Genome genome, Rng& rng);

struct FillUpOptions {
    /// Late jobs that may be promoted (moved onto the filled machine if needed).
    std::vector<JobId> pool;
    /// Machines to fill, in order. Empty means all machines in index order.
    std::vector<MachineId> machines;
    double same_machine_prob = 0.9;
};

/// Fills each listed machine in turn: among pool jobs the machine admits,
/// draws one uniformly (with `same_machine_prob` restricted to jobs already on
/// the machine, when there are any) and promotes it, until none fit. A job
/// taken from another machine is moved. Throws ContractViolation on infeasible
/// input or a pool job that already has its priority bit.
[[nodiscard]] Genome fill_up(const Instance& instance, Genome genome, Rng& rng, const FillUpOptions& options);

/// Fill-up of every machine with all late jobs as the pool.
[[nodiscard]] Genome fill_up_all(const Instance& instance, Genome genome, Rng& rng, double same_machine_prob = 0.9);

/// Draws ξ ∈ {1..MAX} and ξ distinct machines; each drawn machine with a
/// non-empty priority set drops one uniformly drawn priority job; then the
/// drawn machines are filled from the union of their late jobs.
/// Feasible, non-dominated input gives feasible, non-dominated output.
[[nodiscard]] Genome mutate(const Instance& instance, Genome genome, Rng& rng, const MutationConfig& config);

/// Uniform machines and bits, then repair and fill_up_all.
[[nodiscard]] Genome random_genome(const Instance& instance, Rng& rng, double same_machine_prob = 0.9);

[[nodiscard]] SolveResult run_ga(const Instance& instance, const GaConfig& config, Rng& rng, const Budget& budget,
                                 const AnytimeObserver& observer = {});

/// Iterated local search: every cycle walks rand(k) mutations away from the
/// start solution, then tries l mutations accepting any that do not worsen,
/// and keeps the best end point. The seed is first completed with
/// promote_in_wspt_order, which never raises its cost.
[[nodiscard]] SolveResult run_ils(const Instance& instance, const IlsConfig& config, Rng& rng, const Budget& budget,
                                  const AnytimeObserver& observer = {});

}  // namespace flowsched
