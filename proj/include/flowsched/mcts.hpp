#pragma once

// Monte Carlo tree search with Thompson sampling over Normal-Gamma posteriors.
//
// Depth t of the tree decides the machine and priority bit of the t-th job in
// WSPT order, so every node offers up to 2m actions; priority actions are
// pruned once the machine's priority set could no longer start before d.
// Transitions are deterministic, so only the Normal-Gamma reward model is
// kept. Rewards are −cost / normalization.

#include <cstdint>

#include "flowsched/anytime.hpp"
#include "flowsched/core.hpp"
#include "flowsched/metaheuristics.hpp"

namespace flowsched {

struct NormalGamma {
    double mu = -1.0;
    double lambda = 0.01;
    double alpha = 1.0;
    double beta = 0.1;

    /// Conjugate update with one observation.
    void observe(double x);
    /// Draws a posterior sample of the mean: τ ~ Gamma(α, rate β), then
    /// μ ~ N(mu, 1/(λτ)).
    [[nodiscard]] double sample_mean(Rng& rng) const;
};

struct NodeStats {
    NormalGamma posterior;
    std::uint64_t visits = 0;
};

enum class RolloutPolicy { uniform };

struct MctsConfig {
    NormalGamma prior{};
    RolloutPolicy rollout = RolloutPolicy::uniform;
    /// Cost that maps to reward −1; 0 uses the naive solution's cost.
    double normalization = 0.0;
    /// Tree growth stops here; simulations continue with rollouts only.
    std::size_t max_nodes = 1'000'000;
};

/// Each completed path is filled up with promote_in_wspt_order before it is
/// evaluated, so every reported genome is feasible and non-dominated.
[[nodiscard]] SolveResult run_mcts(const Instance& instance, const MctsConfig& config, Rng& rng,
                                   const Budget& budget, const AnytimeObserver& observer = {});

}  // namespace flowsched
