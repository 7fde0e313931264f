#pragma once

// Run budgets and best-so-far reporting shared by the iterative solvers.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "flowsched/core.hpp"

namespace flowsched {

/// Stops a run on whichever limit is hit first. An iteration is one GA
/// generation, one ILS cycle or one MCTS simulation. Iteration-only budgets
/// make runs reproducible.
struct Budget {
    std::optional<std::chrono::milliseconds> wall;
    std::optional<std::uint64_t> iterations;

    static Budget wall_ms(std::int64_t ms) { return {std::chrono::milliseconds{ms}, std::nullopt}; }
    static Budget iteration_count(std::uint64_t n) { return {std::nullopt, n}; }
};

struct AnytimeEvent {
    double elapsed_ms;
    std::uint64_t iteration;
    Cost cost;
    const Genome& genome;
};

/// Invoked synchronously each time a run improves its best solution.
using AnytimeObserver = std::function<void(const AnytimeEvent&)>;

struct SolveResult {
    Genome genome;
    CostBreakdown cost;
    std::uint64_t iterations = 0;
};

/// Tracks elapsed time and iterations against a Budget and forwards strict
/// improvements to the observer.
class RunMonitor {
public:
    RunMonitor(const Budget& budget, AnytimeObserver observer);

    [[nodiscard]] bool exhausted() const;
    [[nodiscard]] bool out_of_time() const;
    void next_iteration() { ++iterations_; }
    [[nodiscard]] std::uint64_t iterations() const { return iterations_; }
    [[nodiscard]] double elapsed_ms() const;

    /// Records `genome` if it beats the best so far. Returns true on improvement.
    bool offer(const Genome& genome, const CostBreakdown& cost);

    [[nodiscard]] bool has_best() const { return has_best_; }
    [[nodiscard]] const Genome& best() const { return best_; }
    [[nodiscard]] const CostBreakdown& best_cost() const { return best_cost_; }
    [[nodiscard]] SolveResult result() const { return {best_, best_cost_, iterations_}; }

private:
    Budget budget_;
    AnytimeObserver observer_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t iterations_ = 0;
    bool has_best_ = false;
    Genome best_;
    CostBreakdown best_cost_;
};

}  // namespace flowsched
